#include "swirlmhd/snapshot.hpp"

#include <bit>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "swirlmhd/util.hpp"

static_assert(std::endian::native == std::endian::little,
              "snapshot payload is little-endian; big-endian hosts need a swap");

namespace swirlmhd {

void write_snapshot(const std::string& path, const ScalarField& f, double time,
                    const std::string& name) {
    if (name.empty() || name.find_first_of(" \t\n\r") != std::string::npos) {
        throw std::runtime_error("snapshot name must be a whitespace-free token");
    }
    const Grid& g = *f.grid;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << "SWIRLMHD1 " << g.nr << ' ' << g.nz << ' ' << format_double(g.rmax)
        << ' ' << format_double(g.lz) << ' ' << format_double(time) << ' ' << name
        << ' ' << (f.parity == Parity::Even ? "even" : "odd") << '\n';
    out.write(reinterpret_cast<const char*>(f.values.data()),
              static_cast<std::streamsize>(sizeof(double)) * g.nr * g.nz);
    if (!out) throw std::runtime_error("short write to " + path);
}

Snapshot read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("missing header in " + path);

    std::istringstream hs(header);
    std::string magic, name, parity_token;
    int nr = 0, nz = 0;
    double rmax = 0, lz = 0, time = 0;
    hs >> magic >> nr >> nz >> rmax >> lz >> time >> name >> parity_token;
    if (!hs || magic != "SWIRLMHD1" ||
        (parity_token != "even" && parity_token != "odd")) {
        throw std::runtime_error("malformed snapshot header in " + path);
    }

    Snapshot snap;
    snap.time = time;
    snap.name = name;
    snap.field = ScalarField(make_grid(nr, nz, rmax, lz),
                             parity_token == "even" ? Parity::Even : Parity::Odd);
    in.read(reinterpret_cast<char*>(snap.field.values.data()),
            static_cast<std::streamsize>(sizeof(double)) * nr * nz);
    if (in.gcount() != static_cast<std::streamsize>(sizeof(double)) * nr * nz) {
        throw std::runtime_error("truncated snapshot payload in " + path);
    }
    return snap;
}

}  // namespace swirlmhd
