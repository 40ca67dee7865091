#pragma once

#include <string>

#include "swirlmhd/grid.hpp"

namespace swirlmhd {

/// One field read back from a snapshot file.
struct Snapshot {
    ScalarField field;
    double time = 0.0;
    std::string name;
};

/// Writes `SWIRLMHD1 Nr Nz Rmax Lz time name parity\n` in ASCII followed by
/// Nr*Nz little-endian 64-bit floats in row-major (r-fastest) order.
/// `name` must be a single whitespace-free token.
void write_snapshot(const std::string& path, const ScalarField& f, double time,
                    const std::string& name);

/// Reads a snapshot written by write_snapshot. Throws std::runtime_error on
/// malformed headers or truncated payloads.
Snapshot read_snapshot(const std::string& path);

}  // namespace swirlmhd
