#include "swirlmhd/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "swirlmhd/exponents.hpp"
#include "swirlmhd/util.hpp"

namespace swirlmhd {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_real(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError(line, "expected a real number, got '" + v + "'");
    }
}

long long parse_int(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        const long long x = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError(line, "expected an integer, got '" + v + "'");
    }
}

bool parse_bool(const std::string& v, int line) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError(line, "expected true/false, got '" + v + "'");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::map<std::string, int> key_lines;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(line_no, "expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(line_no, "empty key");
        if (key_lines.count(key)) {
            throw ConfigError(line_no, "duplicate key '" + key + "'");
        }
        key_lines[key] = line_no;

        if (key == "p") cfg.p = parse_real(value, line_no);
        else if (key == "c0") cfg.c0 = parse_real(value, line_no);
        else if (key == "grid.Nr") cfg.nr = static_cast<int>(parse_int(value, line_no));
        else if (key == "grid.Nz") cfg.nz = static_cast<int>(parse_int(value, line_no));
        else if (key == "grid.Rmax") cfg.rmax = parse_real(value, line_no);
        else if (key == "grid.Lz") cfg.lz = parse_real(value, line_no);
        else if (key == "stepper.dt") cfg.dt = parse_real(value, line_no);
        else if (key == "stepper.cfl_safety") cfg.cfl_safety = parse_real(value, line_no);
        else if (key == "stepper.t_end") cfg.t_end = parse_real(value, line_no);
        else if (key == "stepper.sample_every")
            cfg.sample_every = static_cast<int>(parse_int(value, line_no));
        else if (key == "stepper.scheme") {
            if (value == "imex_euler") cfg.scheme = Scheme::ImexEuler;
            else if (value == "explicit_rk2") cfg.scheme = Scheme::ExplicitRk2;
            else throw ConfigError(line_no, "unknown scheme '" + value + "'");
        } else if (key == "init.generator") cfg.generator = value;
        else if (key == "init.A_u") cfg.A_u = parse_real(value, line_no);
        else if (key == "init.A_b") cfg.A_b = parse_real(value, line_no);
        else if (key == "init.A_omega") cfg.A_omega = parse_real(value, line_no);
        else if (key == "init.support_r") cfg.support_r = parse_real(value, line_no);
        else if (key == "init.support_z") cfg.support_z = parse_real(value, line_no);
        else if (key == "formulation") {
            if (value == "primitive") cfg.formulation = Formulation::Primitive;
            else if (value == "reform") cfg.formulation = Formulation::Reform;
            else if (value == "both") cfg.formulation = Formulation::Both;
            else throw ConfigError(line_no, "unknown formulation '" + value + "'");
        } else if (key == "lp.enabled") cfg.lp_enabled = parse_bool(value, line_no);
        else if (key == "lp.N") cfg.lp_n = static_cast<int>(parse_int(value, line_no));
        else if (key == "lp.L") cfg.lp_box = parse_real(value, line_no);
        else if (key == "output.csv") cfg.out_csv = value;
        else if (key == "output.snapshot_prefix") cfg.out_snapshot_prefix = value;
        else if (key == "output.snapshot_every")
            cfg.snapshot_every = static_cast<int>(parse_int(value, line_no));
        else if (key == "seed")
            cfg.seed = static_cast<std::uint64_t>(parse_int(value, line_no));
        else throw ConfigError(line_no, "unknown key '" + key + "'");
    }

    try {
        validate_config(cfg);
    } catch (const std::domain_error& e) {
        throw ConfigError(line_no, e.what());
    }
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream out;
    out << "p = " << format_double(cfg.p) << '\n';
    out << "c0 = " << format_double(cfg.c0) << '\n';
    out << "grid.Nr = " << cfg.nr << '\n';
    out << "grid.Nz = " << cfg.nz << '\n';
    out << "grid.Rmax = " << format_double(cfg.rmax) << '\n';
    out << "grid.Lz = " << format_double(cfg.lz) << '\n';
    out << "stepper.dt = " << format_double(cfg.dt) << '\n';
    out << "stepper.cfl_safety = " << format_double(cfg.cfl_safety) << '\n';
    out << "stepper.t_end = " << format_double(cfg.t_end) << '\n';
    out << "stepper.sample_every = " << cfg.sample_every << '\n';
    out << "stepper.scheme = "
        << (cfg.scheme == Scheme::ImexEuler ? "imex_euler" : "explicit_rk2") << '\n';
    out << "init.generator = " << cfg.generator << '\n';
    out << "init.A_u = " << format_double(cfg.A_u) << '\n';
    out << "init.A_b = " << format_double(cfg.A_b) << '\n';
    out << "init.A_omega = " << format_double(cfg.A_omega) << '\n';
    out << "init.support_r = " << format_double(cfg.support_r) << '\n';
    out << "init.support_z = " << format_double(cfg.support_z) << '\n';
    out << "formulation = "
        << (cfg.formulation == Formulation::Primitive
                ? "primitive"
                : cfg.formulation == Formulation::Reform ? "reform" : "both")
        << '\n';
    out << "lp.enabled = " << (cfg.lp_enabled ? "true" : "false") << '\n';
    out << "lp.N = " << cfg.lp_n << '\n';
    out << "lp.L = " << format_double(cfg.lp_box) << '\n';
    out << "output.csv = " << cfg.out_csv << '\n';
    out << "output.snapshot_prefix = " << cfg.out_snapshot_prefix << '\n';
    out << "output.snapshot_every = " << cfg.snapshot_every << '\n';
    out << "seed = " << cfg.seed << '\n';
    return out.str();
}

void validate_config(const RunConfig& cfg) {
    if (!(cfg.p > kPMin) || !(cfg.p <= kPMax)) {
        throw std::domain_error("p outside the admissible interval ]1, 63/61]");
    }
    // Positivity of the V-dissipation prefactor 48(2p-1)(33-31p)/(49(3-p)^2);
    // automatic on the admissible interval but re-checked at configuration.
    if (!(33.0 - 31.0 * cfg.p > 0.0)) {
        throw std::domain_error("p >= 33/31 makes the V-dissipation prefactor negative");
    }
    if (!(cfg.c0 > 0.0)) throw std::domain_error("c0 must be positive");
    if (cfg.nr < 8 || cfg.nz < 8) throw std::domain_error("grid.Nr, grid.Nz must be >= 8");
    if (!(cfg.rmax > 0.0) || !(cfg.lz > 0.0)) {
        throw std::domain_error("grid.Rmax and grid.Lz must be positive");
    }
    if (cfg.dt < 0.0) throw std::domain_error("stepper.dt must be nonnegative");
    if (!(cfg.cfl_safety > 0.0) || !(cfg.cfl_safety < 1.0)) {
        throw std::domain_error("stepper.cfl_safety must lie in ]0, 1[");
    }
    if (cfg.t_end < 0.0) throw std::domain_error("stepper.t_end must be nonnegative");
    if (cfg.sample_every < 1) throw std::domain_error("stepper.sample_every must be >= 1");
    if (cfg.generator != "bump" && cfg.generator != "random_bumps" &&
        cfg.generator != "zero") {
        throw std::domain_error("unknown init.generator '" + cfg.generator + "'");
    }
    if (!(cfg.support_r > 0.0) || cfg.support_r > 0.9) {
        throw std::domain_error("init.support_r must lie in ]0, 0.9]");
    }
    if (!(cfg.support_z > 0.0) || cfg.support_z > 0.45) {
        throw std::domain_error("init.support_z must lie in ]0, 0.45]");
    }
    if (cfg.lp_enabled) {
        if (cfg.lp_n < 16 || (cfg.lp_n & (cfg.lp_n - 1)) != 0) {
            throw std::domain_error("lp.N must be a power of two >= 16");
        }
        if (cfg.lp_box != 0.0 && cfg.lp_box < 2.0 * std::max(cfg.rmax, cfg.lz)) {
            throw std::domain_error("lp.L must be 0 (auto) or >= 2 max(Rmax, Lz)");
        }
    }
    if (cfg.snapshot_every < 0) {
        throw std::domain_error("output.snapshot_every must be nonnegative");
    }
}

StepperConfig stepper_from(const RunConfig& cfg) {
    StepperConfig s;
    s.dt = cfg.dt;
    s.scheme = cfg.scheme;
    s.cfl_safety = cfg.cfl_safety;
    s.t_end = cfg.t_end;
    s.sample_every = cfg.sample_every;
    return s;
}

}  // namespace swirlmhd
