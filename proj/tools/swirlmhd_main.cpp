// swirlmhd: axisymmetric MHD simulator and verification laboratory.
//
// Subcommands:
//   simulate <config>            integrate and write diagnostics CSV
//   verify <suite> [--seed S]    run a verification suite (or "all")
//   norms <snapshot> [...]       print norms of a stored field
//   sweep <config> --param ...   run a parameter sweep, aggregate a summary
//
// Exit codes: 0 success, 1 verification failure, 2 bad configuration,
// 3 blow-up during time integration.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "swirlmhd/config.hpp"
#include "swirlmhd/evolve.hpp"
#include "swirlmhd/initial_data.hpp"
#include "swirlmhd/littlewood_paley.hpp"
#include "swirlmhd/snapshot.hpp"
#include "swirlmhd/suites.hpp"
#include "swirlmhd/util.hpp"

namespace {

using namespace swirlmhd;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitBlowUp = 3;

std::string with_suffix(const std::string& path, const std::string& suffix) {
    const auto dot = path.rfind('.');
    if (dot == std::string::npos || dot == 0) return path + suffix;
    return path.substr(0, dot) + suffix + path.substr(dot);
}

void print_smallness(const GeneratedData& data) {
    std::cout << "smallness: " << (data.smallness.passed ? "passed" : "failed")
              << "  lhs_swirl = " << format_double(data.smallness.lhs_swirl)
              << "  rhs_swirl = " << format_double(data.smallness.rhs_swirl)
              << "  lhs_B = " << format_double(data.smallness.lhs_B)
              << "  rhs_B = " << format_double(data.smallness.rhs_B) << '\n';
    std::cout << "M0 = " << format_double(data.M0)
              << "  N0 = " << format_double(data.N0) << '\n';
    if (std::isfinite(data.u0_besov_m1)) {
        std::cout << "||u0||_{B^-1_inf,1} = " << format_double(data.u0_besov_m1)
                  << '\n';
    }
}

int run_simulation(const RunConfig& cfg) {
    const GridPtr grid = make_grid(cfg.nr, cfg.nz, cfg.rmax, cfg.lz);
    const PoissonSolver solver(grid);
    const GeneratedData data = generate_initial_data(cfg, solver);
    print_smallness(data);

    const StepperConfig stepper = stepper_from(cfg);
    const std::string csv = cfg.out_csv.empty() ? "diagnostics.csv" : cfg.out_csv;
    const bool both = cfg.formulation == Formulation::Both;

    int exit_code = kExitOk;
    auto report = [&](const char* label, const RunResult& res) {
        std::cout << label << ": " << res.steps << " steps, "
                  << res.rows.size() << " samples";
        if (res.blew_up) {
            std::cout << ", BLOW-UP in " << res.blow_up_field << " at t = "
                      << format_double(res.blow_up_time);
            exit_code = kExitBlowUp;
        } else {
            std::cout << ", final M = " << format_double(res.rows.back().M);
        }
        std::cout << '\n';
    };

    if (cfg.formulation == Formulation::Primitive || both) {
        RunOutputs out;
        out.csv_path = both ? with_suffix(csv, "_primitive") : csv;
        out.snapshot_prefix = cfg.out_snapshot_prefix;
        out.snapshot_every = cfg.snapshot_every;
        report("primitive",
               run_primitive(data.primitive, cfg.p, stepper, solver, out));
    }
    if (cfg.formulation == Formulation::Reform || both) {
        RunOutputs out;
        out.csv_path = both ? with_suffix(csv, "_reform") : csv;
        out.snapshot_prefix =
            cfg.out_snapshot_prefix.empty()
                ? ""
                : cfg.out_snapshot_prefix + (both ? "reform_" : "");
        out.snapshot_every = cfg.snapshot_every;
        report("reform", run_reform(data.reform, cfg.p, stepper, solver, out));
    }
    return exit_code;
}

RunConfig load_with_overrides(const std::string& path,
                              const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    for (const auto& ov : overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("override must be key=value: " + ov);
        }
        const std::string key = ov.substr(0, eq);
        // Drop any existing assignment of this key, then append the override.
        std::istringstream lines(text);
        std::ostringstream kept;
        std::string line;
        while (std::getline(lines, line)) {
            const auto e = line.find('=');
            std::string k = e == std::string::npos ? "" : line.substr(0, e);
            k.erase(0, k.find_first_not_of(" \t"));
            k.erase(k.find_last_not_of(" \t") + 1);
            if (k != key) kept << line << '\n';
        }
        kept << key << " = " << ov.substr(eq + 1) << '\n';
        text = kept.str();
    }
    return parse_config(text);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"axisymmetric pure-swirl MHD simulator and verification lab"};
    app.require_subcommand(1);

    std::string config_path;
    auto* simulate = app.add_subcommand("simulate", "run a configured simulation");
    simulate->add_option("config", config_path, "configuration file")->required();
    std::vector<std::string> overrides;
    simulate->add_option("--override", overrides, "key=value config overrides");

    std::string suite = "all";
    std::uint64_t seed = 0;
    std::string report_path;
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", suite, "suite name or 'all'")->required();
    verify->add_option("--seed", seed, "corpus seed (default 0)");
    verify->add_option("--report", report_path, "also write the report to a file");

    std::string snapshot_path;
    std::vector<double> lp_orders;
    double lp_weight = 0.0;
    std::string besov_spec;
    int besov_n = 32;
    auto* norms = app.add_subcommand("norms", "print norms of a snapshot field");
    norms->add_option("snapshot", snapshot_path, "snapshot file")->required();
    norms->add_option("--p", lp_orders, "Lebesgue exponents (0 means infinity)");
    norms->add_option("--weight", lp_weight, "radial weight power w in ||r^w f||");
    norms->add_option("--besov", besov_spec, "Besov norm request s,p,r (p,r: 0 = inf)");
    norms->add_option("--besov-n", besov_n, "embedding resolution (power of two)");

    std::string sweep_config, sweep_param, sweep_out = "sweep.csv";
    std::vector<std::string> sweep_values;
    auto* sweep = app.add_subcommand("sweep", "run a parameter sweep");
    sweep->add_option("config", sweep_config, "base configuration file")->required();
    sweep->add_option("--param", sweep_param, "config key to vary")->required();
    sweep->add_option("--values", sweep_values, "comma-free list of values")
        ->required();
    sweep->add_option("--out", sweep_out, "summary CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*simulate) {
            return run_simulation(load_with_overrides(config_path, overrides));
        }

        if (*verify) {
            std::vector<SuiteReport> reports;
            if (suite == "all") {
                reports = run_all_suites(seed);
            } else {
                reports.push_back(run_suite(suite, seed));
            }
            const std::string text = render_report(reports);
            std::cout << text;
            if (!report_path.empty()) {
                std::ofstream out(report_path, std::ios::binary);
                out << text;
            }
            for (const auto& r : reports) {
                if (!r.passed()) return kExitVerifyFailed;
            }
            return kExitOk;
        }

        if (*norms) {
            const Snapshot snap = read_snapshot(snapshot_path);
            std::cout << "field " << snap.name << " at t = "
                      << format_double(snap.time) << ", grid " << snap.field.grid->nr
                      << "x" << snap.field.grid->nz << '\n';
            if (lp_orders.empty()) lp_orders = {1.5, 2.0, 0.0};
            for (double p : lp_orders) {
                const double pe = p == 0.0
                                      ? std::numeric_limits<double>::infinity()
                                      : p;
                std::cout << "||r^" << format_double(lp_weight) << " f||_L^"
                          << (p == 0.0 ? "inf" : format_double(p)) << " = "
                          << format_double(lp_norm(snap.field, pe, lp_weight))
                          << '\n';
            }
            if (!besov_spec.empty()) {
                double s = 0, bp = 0, br = 0;
                char c1 = 0, c2 = 0;
                std::istringstream bs(besov_spec);
                bs >> s >> c1 >> bp >> c2 >> br;
                if (!bs || c1 != ',' || c2 != ',') {
                    throw std::runtime_error("--besov expects s,p,r");
                }
                const Grid& g = *snap.field.grid;
                const double L = 2.0 * std::max(g.rmax, g.lz);
                const CartesianField3D f3 = embed_scalar(snap.field, besov_n, L);
                const double inf = std::numeric_limits<double>::infinity();
                const double val = besov_norm(f3, s, bp == 0.0 ? inf : bp,
                                              br == 0.0 ? inf : br);
                std::cout << "||f||_B^" << format_double(s) << " = "
                          << format_double(val) << '\n';
            }
            return kExitOk;
        }

        if (*sweep) {
            std::ofstream out(sweep_out, std::ios::binary);
            if (!out) throw std::runtime_error("cannot open " + sweep_out);
            out << sweep_param;
            for (const auto& name : DiagnosticsRow::column_names()) out << ',' << name;
            out << '\n';
            for (const auto& value : sweep_values) {
                RunConfig cfg = load_with_overrides(
                    sweep_config, {sweep_param + "=" + value});
                cfg.out_csv.clear();
                cfg.out_snapshot_prefix.clear();
                const GridPtr grid = make_grid(cfg.nr, cfg.nz, cfg.rmax, cfg.lz);
                const PoissonSolver solver(grid);
                const GeneratedData data = generate_initial_data(cfg, solver);
                const RunResult res =
                    cfg.formulation == Formulation::Reform
                        ? run_reform(data.reform, cfg.p, stepper_from(cfg), solver)
                        : run_primitive(data.primitive, cfg.p, stepper_from(cfg),
                                        solver);
                if (res.blew_up) return kExitBlowUp;
                out << value;
                for (double v : res.rows.back().values_in_order()) {
                    out << ',' << format_double(v);
                }
                out << '\n';
            }
            std::cout << "sweep summary written to " << sweep_out << '\n';
            return kExitOk;
        }
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const BlowUpError& e) {
        std::cerr << e.what() << '\n';
        return kExitBlowUp;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitOk;
}
