#include "swirlmhd/initial_data.hpp"

#include <cmath>

#include "swirlmhd/functionals.hpp"
#include "swirlmhd/littlewood_paley.hpp"
#include "swirlmhd/rng.hpp"

namespace swirlmhd {

namespace {

// C-infinity cutoff: 1 at x = 0, support |x| < 1.
double cutoff(double x) {
    const double q = x * x;
    if (q >= 1.0) return 0.0;
    return std::exp(-q / (1.0 - q));
}

// Even-in-r smooth profile for the deterministic bump generator, supported
// in r < support_r rmax, |z - lz/2| < support_z lz.
std::function<double(double, double)> bump_profile(const RunConfig& cfg) {
    const double rs = cfg.support_r * cfg.rmax;
    const double zc = 0.5 * cfg.lz;
    const double zs = cfg.support_z * cfg.lz;
    return [rs, zc, zs](double r, double z) {
        return cutoff(r / rs) * cutoff((z - zc) / zs);
    };
}

// Seeded mixture of three even smooth bumps inside the same support box.
std::function<double(double, double)> random_profile(const RunConfig& cfg,
                                                     std::uint64_t salt) {
    Rng rng(cfg.seed ^ salt);
    const double rs = cfg.support_r * cfg.rmax;
    const double zc = 0.5 * cfg.lz;
    const double zs = cfg.support_z * cfg.lz;
    struct Piece {
        double a, rc, zk, wr, wz;
    };
    std::vector<Piece> pieces(3);
    for (auto& pc : pieces) {
        pc.a = rng.uniform(0.3, 1.0) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
        pc.rc = rng.uniform(0.0, 0.55) * rs;
        pc.wr = rng.uniform(0.3, 0.45) * rs;
        pc.zk = zc + rng.uniform(-0.5, 0.5) * zs;
        pc.wz = rng.uniform(0.3, 0.5) * zs;
        // Keep the support inside the box.
        pc.wr = std::min(pc.wr, rs - pc.rc);
        pc.wz = std::min(pc.wz, zc + zs - pc.zk);
        pc.wz = std::min(pc.wz, pc.zk - (zc - zs));
    }
    return [pieces](double r, double z) {
        double v = 0.0;
        for (const auto& pc : pieces) {
            v += pc.a * (cutoff((r - pc.rc) / pc.wr) + cutoff((r + pc.rc) / pc.wr)) *
                 cutoff((z - pc.zk) / pc.wz);
        }
        return v;
    };
}

InitialNormBundle bundle_from_state(const AxiState& state, double p) {
    const double inf = std::numeric_limits<double>::infinity();
    const ScalarField B = divide_by_r(state.b_theta);
    InitialNormBundle norms;
    norms.swirl_sup = lp_norm(state.u_theta, inf, 1.0);
    norms.swirl_a_norm = lp_norm(state.u_theta, radial_norm_index(p), 1.0);
    norms.B_l32 = lp_norm(B, 1.5);
    norms.B_l3p2 = lp_norm(B, 1.5 * p);
    const double eps = epsilon_of_p(p);
    const ScalarField eta = divide_by_r(state.omega_theta);
    const ScalarField V = scale_by_r_power(state.u_theta, eps - 1.0, Parity::Even);
    norms.M0 = compute_M0(lp_norm(eta, p), lp_norm(V, 1.75),
                          lp_norm(B, 6.0 * p / (3.0 + p)), p);
    return norms;
}

}  // namespace

GeneratedData generate_initial_data(const RunConfig& cfg,
                                    const PoissonSolver& solver) {
    validate_config(cfg);
    const GridPtr grid = solver.grid();
    if (grid->nr != cfg.nr || grid->nz != cfg.nz) {
        throw std::invalid_argument("generate_initial_data: solver grid mismatch");
    }

    std::function<double(double, double)> chi_u, chi_b, chi_w;
    if (cfg.generator == "zero") {
        chi_u = chi_b = chi_w = [](double, double) { return 0.0; };
    } else if (cfg.generator == "bump") {
        chi_u = chi_b = chi_w = bump_profile(cfg);
    } else {  // random_bumps
        chi_u = random_profile(cfg, 0x75ULL);
        chi_b = random_profile(cfg, 0xB7ULL);
        chi_w = random_profile(cfg, 0x3FULL);
    }

    auto swirl = [&](double amp, const std::function<double(double, double)>& chi) {
        return sample_field(grid, Parity::Odd, [amp, &chi](double r, double z) {
            return amp * r * chi(r, z);
        });
    };

    GeneratedData data;
    data.primitive = make_axi_state(solver, swirl(cfg.A_u, chi_u),
                                    swirl(cfg.A_b, chi_b), swirl(cfg.A_omega, chi_w));
    const double eps = epsilon_of_p(cfg.p);
    data.reform = reform_from_primitive(solver, data.primitive, eps);

    data.norms = bundle_from_state(data.primitive, cfg.p);
    data.M0 = data.norms.M0;
    const auto [omega_norm, j_norm] = omega_J_monitors(data.primitive);
    data.N0 = compute_N0(omega_norm, j_norm, data.norms.swirl_sup, data.M0, cfg.p);
    data.smallness = check_smallness(cfg.p, cfg.c0, data.norms);

    if (cfg.lp_enabled) {
        const double L =
            cfg.lp_box > 0.0 ? cfg.lp_box : 2.0 * std::max(cfg.rmax, cfg.lz);
        const CartesianField3D u3 =
            embed_axisymmetric(data.primitive.u_r, data.primitive.u_theta,
                               data.primitive.u_z, cfg.lp_n, L);
        data.u0_besov_m1 = besov_norm(
            u3, -1.0, std::numeric_limits<double>::infinity(), 1.0);
    }
    return data;
}

RunConfig calibrate_to_smallness(RunConfig cfg, const PoissonSolver& solver,
                                 int max_halvings) {
    const GeneratedData base = generate_initial_data(cfg, solver);
    if (base.smallness.passed) return cfg;

    // All bundle norms are homogeneous of degree one in a joint amplitude
    // factor t; only M0 mixes powers and is rebuilt from the base norms.
    const double p = cfg.p;
    const double s = 6.0 * p / (3.0 + p);
    // Recover the three M0 summands once from the unscaled state.
    const ScalarField eta = divide_by_r(base.primitive.omega_theta);
    const ScalarField V = scale_by_r_power(base.primitive.u_theta,
                                           epsilon_of_p(p) - 1.0, Parity::Even);
    const ScalarField B = divide_by_r(base.primitive.b_theta);
    const double eta_norm = lp_norm(eta, p);
    const double V_norm = lp_norm(V, 1.75);
    const double B_s_norm = lp_norm(B, s);

    double t = 1.0;
    for (int iter = 0; iter < max_halvings; ++iter) {
        t *= 0.5;
        InitialNormBundle scaled;
        scaled.swirl_sup = t * base.norms.swirl_sup;
        scaled.swirl_a_norm = t * base.norms.swirl_a_norm;
        scaled.B_l32 = t * base.norms.B_l32;
        scaled.B_l3p2 = t * base.norms.B_l3p2;
        scaled.M0 = compute_M0(t * eta_norm, t * V_norm, t * B_s_norm, p);
        if (check_smallness(p, cfg.c0, scaled).passed) {
            cfg.A_u *= t;
            cfg.A_b *= t;
            cfg.A_omega *= t;
            return cfg;
        }
    }
    throw std::runtime_error(
        "calibrate_to_smallness: amplitudes did not reach the smallness regime");
}

}  // namespace swirlmhd
