#include "swirlmhd/suites.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "swirlmhd/config.hpp"
#include "swirlmhd/evolve.hpp"
#include "swirlmhd/exponents.hpp"
#include "swirlmhd/initial_data.hpp"
#include "swirlmhd/littlewood_paley.hpp"
#include "swirlmhd/operators.hpp"
#include "swirlmhd/rng.hpp"
#include "swirlmhd/util.hpp"

namespace swirlmhd {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

CheckResult check(const std::string& name, bool ok, const std::string& detail) {
    return {name, ok, detail};
}

std::string fmt(double v) { return format_double(v); }

std::string in_window(double value, double lo, double hi) {
    return fmt(value) + " in [" + fmt(lo) + ", " + fmt(hi) + "]";
}

// ---------------------------------------------------------------------------
// exponents
// ---------------------------------------------------------------------------

SuiteReport suite_exponents(std::uint64_t) {
    SuiteReport rep;
    rep.name = "exponents";

    const double e_end = epsilon_of_p(63.0 / 61.0);
    rep.checks.push_back(check("epsilon(63/61) = 1/7",
                               std::fabs(e_end - 1.0 / 7.0) <= 1e-12,
                               "|err| = " + fmt(std::fabs(e_end - 1.0 / 7.0))));
    const double a_end = a_frak_of_p(63.0 / 61.0);
    rep.checks.push_back(check("a_frak(63/61) = 168/1525",
                               std::fabs(a_end - 168.0 / 1525.0) <= 1e-12,
                               "|err| = " + fmt(std::fabs(a_end - 168.0 / 1525.0))));
    const double e_lim = epsilon_of_p(1.0 + 1e-9);
    rep.checks.push_back(check("epsilon(1+1e-9) -> 2/7",
                               std::fabs(e_lim - 2.0 / 7.0) <= 1e-8,
                               "|err| = " + fmt(std::fabs(e_lim - 2.0 / 7.0))));
    const double a_lim = a_frak_of_p(1.0 + 1e-9);
    rep.checks.push_back(check("a_frak(1+1e-9) -> 1/12",
                               std::fabs(a_lim - 1.0 / 12.0) <= 1e-8,
                               "|err| = " + fmt(std::fabs(a_lim - 1.0 / 12.0))));

    bool mono = true, ranges = true, conj = true;
    double prev_e = 2.0 / 7.0 + 1e-15, prev_a = 1.0 / 12.0 - 1e-15;
    for (int i = 1; i <= 10000; ++i) {
        const double p = 1.0 + (kPMax - 1.0) * i / 10000.0;
        const ExponentSet e = exponents_for(p);
        mono = mono && e.epsilon < prev_e && e.a_frak > prev_a;
        ranges = ranges && e.epsilon >= 1.0 / 7.0 - 1e-14 && e.epsilon < 2.0 / 7.0 &&
                 e.a_frak > 1.0 / 12.0 && e.a_frak <= 168.0 / 1525.0 + 1e-15;
        conj = conj && std::fabs(1.0 / e.q1 + 1.0 / e.q2 - 1.0) < 1e-14;
        prev_e = e.epsilon;
        prev_a = e.a_frak;
    }
    rep.checks.push_back(check("epsilon decreasing, a_frak increasing", mono, ""));
    rep.checks.push_back(check("epsilon and a_frak stay in the stated ranges", ranges, ""));
    rep.checks.push_back(check("1/q1 + 1/q2 = 1 to 1e-14", conj, ""));

    // The radial-norm index is reported under both exponent readings
    // (23p-21 as in the theorem, 25p-21 as in the eta estimate).
    const double p0 = 1.02;
    rep.checks.push_back(check(
        "radial norm index report at p = 1.02", true,
        "a/(p-1) = " + fmt(radial_norm_index(p0)) +
            ", (25p-21)/(23p-21) variant = " + fmt(radial_norm_index_alt(p0))));
    return rep;
}

// ---------------------------------------------------------------------------
// operators / elliptic: manufactured fields
// ---------------------------------------------------------------------------

constexpr double kRmax = 8.0;
constexpr double kLz = 8.0;
constexpr double kWave = 2.0 * kPi / kLz;

double swirl_profile(double r, double z) {
    return r * std::exp(-r * r) * std::sin(kWave * z);
}
double swirl_laplacian_exact(double r, double z) {
    return std::exp(-r * r) * (4.0 * r * r * r - 8.0 * r - kWave * kWave * r) *
           std::sin(kWave * z);
}
double even_profile(double r, double z) {
    return std::exp(-r * r) * std::cos(kWave * z);
}
double even_laplacian_exact(double r, double z, double a) {
    return (4.0 * r * r - 4.0 - 2.0 * a - kWave * kWave) * std::exp(-r * r) *
           std::cos(kWave * z);
}
double phi_manufactured(double r, double z) {
    return r * std::exp(-r * r) * std::sin(kWave * z);
}
double omega_manufactured(double r, double z) {
    return -swirl_laplacian_exact(r, z);
}

double field_error(const ScalarField& f, double p_norm,
                   const std::function<double(double, double)>& exact) {
    ScalarField diff = f;
    diff.values -= sample_field(f.grid, f.parity, exact).values;
    return lp_norm(diff, p_norm);
}

ScalarField random_vorticity(const GridPtr& g, std::uint64_t seed) {
    Rng rng(seed);
    double c[3], rc[3], zc[3], w[3];
    for (int k = 0; k < 3; ++k) {
        c[k] = rng.uniform(-1.0, 1.0);
        rc[k] = rng.uniform(0.1, 0.45) * g->rmax;
        zc[k] = rng.uniform(0.3, 0.7) * g->lz;
        w[k] = rng.uniform(0.4, 1.0);
    }
    return sample_field(g, Parity::Odd, [=](double r, double z) {
        double v = 0.0;
        for (int k = 0; k < 3; ++k) {
            const double dz = z - zc[k];
            v += c[k] * (std::exp(-w[k] * ((r - rc[k]) * (r - rc[k]) + dz * dz)) -
                         std::exp(-w[k] * ((r + rc[k]) * (r + rc[k]) + dz * dz)));
        }
        return v;
    });
}

SuiteReport suite_operators(std::uint64_t) {
    SuiteReport rep;
    rep.name = "operators";
    const double lo = 3.4, hi = 4.6;

    auto ratio_check = [&](const std::string& name,
                           const std::function<double(int)>& error_at, int n0) {
        const double e0 = error_at(n0), e1 = error_at(2 * n0);
        const double ratio = e0 / e1;
        rep.checks.push_back(
            check(name, ratio > lo && ratio < hi, in_window(ratio, lo, hi)));
    };

    ratio_check("laplacian_swirl second order",
                [&](int n) {
                    const GridPtr g = make_grid(n, n, kRmax, kLz);
                    return field_error(
                        laplacian_swirl(sample_field(g, Parity::Odd, swirl_profile)),
                        2.0, swirl_laplacian_exact);
                },
                48);
    for (double a : {2.0, 2.0 * (1.0 - epsilon_of_p(1.02))}) {
        ratio_check("laplacian_reform(a = " + fmt(a) + ") second order",
                    [&](int n) {
                        const GridPtr g = make_grid(n, n, kRmax, kLz);
                        return field_error(
                            laplacian_reform(sample_field(g, Parity::Even, even_profile),
                                             a),
                            2.0, [a](double r, double z) {
                                return even_laplacian_exact(r, z, a);
                            });
                    },
                    48);
    }
    ratio_check("curl_from_swirl second order",
                [&](int n) {
                    const GridPtr g = make_grid(n, n, kRmax, kLz);
                    auto [cr, cz] = curl_from_swirl(sample_field(g, Parity::Odd,
                                                                 [](double r, double z) {
                        return r * std::exp(-r * r) * std::cos(kWave * z);
                    }));
                    const double er = field_error(cr, 2.0, [](double r, double z) {
                        return kWave * r * std::exp(-r * r) * std::sin(kWave * z);
                    });
                    const double ez = field_error(cz, 2.0, [](double r, double z) {
                        return (2.0 - 2.0 * r * r) * std::exp(-r * r) *
                               std::cos(kWave * z);
                    });
                    return std::sqrt(er * er + ez * ez);
                },
                48);
    ratio_check("advect second order (L1)",
                [&](int n) {
                    const double w = 0.5;
                    const GridPtr g = make_grid(n, n, kRmax, kLz);
                    const ScalarField ur =
                        sample_field(g, Parity::Odd, [w](double r, double z) {
                            return r * std::exp(-w * r * r) * std::sin(kWave * z);
                        });
                    const ScalarField uz =
                        sample_field(g, Parity::Even, [w](double r, double z) {
                            return std::exp(-w * r * r) * std::cos(kWave * z);
                        });
                    const ScalarField f =
                        sample_field(g, Parity::Odd, [w](double r, double z) {
                            return r * std::exp(-w * r * r) * std::cos(kWave * z);
                        });
                    return field_error(
                        advect(ur, uz, f), 1.0, [w](double r, double z) {
                            const double dfr = (1.0 - 2.0 * w * r * r) *
                                               std::exp(-w * r * r) *
                                               std::cos(kWave * z);
                            const double dfz = -kWave * r * std::exp(-w * r * r) *
                                               std::sin(kWave * z);
                            return r * std::exp(-w * r * r) * std::sin(kWave * z) *
                                       dfr +
                                   std::exp(-w * r * r) * std::cos(kWave * z) * dfz;
                        });
                },
                64);
    return rep;
}

SuiteReport suite_elliptic(std::uint64_t seed) {
    SuiteReport rep;
    rep.name = "elliptic";
    const double lo = 3.4, hi = 4.6;

    {
        double err[2];
        int n = 48;
        for (int level = 0; level < 2; ++level, n *= 2) {
            const GridPtr g = make_grid(n, n, kRmax, kLz);
            const PoissonSolver solver(g);
            err[level] = field_error(
                solve_stream(solver, sample_field(g, Parity::Odd, omega_manufactured)),
                2.0, phi_manufactured);
        }
        rep.checks.push_back(check("stream solve second order",
                                   err[0] / err[1] > lo && err[0] / err[1] < hi,
                                   in_window(err[0] / err[1], lo, hi)));
    }
    {
        double err[2];
        int n = 48;
        for (int level = 0; level < 2; ++level, n *= 2) {
            const GridPtr g = make_grid(n, n, kRmax, kLz);
            const PoissonSolver solver(g);
            const ScalarField omega =
                sample_field(g, Parity::Odd, omega_manufactured);
            auto [ur, uz] = biot_savart(solver, omega);
            ScalarField curl = d_z(ur);
            curl.values -= d_r(uz).values;
            curl.values -= omega.values;
            err[level] = lp_norm(curl, 2.0) / lp_norm(omega, 2.0);
        }
        rep.checks.push_back(check("Biot-Savart roundtrip second order",
                                   err[0] / err[1] > lo && err[0] / err[1] < hi,
                                   in_window(err[0] / err[1], lo, hi)));
    }
    {
        double resid[2];
        int n = 48;
        for (int level = 0; level < 2; ++level, n *= 2) {
            const GridPtr g = make_grid(n, n, kRmax, kLz);
            const PoissonSolver solver(g);
            auto [ur, uz] = biot_savart(solver, random_vorticity(g, seed ^ 0x11));
            resid[level] = div_weighted_residual(ur, uz);
        }
        rep.checks.push_back(check("velocity solenoidality O(h^2)",
                                   resid[0] / resid[1] > 3.0,
                                   "refinement factor " + fmt(resid[0] / resid[1])));
    }

    // Empirical-constant corpora (50 fields), stable under h -> h/2.
    const double p = 1.02;
    const double ms[3] = {1.5, 2.5, 4.5};
    const double qs[2] = {5.0 * p / (3.0 - p), 3.0 * p};
    double worst_biot = 0.0, worst_interp = 0.0;
    bool all_finite_ratios = true;
    for (int field = 0; field < 50; ++field) {
        double biot[2][3], interp[2][2];
        int n = 64;
        for (int level = 0; level < 2; ++level, n *= 2) {
            const GridPtr g = make_grid(n, n, kRmax, kLz);
            const PoissonSolver solver(g);
            const ScalarField omega = random_vorticity(g, seed + 1000 + field);
            auto [ur, uz] = biot_savart(solver, omega);
            const ScalarField mag = velocity_gradient_magnitude(ur, uz);
            for (int mi = 0; mi < 3; ++mi) {
                const double m = ms[mi];
                biot[level][mi] =
                    lp_norm(mag, m) / (m * m / (m - 1.0) * lp_norm(omega, m));
            }
            const ScalarField eta = divide_by_r(omega);
            const ScalarField ur_over_r = divide_by_r(ur);
            for (int qi = 0; qi < 2; ++qi) {
                const double q = qs[qi];
                const double lam = lambda_interp(p, q);
                interp[level][qi] =
                    lp_norm(ur_over_r, q) / (std::pow(lp_norm(eta, p), lam) *
                                             std::pow(lp_norm(eta, 3.0 * p), 1.0 - lam));
            }
        }
        for (int mi = 0; mi < 3; ++mi) {
            all_finite_ratios = all_finite_ratios && std::isfinite(biot[0][mi]) &&
                                std::isfinite(biot[1][mi]);
            worst_biot = std::max(
                worst_biot, std::fabs(biot[1][mi] - biot[0][mi]) / biot[1][mi]);
        }
        for (int qi = 0; qi < 2; ++qi) {
            all_finite_ratios = all_finite_ratios && std::isfinite(interp[0][qi]) &&
                                std::isfinite(interp[1][qi]);
            worst_interp = std::max(
                worst_interp, std::fabs(interp[1][qi] - interp[0][qi]) / interp[1][qi]);
        }
    }
    rep.checks.push_back(check("Biot-Savart and u_r/r ratios finite over 50 fields",
                               all_finite_ratios, ""));
    rep.checks.push_back(check("Biot-Savart constant drift < 10% under h -> h/2",
                               worst_biot < 0.10,
                               "max drift " + fmt(100.0 * worst_biot) + "%"));
    rep.checks.push_back(check("u_r/r interpolation constant drift < 10%",
                               worst_interp < 0.10,
                               "max drift " + fmt(100.0 * worst_interp) + "%"));
    return rep;
}

// ---------------------------------------------------------------------------
// conservation / structure / smalldata
// ---------------------------------------------------------------------------

double support_bump(double r, double z) {
    const double xr = r / (0.5 * kRmax);
    const double xz = (z - 0.5 * kLz) / (0.25 * kLz);
    const double q = xr * xr + xz * xz;
    if (q >= 1.0) return 0.0;
    return std::exp(-q / (1.0 - q));
}

SuiteReport suite_conservation(std::uint64_t seed) {
    SuiteReport rep;
    rep.name = "conservation";
    const double p = 1.02;
    const double eps = epsilon_of_p(p);
    const double s_exp = 6.0 * p / (3.0 + p);

    // Maximum principle on a 96x96 primitive run to t = 0.5.
    {
        const GridPtr g = make_grid(96, 96, kRmax, kLz);
        const PoissonSolver solver(g);
        auto amp = [&](double a) {
            return sample_field(g, Parity::Odd, [a](double r, double z) {
                return a * r * support_bump(r, z);
            });
        };
        AxiState st = make_axi_state(solver, amp(0.3), amp(0.2), amp(0.25));
        StepperConfig cfg;
        cfg.dt = 2.5e-3;
        cfg.t_end = 0.5;
        const double initial = lp_norm(st.u_theta, kInf, 1.0);
        double prev = initial, worst_increase = 0.0;
        while (st.time < cfg.t_end - 1e-12) {
            st = step_primitive(st, cfg, solver,
                                std::min(cfg.dt, cfg.t_end - st.time));
            const double cur = lp_norm(st.u_theta, kInf, 1.0);
            worst_increase = std::max(worst_increase, cur - prev);
            prev = cur;
        }
        rep.checks.push_back(
            check("max principle: per-step increase of ||r u||_inf <= 1e-10 ||.||_0",
                  worst_increase <= 1e-10 * initial,
                  "max increase " + fmt(worst_increase) + " vs budget " +
                      fmt(1e-10 * initial)));
    }

    // B-norm decay on the same data in the reformulated formulation.
    {
        const GridPtr g = make_grid(96, 96, kRmax, kLz);
        const PoissonSolver solver(g);
        auto amp = [&](double a) {
            return sample_field(g, Parity::Odd, [a](double r, double z) {
                return a * r * support_bump(r, z);
            });
        };
        const AxiState prim =
            make_axi_state(solver, amp(0.3), amp(0.2), amp(0.25));
        ReformState st = reform_from_primitive(solver, prim, eps);
        StepperConfig cfg;
        cfg.t_end = 0.5;
        const double ks[3] = {1.5, s_exp, 1.5 * p};
        double prev[3], worst = 0.0;
        for (int i = 0; i < 3; ++i) prev[i] = lp_norm(st.B, ks[i]);
        while (st.time < cfg.t_end - 1e-12) {
            const double bound = stable_dt_reform(st, cfg);
            st = step_reform(st, cfg, solver,
                             std::min(bound, cfg.t_end - st.time));
            for (int i = 0; i < 3; ++i) {
                const double cur = lp_norm(st.B, ks[i]);
                worst = std::max(worst, (cur - prev[i]) / std::max(prev[i], 1e-300));
                prev[i] = cur;
            }
        }
        rep.checks.push_back(check(
            "B-decay: ||B||_k non-increasing (k = 3/2, s, 3p/2) within 1e-8/step",
            worst <= 1e-8, "worst per-step relative change " + fmt(worst)));
    }

    // Energy-balance residual: first order in dt on a diffusion-dominated run.
    {
        const double k = 1.5;
        const GridPtr g = make_grid(96, 96, kRmax, kLz);
        const PoissonSolver solver(g);
        const ScalarField zero(g, Parity::Even);
        auto residual_at = [&](double dt) {
            ReformState st = make_reform_state(
                solver, eps, sample_field(g, Parity::Even, support_bump), zero, zero);
            StepperConfig cfg;
            cfg.dt = dt;
            const int burn = static_cast<int>(std::lround(0.1 / dt));
            for (int n = 0; n < burn; ++n) st = step_reform(st, cfg, solver);
            std::vector<BalanceSample> samples;
            auto push = [&] {
                samples.push_back({st.time, std::pow(lp_norm(st.B, k), k),
                                   std::pow(grad_power_norm(st.B, 0.5 * k), 2.0),
                                   axis_term_B(st.B, k)});
            };
            push();
            const int steps = static_cast<int>(std::lround(0.4 / dt));
            for (int n = 0; n < steps; ++n) {
                st = step_reform(st, cfg, solver);
                push();
            }
            return balance_residual_B(samples, k);
        };
        const double ratio = residual_at(2e-2) / residual_at(1e-2);
        rep.checks.push_back(check("balance residual halves with dt (ratio in [1.7, 2.4])",
                                   ratio > 1.7 && ratio < 2.4,
                                   in_window(ratio, 1.7, 2.4)));
    }

    // Formulation equivalence at t = 0.2.
    {
        const GridPtr g = make_grid(64, 64, kRmax, kLz);
        const PoissonSolver solver(g);
        const double dt = 1e-3;
        auto amp = [&](double a) {
            return sample_field(g, Parity::Odd, [a](double r, double z) {
                return a * r * support_bump(r, z);
            });
        };
        AxiState prim = make_axi_state(solver, amp(2e-2), amp(1e-2), amp(1.5e-2));
        const ScalarField u0 = prim.u_theta, b0 = prim.b_theta,
                          w0 = prim.omega_theta;
        ReformState ref = reform_from_primitive(solver, prim, eps);
        StepperConfig cfg;
        cfg.dt = dt;
        cfg.t_end = 0.2;
        while (prim.time < cfg.t_end - 1e-12) {
            const double step = std::min(dt, cfg.t_end - prim.time);
            prim = step_primitive(prim, cfg, solver, step);
            ref = step_reform(ref, cfg, solver, step);
        }
        const AxiState rec = primitive_from_reform(solver, ref);
        const double budget = 5.0 * (g->dr * g->dr + dt);
        auto rel = [&](const ScalarField& a, const ScalarField& b,
                       const ScalarField& init) {
            ScalarField d = a;
            d.values -= b.values;
            return lp_norm(d, 2.0) / lp_norm(init, 2.0);
        };
        const double eu = rel(prim.u_theta, rec.u_theta, u0);
        const double eb = rel(prim.b_theta, rec.b_theta, b0);
        const double ew = rel(prim.omega_theta, rec.omega_theta, w0);
        const double worst = std::max({eu, eb, ew});
        rep.checks.push_back(check(
            "formulation equivalence: rel L2 error <= 5 (h^2 + dt) at t = 0.2",
            worst <= budget,
            "worst " + fmt(worst) + " vs budget " + fmt(budget)));
    }
    (void)seed;
    return rep;
}

SuiteReport suite_structure(std::uint64_t) {
    SuiteReport rep;
    rep.name = "structure";
    const GridPtr g = make_grid(48, 48, kRmax, kLz);
    const PoissonSolver solver(g);

    VelocityTriple vel;
    vel.u_r = sample_field(g, Parity::Odd, [](double r, double z) {
        return 0.3 * r * std::exp(-r * r) * std::sin(kWave * z);
    });
    vel.u_theta = sample_field(g, Parity::Odd, [](double r, double z) {
        return 0.5 * r * support_bump(r, z);
    });
    vel.u_z = sample_field(g, Parity::Even, [](double r, double z) {
        return 0.2 * std::exp(-r * r) * std::cos(kWave * z);
    });

    FullBState st;
    st.b_r = ScalarField(g, Parity::Odd);
    st.b_theta = sample_field(g, Parity::Odd, [](double r, double z) {
        return r * support_bump(r, z);
    });
    st.b_z = ScalarField(g, Parity::Even);
    const double b0_sup = st.b_theta.values.abs().maxCoeff();

    StepperConfig cfg;
    cfg.t_end = kInf;
    double worst = 0.0;
    for (int n = 0; n < 1000; ++n) {
        st = step_full_b(st, vel, cfg, solver);
        worst = std::max(worst, std::max(st.b_r.values.abs().maxCoeff(),
                                         st.b_z.values.abs().maxCoeff()));
    }
    rep.checks.push_back(check(
        "b_r = b_z = 0 preserved over 1000 steps (<= 1e-12 ||b0||_inf)",
        worst <= 1e-12 * b0_sup, "max |b_r|,|b_z| = " + fmt(worst)));
    return rep;
}

SuiteReport suite_smalldata(std::uint64_t seed) {
    SuiteReport rep;
    rep.name = "smalldata";
    for (int run = 0; run < 20; ++run) {
        RunConfig cfg;
        cfg.p = 1.02;
        cfg.c0 = 1e-3;
        cfg.nr = 64;
        cfg.nz = 64;
        cfg.rmax = kRmax;
        cfg.lz = kLz;
        cfg.t_end = 1.0;
        cfg.generator = "random_bumps";
        cfg.A_u = 0.5;
        cfg.A_b = 0.5;
        cfg.A_omega = 0.5;
        cfg.seed = seed + 7919 * (run + 1);

        const GridPtr g = make_grid(cfg.nr, cfg.nz, cfg.rmax, cfg.lz);
        const PoissonSolver solver(g);
        bool ok = false;
        std::string detail;
        try {
            cfg = calibrate_to_smallness(cfg, solver);
            const GeneratedData data = generate_initial_data(cfg, solver);
            const double two_M0 = 2.0 * data.M0;
            const RunResult res =
                run_reform(data.reform, cfg.p, stepper_from(cfg), solver);
            double max_M = 0.0, sup_b3 = 0.0, sup_omega = 0.0, sup_J = 0.0;
            bool monitors_finite = true;
            for (const auto& row : res.rows) {
                max_M = std::max(max_M, row.M);
                sup_b3 = std::max(sup_b3, row.btheta_l3);
                sup_omega = std::max(sup_omega, row.omega_l32);
                sup_J = std::max(sup_J, row.J_l32);
                monitors_finite = monitors_finite && std::isfinite(row.btheta_l3) &&
                                  std::isfinite(row.omega_l32) &&
                                  std::isfinite(row.J_l32);
            }
            const double ledger = dissipation_ledger(res.rows, cfg.p);
            ok = data.smallness.passed && !res.blew_up && max_M <= two_M0 &&
                 ledger <= two_M0 * 1.01 && monitors_finite;
            detail = "sup M = " + fmt(max_M) + ", ledger = " + fmt(ledger) +
                     ", 2 M0 = " + fmt(two_M0) + "; observed sups: ||b||_L3 " +
                     fmt(sup_b3) + ", ||omega||_L3/2 " + fmt(sup_omega) +
                     ", ||J||_L3/2 " + fmt(sup_J);
        } catch (const std::exception& e) {
            detail = e.what();
        }
        rep.checks.push_back(
            check("seeded run " + std::to_string(run + 1) +
                      ": smallness holds, M(t) <= 2 M0, ledger <= 2 M0 (1+1e-2)",
                  ok, detail));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// lp / duhamel
// ---------------------------------------------------------------------------

CartesianField3D box_tone(int n, double L, int kx, int ky, int kz,
                          double amplitude = 1.0) {
    CartesianField3D f = CartesianField3D::scalar(n, L);
    const double h = L / n;
    std::ptrdiff_t idx = 0;
    for (int z = 0; z < n; ++z) {
        for (int y = 0; y < n; ++y) {
            for (int x = 0; x < n; ++x, ++idx) {
                const double px = -0.5 * L + x * h, py = -0.5 * L + y * h,
                             pz = -0.5 * L + z * h;
                f.components[0][idx] =
                    amplitude *
                    std::cos(2.0 * kPi / L * (kx * px + ky * py + kz * pz));
            }
        }
    }
    return f;
}

CartesianField3D random_tones(int n, double L, double kmax, std::uint64_t seed) {
    Rng rng(seed);
    CartesianField3D f = CartesianField3D::scalar(n, L);
    const int lim = static_cast<int>(kmax / std::sqrt(3.0));
    for (int t = 0; t < 24; ++t) {
        const int kx = static_cast<int>(rng.uniform(0, lim + 1));
        const int ky = static_cast<int>(rng.uniform(0, lim + 1));
        const int kz = static_cast<int>(rng.uniform(0, lim + 1));
        const double a = rng.uniform(-1, 1);
        f.components[0] += box_tone(n, L, kx, ky, kz, a).components[0];
    }
    return f;
}

SuiteReport suite_lp(std::uint64_t seed) {
    SuiteReport rep;
    rep.name = "lp";
    const double L = 2.0 * kPi;

    {
        const DyadicPartition part(64);
        double worst = 0.0;
        for (int i = 0; i < 10000; ++i) {
            const double tau = 1e-3 + i * (12.0 - 1e-3) / 9999.0;
            double total = DyadicPartition::chi(tau);
            for (int j = 0; j <= part.j_max + 1; ++j) {
                total += DyadicPartition::phi(std::ldexp(tau, -j));
            }
            worst = std::max(worst, std::fabs(total - 1.0));
        }
        rep.checks.push_back(check("partition of unity <= 1e-12", worst <= 1e-12,
                                   "max defect " + fmt(worst)));
    }
    {
        const int n = 64;
        const DyadicPartition part(n);
        const CartesianField3D u =
            random_tones(n, L, 0.75 * std::ldexp(1.0, part.j_max + 1), seed ^ 0xA1);
        CartesianField3D sum = low_pass(u);
        for (int j = part.j_min; j <= part.j_max; ++j) {
            sum.components[0] += dyadic_block(u, j).components[0];
        }
        double worst = (sum.components[0] - u.components[0]).abs().maxCoeff();
        const double scale = box_lp_norm(u, kInf);
        rep.checks.push_back(check("reconstruction <= 1e-10", worst <= 1e-10 * scale,
                                   "max defect " + fmt(worst / scale)));
    }
    {
        bool ok = true;
        std::string detail;
        for (int j : {0, 1, 2, 3}) {
            const int k = 1 << j;
            const CartesianField3D u = box_tone(64, L, k, k, 0);
            for (double s : {-1.0, 1.0}) {
                const double norm = besov_norm(u, s, kInf, 1.0);
                const double expected = std::pow(2.0, j * s);
                if (std::fabs(norm - expected) > 1e-10 * expected) {
                    ok = false;
                    detail = "j = " + std::to_string(j) + ", s = " + fmt(s) +
                             ": " + fmt(norm) + " vs " + fmt(expected);
                }
            }
        }
        rep.checks.push_back(check("single-tone Besov norms exact to 1e-10", ok, detail));
    }
    {
        const int n = 32;
        CartesianField3D u = CartesianField3D::vector(n, L);
        u.components[0] = random_tones(n, L, 10.0, seed ^ 0xB1).components[0];
        u.components[1] = random_tones(n, L, 10.0, seed ^ 0xB2).components[0];
        u.components[2] = random_tones(n, L, 10.0, seed ^ 0xB3).components[0];
        const CartesianField3D pu = leray_project(u);
        const CartesianField3D ppu = leray_project(pu);
        double idem = 0.0;
        for (int c = 0; c < 3; ++c) {
            idem = std::max(idem,
                            (ppu.components[c] - pu.components[c]).abs().maxCoeff());
        }
        const double scale = box_lp_norm(u, kInf);
        const double div_ratio =
            spectral_divergence_l2(pu) / spectral_divergence_l2(u);

        // Gradient of a random tone sum: grad cos(k.x) = -k sin(k.x).
        CartesianField3D grad = CartesianField3D::vector(n, L);
        {
            Rng rng(seed ^ 0xB4);
            const int lim = static_cast<int>(8.0 / std::sqrt(3.0));
            for (int t = 0; t < 24; ++t) {
                const int kx = static_cast<int>(rng.uniform(0, lim + 1));
                const int ky = static_cast<int>(rng.uniform(0, lim + 1));
                const int kz = static_cast<int>(rng.uniform(0, lim + 1));
                const double a = rng.uniform(-1, 1);
                // sin tone as cos with k shifted: build pointwise.
                CartesianField3D sn = CartesianField3D::scalar(n, L);
                const double h = L / n;
                std::ptrdiff_t idx = 0;
                for (int z = 0; z < n; ++z)
                    for (int y = 0; y < n; ++y)
                        for (int x = 0; x < n; ++x, ++idx) {
                            const double px = -0.5 * L + x * h,
                                         py = -0.5 * L + y * h,
                                         pz = -0.5 * L + z * h;
                            sn.components[0][idx] = a * std::sin(
                                2.0 * kPi / L * (kx * px + ky * py + kz * pz));
                        }
                grad.components[0] -= (2.0 * kPi / L) * kx * sn.components[0];
                grad.components[1] -= (2.0 * kPi / L) * ky * sn.components[0];
                grad.components[2] -= (2.0 * kPi / L) * kz * sn.components[0];
            }
        }
        const CartesianField3D pgrad = leray_project(grad);
        const double annihilation =
            box_lp_norm(pgrad, kInf) / std::max(box_lp_norm(grad, kInf), 1e-300);

        rep.checks.push_back(check("Leray idempotence <= 1e-12",
                                   idem <= 1e-12 * scale,
                                   "defect " + fmt(idem / scale)));
        rep.checks.push_back(check("Leray annihilates gradients <= 1e-12",
                                   annihilation <= 1e-12,
                                   "ratio " + fmt(annihilation)));
        rep.checks.push_back(check("div(P u) = 0 spectrally <= 1e-12",
                                   div_ratio <= 1e-12, "ratio " + fmt(div_ratio)));
    }
    {
        bool exact_ok = true;
        double worst = 0.0;
        for (int j : {0, 1, 2, 3}) {
            const int k = 1 << j;
            const CartesianField3D u = box_tone(64, L, k, k, 0);
            const double t = 0.05 / std::pow(4.0, j);
            const CartesianField3D hu = heat_semigroup(u, t);
            const double expected = std::exp(-t * 2.0 * std::pow(4.0, j));
            const double measured = box_lp_norm(hu, kInf);
            worst = std::max(worst, std::fabs(measured - expected));
            exact_ok = exact_ok && std::fabs(measured - expected) <= 1e-12;
        }
        rep.checks.push_back(check("heat decay exact on tones", exact_ok,
                                   "max defect " + fmt(worst)));

        // Fitted decay rate on tones: c = 2 >= (3/4)^2 with C = 1 <= 4.
        bool fit_ok = true;
        for (int j : {0, 1, 2, 3}) {
            const int k = 1 << j;
            const CartesianField3D u = box_tone(64, L, k, k, 0);
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            int m = 0;
            for (int s = 1; s <= 5; ++s) {
                const double t = 0.02 * s / std::pow(4.0, j);
                const double ratio = box_lp_norm(heat_semigroup(u, t), kInf);
                const double x = t * std::pow(4.0, j), y = std::log(ratio);
                sx += x;
                sy += y;
                sxx += x * x;
                sxy += x * y;
                ++m;
            }
            const double c_fit = -(m * sxy - sx * sy) / (m * sxx - sx * sx);
            const double big_c = std::exp((sy + c_fit * sx) / m);
            fit_ok = fit_ok && c_fit >= 0.5625 && big_c <= 4.0;
        }
        rep.checks.push_back(
            check("heat decay fit on tones: c >= (3/4)^2, C <= 4", fit_ok, ""));
    }
    return rep;
}

SuiteReport suite_duhamel(std::uint64_t) {
    SuiteReport rep;
    rep.name = "duhamel";
    const int n = 32;
    const double L = 2.0 * kPi;
    const double t = 0.4;
    const int j = 1;

    CartesianField3D u0 = CartesianField3D::vector(n, L);
    const CartesianField3D c = box_tone(n, L, 2, 1, 0);
    u0.components[0] = c.components[0];
    u0.components[1] = -2.0 * c.components[0];
    u0.components[2] = Eigen::ArrayXd::Zero(c.size());

    {
        std::vector<CartesianField3D> zeros(5, CartesianField3D::vector(n, L));
        const double resid = duhamel_residual(u0, zeros, t, j);
        rep.checks.push_back(check("zero-forcing residual <= 1e-12", resid <= 1e-12,
                                   "residual " + fmt(resid)));
    }
    {
        auto residual_with = [&](int m) {
            std::vector<CartesianField3D> forcing;
            for (int s = 0; s < m; ++s) {
                const double tau = t * s / (m - 1);
                CartesianField3D f = CartesianField3D::vector(n, L);
                const double amp = std::cos(3.0 * tau);
                f.components[0] = amp * c.components[0];
                f.components[1] = -2.0 * amp * c.components[0];
                f.components[2] = Eigen::ArrayXd::Zero(c.size());
                forcing.push_back(std::move(f));
            }
            return duhamel_residual(u0, forcing, t, j);
        };
        const double ratio = residual_with(9) / residual_with(17);
        rep.checks.push_back(
            check("halving the forcing interval cuts the residual 4x (+-20%)",
                  ratio > 3.2 && ratio < 4.8, in_window(ratio, 3.2, 4.8)));
    }
    return rep;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "exponents", "operators", "elliptic", "conservation",
        "structure", "smalldata", "lp",       "duhamel"};
    return names;
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed) {
    if (name == "exponents") return suite_exponents(seed);
    if (name == "operators") return suite_operators(seed);
    if (name == "elliptic") return suite_elliptic(seed);
    if (name == "conservation") return suite_conservation(seed);
    if (name == "structure") return suite_structure(seed);
    if (name == "smalldata") return suite_smalldata(seed);
    if (name == "lp") return suite_lp(seed);
    if (name == "duhamel") return suite_duhamel(seed);
    throw std::invalid_argument("unknown suite '" + name + "'");
}

std::vector<SuiteReport> run_all_suites(std::uint64_t seed) {
    std::vector<SuiteReport> reports;
    for (const auto& name : suite_names()) reports.push_back(run_suite(name, seed));
    return reports;
}

std::string render_report(const std::vector<SuiteReport>& reports) {
    std::ostringstream out;
    int passed = 0, total = 0;
    for (const auto& suite : reports) {
        out << "== suite " << suite.name << " ==\n";
        for (const auto& c : suite.checks) {
            out << (c.passed ? "[PASS] " : "[FAIL] ") << suite.name << "/" << c.name;
            if (!c.detail.empty()) out << " (" << c.detail << ")";
            out << '\n';
            ++total;
            if (c.passed) ++passed;
        }
    }
    out << "== summary: " << passed << "/" << total << " checks passed ==\n";
    return out.str();
}

}  // namespace swirlmhd
