#include "swirlmhd/evolve.hpp"

#include <cmath>
#include <limits>

#include "swirlmhd/operators.hpp"
#include "swirlmhd/snapshot.hpp"
#include "swirlmhd/util.hpp"

namespace swirlmhd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double advective_rate(const ScalarField& u_r, const ScalarField& u_z) {
    const Grid& g = *u_r.grid;
    const double m =
        (u_r.values.abs() / g.dr + u_z.values.abs() / g.dz).maxCoeff();
    return 1.5 * m;
}

double max_over_r(const ScalarField& f) {
    return (f.values.abs().colwise() / f.grid->r_centers).maxCoeff();
}

double explicit_diffusion_rate(const Grid& g) {
    // Conservative bound covering all operator variants, including the 1/r^2
    // term at the innermost cell.
    const double r0 = g.r_centers[0];
    return 4.0 / (g.dr * g.dr) + 4.0 / (g.dz * g.dz) + 1.0 / (r0 * r0);
}

double rate_to_dt(double rate, const StepperConfig& cfg) {
    if (rate <= 0.0) return kInf;
    return cfg.cfl_safety / rate;
}

double pick_dt(double bound, const StepperConfig& cfg, double dt_override,
               const char* what) {
    double dt = dt_override > 0.0 ? dt_override : cfg.dt;
    if (dt > 0.0) {
        if (dt > bound) {
            throw std::domain_error(std::string(what) +
                                    ": dt exceeds the stability bound " +
                                    format_double(bound));
        }
        return dt;
    }
    if (std::isinf(bound)) {
        throw std::domain_error(std::string(what) +
                                ": no finite stability bound; set dt explicitly");
    }
    return bound;
}

void check_finite(const ScalarField& f, const char* name, double time) {
    if (!all_finite(f)) throw BlowUpError(name, time);
}

// Explicit (non-diffusive) right-hand sides. Signs follow the equations
// rewritten as d_t X = rhs.
struct PrimitiveRhs {
    ScalarField gamma;  // -u.grad Gamma
    ScalarField b;      // -u.grad b + u_r b / r
    ScalarField omega;  // -u.grad w + 2 u dz u / r - 2 b dz b / r + u_r w / r
};

PrimitiveRhs primitive_explicit_rhs(const AxiState& s, const ScalarField& gamma) {
    PrimitiveRhs rhs;
    rhs.gamma = advect(s.u_r, s.u_z, gamma);
    rhs.gamma.values = -rhs.gamma.values;

    rhs.b = advect(s.u_r, s.u_z, s.b_theta);
    rhs.b.values = -rhs.b.values +
                   (s.u_r.values * s.b_theta.values).colwise() /
                       s.b_theta.grid->r_centers;

    rhs.omega = advect(s.u_r, s.u_z, s.omega_theta);
    rhs.omega.values =
        -rhs.omega.values +
        ((2.0 * s.u_theta.values * d_z(s.u_theta).values -
          2.0 * s.b_theta.values * d_z(s.b_theta).values +
          s.u_r.values * s.omega_theta.values)
             .colwise() /
         s.omega_theta.grid->r_centers);
    return rhs;
}

struct ReformRhs {
    ScalarField B;
    ScalarField eta;
    ScalarField V;
};

ReformRhs reform_explicit_rhs(const ReformState& s) {
    const Grid& g = *s.B.grid;
    ReformRhs rhs;
    rhs.B = advect(s.u_r, s.u_z, s.B);
    rhs.B.values = -rhs.B.values;

    const Eigen::ArrayXd r_m2eps = g.r_centers.pow(-2.0 * s.epsilon);
    rhs.eta = advect(s.u_r, s.u_z, s.eta);
    rhs.eta.values = -rhs.eta.values +
                     (2.0 * s.V.values * d_z(s.V).values).colwise() * r_m2eps -
                     2.0 * s.B.values * d_z(s.B).values;

    const double damp = 2.0 * s.epsilon - s.epsilon * s.epsilon;
    rhs.V = advect(s.u_r, s.u_z, s.V);
    rhs.V.values = -rhs.V.values -
                   (2.0 - s.epsilon) * ((s.u_r.values * s.V.values).colwise() /
                                        g.r_centers) -
                   damp * (s.V.values.colwise() / g.r_centers.square());
    return rhs;
}

struct FullBRhs {
    ScalarField b_r;
    ScalarField b_theta;
    ScalarField b_z;
};

FullBRhs full_b_explicit_rhs(const FullBState& s, const VelocityTriple& vel) {
    const Grid& g = *s.b_theta.grid;
    const ScalarField dur_r = d_r(vel.u_r), dur_z = d_z(vel.u_r);
    const ScalarField dut_r = d_r(vel.u_theta), dut_z = d_z(vel.u_theta);
    const ScalarField duz_r = d_r(vel.u_z), duz_z = d_z(vel.u_z);

    FullBRhs rhs;
    rhs.b_r = advect(vel.u_r, vel.u_z, s.b_r);
    rhs.b_r.values = -rhs.b_r.values + s.b_r.values * dur_r.values +
                     s.b_z.values * dur_z.values;

    rhs.b_theta = advect(vel.u_r, vel.u_z, s.b_theta);
    rhs.b_theta.values = -rhs.b_theta.values + s.b_r.values * dut_r.values +
                         s.b_z.values * dut_z.values +
                         (vel.u_r.values * s.b_theta.values).colwise() /
                             g.r_centers;

    rhs.b_z = advect(vel.u_r, vel.u_z, s.b_z);
    rhs.b_z.values = -rhs.b_z.values + s.b_r.values * duz_r.values +
                     s.b_z.values * duz_z.values;
    return rhs;
}

}  // namespace

double stable_dt_primitive(const AxiState& state, const StepperConfig& cfg) {
    double rate = advective_rate(state.u_r, state.u_z) + max_over_r(state.u_r);
    if (cfg.scheme == Scheme::ExplicitRk2) {
        rate += explicit_diffusion_rate(*state.u_theta.grid);
    }
    return rate_to_dt(rate, cfg);
}

double stable_dt_reform(const ReformState& state, const StepperConfig& cfg) {
    const Grid& g = *state.B.grid;
    const double eps = state.epsilon;
    // The explicit zeroth-order terms multiply V pointwise, so they only
    // constrain dt on cells where V is nonzero this step.
    const Eigen::ArrayXd damp =
        (2.0 * eps - eps * eps) * g.r_centers.square().inverse();
    const Array2d drift =
        ((2.0 - eps) * state.u_r.values.abs()).colwise() / g.r_centers;
    const Array2d occupied = (state.V.values != 0.0).cast<double>();
    const double zeroth = ((drift.colwise() + damp) * occupied).maxCoeff();
    double rate = advective_rate(state.u_r, state.u_z) + zeroth;
    if (cfg.scheme == Scheme::ExplicitRk2) rate += explicit_diffusion_rate(g);
    return rate_to_dt(rate, cfg);
}

double stable_dt_full_b(const FullBState& state, const VelocityTriple& vel,
                        const StepperConfig& cfg) {
    const ScalarField grad_mag = velocity_gradient_magnitude(vel.u_r, vel.u_z);
    const ScalarField dut_r = d_r(vel.u_theta), dut_z = d_z(vel.u_theta);
    double rate = advective_rate(vel.u_r, vel.u_z) + max_over_r(vel.u_r) +
                  grad_mag.values.maxCoeff() +
                  (dut_r.values.abs() + dut_z.values.abs()).maxCoeff();
    if (cfg.scheme == Scheme::ExplicitRk2) {
        rate += explicit_diffusion_rate(*state.b_theta.grid);
    }
    return rate_to_dt(rate, cfg);
}

AxiState step_primitive(const AxiState& state, const StepperConfig& cfg,
                        const PoissonSolver& solver, double dt_override) {
    const double dt =
        pick_dt(stable_dt_primitive(state, cfg), cfg, dt_override, "step_primitive");
    const ScalarField gamma = multiply_by_r(state.u_theta);
    ScalarField gamma_new, b_new, omega_new;

    if (cfg.scheme == Scheme::ImexEuler) {
        const PrimitiveRhs rhs = primitive_explicit_rhs(state, gamma);
        ScalarField gs = gamma;
        gs.values += dt * rhs.gamma.values;
        ScalarField bs = state.b_theta;
        bs.values += dt * rhs.b.values;
        ScalarField ws = state.omega_theta;
        ws.values += dt * rhs.omega.values;
        check_finite(gs, "u_theta", state.time + dt);
        check_finite(bs, "b_theta", state.time + dt);
        check_finite(ws, "omega_theta", state.time + dt);
        gamma_new = solver.solve_backward_euler(gs, gamma_operator(), dt);
        b_new = solver.solve_backward_euler(bs, swirl_operator(), dt);
        omega_new = solver.solve_backward_euler(ws, swirl_operator(), dt);
    } else {
        auto full_rhs = [&](const AxiState& s, const ScalarField& gam) {
            PrimitiveRhs rhs = primitive_explicit_rhs(s, gam);
            rhs.gamma.values += laplacian_reform(gam, -2.0).values;
            rhs.b.values += laplacian_swirl(s.b_theta).values;
            rhs.omega.values += laplacian_swirl(s.omega_theta).values;
            return rhs;
        };
        const PrimitiveRhs k1 = full_rhs(state, gamma);
        AxiState mid;
        ScalarField gamma_mid = gamma;
        gamma_mid.values += dt * k1.gamma.values;
        ScalarField b_mid = state.b_theta;
        b_mid.values += dt * k1.b.values;
        ScalarField w_mid = state.omega_theta;
        w_mid.values += dt * k1.omega.values;
        check_finite(gamma_mid, "u_theta", state.time + dt);
        check_finite(w_mid, "omega_theta", state.time + dt);
        mid = make_axi_state(solver, divide_by_r(gamma_mid), b_mid, w_mid,
                             state.time);
        const PrimitiveRhs k2 = full_rhs(mid, gamma_mid);
        gamma_new = gamma;
        gamma_new.values += 0.5 * dt * (k1.gamma.values + k2.gamma.values);
        b_new = state.b_theta;
        b_new.values += 0.5 * dt * (k1.b.values + k2.b.values);
        omega_new = state.omega_theta;
        omega_new.values += 0.5 * dt * (k1.omega.values + k2.omega.values);
    }

    AxiState next = make_axi_state(solver, divide_by_r(gamma_new), b_new,
                                   omega_new, state.time + dt);
    check_finite(next.u_theta, "u_theta", next.time);
    check_finite(next.b_theta, "b_theta", next.time);
    check_finite(next.omega_theta, "omega_theta", next.time);
    check_finite(next.u_r, "u_r", next.time);
    return next;
}

ReformState step_reform(const ReformState& state, const StepperConfig& cfg,
                        const PoissonSolver& solver, double dt_override) {
    const double dt =
        pick_dt(stable_dt_reform(state, cfg), cfg, dt_override, "step_reform");
    const double eps = state.epsilon;
    ScalarField B_new, eta_new, V_new;

    if (cfg.scheme == Scheme::ImexEuler) {
        const ReformRhs rhs = reform_explicit_rhs(state);
        ScalarField Bs = state.B;
        Bs.values += dt * rhs.B.values;
        ScalarField es = state.eta;
        es.values += dt * rhs.eta.values;
        ScalarField Vs = state.V;
        Vs.values += dt * rhs.V.values;
        check_finite(Bs, "B", state.time + dt);
        check_finite(es, "eta", state.time + dt);
        check_finite(Vs, "V", state.time + dt);
        B_new = solver.solve_backward_euler(Bs, reform_operator(2.0), dt);
        eta_new = solver.solve_backward_euler(es, reform_operator(2.0), dt);
        V_new = solver.solve_backward_euler(Vs, reform_operator(2.0 * (1.0 - eps)),
                                            dt);
    } else {
        auto full_rhs = [&](const ReformState& s) {
            ReformRhs rhs = reform_explicit_rhs(s);
            rhs.B.values += laplacian_reform(s.B, 2.0).values;
            rhs.eta.values += laplacian_reform(s.eta, 2.0).values;
            rhs.V.values += laplacian_reform(s.V, 2.0 * (1.0 - eps)).values;
            return rhs;
        };
        const ReformRhs k1 = full_rhs(state);
        ScalarField B_mid = state.B;
        B_mid.values += dt * k1.B.values;
        ScalarField e_mid = state.eta;
        e_mid.values += dt * k1.eta.values;
        ScalarField V_mid = state.V;
        V_mid.values += dt * k1.V.values;
        check_finite(e_mid, "eta", state.time + dt);
        check_finite(V_mid, "V", state.time + dt);
        const ReformState mid =
            make_reform_state(solver, eps, B_mid, e_mid, V_mid, state.time);
        const ReformRhs k2 = full_rhs(mid);
        B_new = state.B;
        B_new.values += 0.5 * dt * (k1.B.values + k2.B.values);
        eta_new = state.eta;
        eta_new.values += 0.5 * dt * (k1.eta.values + k2.eta.values);
        V_new = state.V;
        V_new.values += 0.5 * dt * (k1.V.values + k2.V.values);
    }

    ReformState next = make_reform_state(solver, eps, B_new, eta_new, V_new,
                                         state.time + dt);
    check_finite(next.B, "B", next.time);
    check_finite(next.eta, "eta", next.time);
    check_finite(next.V, "V", next.time);
    check_finite(next.u_r, "u_r", next.time);
    return next;
}

FullBState step_full_b(const FullBState& state, const VelocityTriple& vel,
                       const StepperConfig& cfg, const PoissonSolver& solver,
                       double dt_override) {
    const double dt = pick_dt(stable_dt_full_b(state, vel, cfg), cfg, dt_override,
                              "step_full_b");
    FullBState next;
    next.time = state.time + dt;

    if (cfg.scheme == Scheme::ImexEuler) {
        const FullBRhs rhs = full_b_explicit_rhs(state, vel);
        ScalarField rs = state.b_r;
        rs.values += dt * rhs.b_r.values;
        ScalarField ts = state.b_theta;
        ts.values += dt * rhs.b_theta.values;
        ScalarField zs = state.b_z;
        zs.values += dt * rhs.b_z.values;
        check_finite(rs, "b_r", state.time + dt);
        check_finite(ts, "b_theta", state.time + dt);
        check_finite(zs, "b_z", state.time + dt);
        next.b_r = solver.solve_backward_euler(rs, swirl_operator(), dt);
        next.b_theta = solver.solve_backward_euler(ts, swirl_operator(), dt);
        next.b_z = solver.solve_backward_euler(zs, plain_operator(), dt);
    } else {
        auto full_rhs = [&](const FullBState& s) {
            FullBRhs rhs = full_b_explicit_rhs(s, vel);
            rhs.b_r.values += laplacian_swirl(s.b_r).values;
            rhs.b_theta.values += laplacian_swirl(s.b_theta).values;
            rhs.b_z.values += laplacian_reform(s.b_z, 0.0).values;
            return rhs;
        };
        const FullBRhs k1 = full_rhs(state);
        FullBState mid;
        mid.time = state.time;
        mid.b_r = state.b_r;
        mid.b_r.values += dt * k1.b_r.values;
        mid.b_theta = state.b_theta;
        mid.b_theta.values += dt * k1.b_theta.values;
        mid.b_z = state.b_z;
        mid.b_z.values += dt * k1.b_z.values;
        const FullBRhs k2 = full_rhs(mid);
        next.b_r = state.b_r;
        next.b_r.values += 0.5 * dt * (k1.b_r.values + k2.b_r.values);
        next.b_theta = state.b_theta;
        next.b_theta.values += 0.5 * dt * (k1.b_theta.values + k2.b_theta.values);
        next.b_z = state.b_z;
        next.b_z.values += 0.5 * dt * (k1.b_z.values + k2.b_z.values);
    }

    check_finite(next.b_r, "b_r", next.time);
    check_finite(next.b_theta, "b_theta", next.time);
    check_finite(next.b_z, "b_z", next.time);
    return next;
}

namespace {

template <typename State, typename StepFn, typename DiagFn, typename SnapFn>
RunResult run_loop(State state, const StepperConfig& cfg,
                   const RunOutputs& out, StepFn step, DiagFn diag,
                   SnapFn snap) {
    RunResult result;
    const double tiny = 1e-12 * std::max(1.0, std::fabs(cfg.t_end));
    result.rows.push_back(diag(state));
    if (out.snapshot_every > 0 && !out.snapshot_prefix.empty()) snap(state, 0);

    int step_count = 0;
    while (state.time < cfg.t_end - tiny) {
        const double remaining = cfg.t_end - state.time;
        try {
            state = step(state, remaining);
        } catch (const BlowUpError& e) {
            result.blew_up = true;
            result.blow_up_field = e.field;
            result.blow_up_time = e.time;
            break;
        }
        ++step_count;
        const bool last = state.time >= cfg.t_end - tiny;
        if (step_count % std::max(1, cfg.sample_every) == 0 || last) {
            result.rows.push_back(diag(state));
        }
        if (out.snapshot_every > 0 && !out.snapshot_prefix.empty() &&
            (step_count % out.snapshot_every == 0 || last)) {
            snap(state, step_count);
        }
    }
    result.steps = step_count;
    if (!out.csv_path.empty()) write_diagnostics_csv(out.csv_path, result.rows);
    return result;
}

std::string snap_name(const std::string& prefix, const char* field, int step) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "_%06d.snap", step);
    return prefix + field + buf;
}

}  // namespace

RunResult run_primitive(AxiState state, double p, const StepperConfig& cfg,
                        const PoissonSolver& solver, const RunOutputs& out) {
    return run_loop(
        std::move(state), cfg, out,
        [&](const AxiState& s, double remaining) {
            const double bound = stable_dt_primitive(s, cfg);
            double dt = cfg.dt > 0.0 ? cfg.dt : bound;
            if (std::isinf(dt)) dt = remaining;
            return step_primitive(s, cfg, solver, std::min(dt, remaining));
        },
        [&](const AxiState& s) { return diagnostics_from_primitive(s, p); },
        [&](const AxiState& s, int step) {
            write_snapshot(snap_name(out.snapshot_prefix, "u_theta", step),
                           s.u_theta, s.time, "u_theta");
            write_snapshot(snap_name(out.snapshot_prefix, "b_theta", step),
                           s.b_theta, s.time, "b_theta");
            write_snapshot(snap_name(out.snapshot_prefix, "omega_theta", step),
                           s.omega_theta, s.time, "omega_theta");
        });
}

RunResult run_reform(ReformState state, double p, const StepperConfig& cfg,
                     const PoissonSolver& solver, const RunOutputs& out) {
    return run_loop(
        std::move(state), cfg, out,
        [&](const ReformState& s, double remaining) {
            const double bound = stable_dt_reform(s, cfg);
            double dt = cfg.dt > 0.0 ? cfg.dt : bound;
            if (std::isinf(dt)) dt = remaining;
            return step_reform(s, cfg, solver, std::min(dt, remaining));
        },
        [&](const ReformState& s) { return diagnostics_from_reform(s, p); },
        [&](const ReformState& s, int step) {
            write_snapshot(snap_name(out.snapshot_prefix, "B", step), s.B, s.time,
                           "B");
            write_snapshot(snap_name(out.snapshot_prefix, "eta", step), s.eta,
                           s.time, "eta");
            write_snapshot(snap_name(out.snapshot_prefix, "V", step), s.V, s.time,
                           "V");
        });
}

}  // namespace swirlmhd
