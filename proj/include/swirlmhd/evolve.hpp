#pragma once

#include "swirlmhd/functionals.hpp"
#include "swirlmhd/state.hpp"

namespace swirlmhd {

/// Largest stable dt for the explicit terms of each system at the current
/// state: advection CFL plus the explicitly treated zeroth-order rates
/// (|u_r/r| terms, the V/r^2 damping), plus the diffusion bound when the
/// scheme is fully explicit. Returns +infinity when nothing constrains dt.
double stable_dt_primitive(const AxiState& state, const StepperConfig& cfg);
double stable_dt_reform(const ReformState& state, const StepperConfig& cfg);
double stable_dt_full_b(const FullBState& state, const VelocityTriple& vel,
                        const StepperConfig& cfg);

/// One step of the primitive (u_theta, b_theta, omega_theta) system.
/// u_theta is advanced through Gamma = r u_theta, whose advection-diffusion
/// form has no zeroth-order source, so the monotone scheme plus the implicit
/// M-matrix solve make max|r u_theta| non-increasing per step.
/// dt_override > 0 forces the step size; otherwise cfg.dt (validated against
/// the stability bound) or the bound itself is used. Throws BlowUpError if a
/// field stops being finite.
AxiState step_primitive(const AxiState& state, const StepperConfig& cfg,
                        const PoissonSolver& solver, double dt_override = 0.0);

/// One step of the reformulated (B, eta, V) system.
ReformState step_reform(const ReformState& state, const StepperConfig& cfg,
                        const PoissonSolver& solver, double dt_override = 0.0);

/// One step of the three-component magnetic system driven by a prescribed
/// velocity. From b_r = b_z = 0 both right-hand sides vanish identically and
/// the components stay exactly zero.
FullBState step_full_b(const FullBState& state, const VelocityTriple& vel,
                       const StepperConfig& cfg, const PoissonSolver& solver,
                       double dt_override = 0.0);

struct RunOutputs {
    std::string csv_path;         ///< empty: no CSV written
    std::string snapshot_prefix;  ///< empty: no snapshots
    int snapshot_every = 0;       ///< steps between snapshots (0: none)
};

struct RunResult {
    std::vector<DiagnosticsRow> rows;
    bool blew_up = false;
    std::string blow_up_field;
    double blow_up_time = 0.0;
    int steps = 0;
};

/// Integrates to cfg.t_end, sampling diagnostics every cfg.sample_every
/// steps (plus the initial and final states). A blow-up aborts the run but
/// the diagnostics collected so far are still flushed and returned.
RunResult run_primitive(AxiState state, double p, const StepperConfig& cfg,
                        const PoissonSolver& solver, const RunOutputs& out = {});
RunResult run_reform(ReformState state, double p, const StepperConfig& cfg,
                     const PoissonSolver& solver, const RunOutputs& out = {});

}  // namespace swirlmhd
