#pragma once

#include <string>
#include <vector>

#include "swirlmhd/state.hpp"

namespace swirlmhd {

/// One time sample of every monitored functional. Column order of the CSV
/// schema is the declaration order below, `time` first.
struct DiagnosticsRow {
    double time = 0.0;
    double ru_theta_linf = 0.0;     ///< ||r u_theta||_Linf
    double B_l32 = 0.0;             ///< ||B||_{L^{3/2}}
    double B_ls = 0.0;              ///< ||B||_{L^s}, s = 6p/(3+p)
    double eta_lp = 0.0;            ///< ||eta||_{L^p}
    double V_l74 = 0.0;             ///< ||V||_{L^{7/4}}
    double M = 0.0;                 ///< ||eta||_p^p + ||V||_{7/4}^{7/4} + ||B||_s^s
    double grad_eta_p2_l2 = 0.0;    ///< ||grad |eta|^{p/2}||_{L^2}
    double grad_V_78_l2 = 0.0;      ///< ||grad |V|^{7/8}||_{L^2}
    double V78_over_r_l2 = 0.0;     ///< || |V|^{7/8} / r ||_{L^2}
    double grad_B_s2_l2 = 0.0;      ///< ||grad |B|^{s/2}||_{L^2}
    double btheta_l3 = 0.0;         ///< ||b_theta||_{L^3}
    double omega_l32 = 0.0;         ///< ||omega||_{L^{3/2}} (all three components)
    double J_l32 = 0.0;             ///< ||J||_{L^{3/2}}
    double div_residual = 0.0;      ///< discrete weighted-divergence residual
    double structure_residual = 0.0;///< max(|b_r|, |b_z|) in full-b runs, else 0

    static const std::vector<std::string>& column_names();
    std::vector<double> values_in_order() const;
};

/// M(t) = ||eta||_p^p + ||V||_{7/4}^{7/4} + ||B||_s^s.
double M_of_state(const ReformState& state, double p);

/// (||omega||_{L^{3/2}}, ||J||_{L^{3/2}}) with
/// omega = (-d_z u_theta, omega_theta, d_r u_theta + u_theta/r) and
/// J = (-d_z b_theta, 0, d_r b_theta + b_theta/r).
std::pair<double, double> omega_J_monitors(const AxiState& state);

/// Full diagnostics rows for either formulation. The primitive variant
/// derives (B, eta, V) on the fly; the reformulated one reconstructs
/// (u_theta, b_theta, omega_theta).
DiagnosticsRow diagnostics_from_primitive(const AxiState& state, double p);
DiagnosticsRow diagnostics_from_reform(const ReformState& state, double p);

/// 2 pi * integral over z of |B|^k extrapolated to r = 0 (quadratic, even in
/// r, from the first two cell centers): the axis line integral of the B
/// balance, carrying the angular factor of the volume measure. The residual
/// formula multiplies it by the coefficient 2.
double axis_term_B(const ScalarField& B, double k);

/// One uniformly sampled point of the L^k balance of B.
struct BalanceSample {
    double time;
    double norm_pow_k;    ///< ||B||_{L^k}^k
    double grad_pow_sq;   ///< ||grad |B|^{k/2}||_{L^2}^2
    double axis_term;     ///< axis_term_B at that time
};

/// Max over interior samples of the centered-difference residual of
///   d/dt ||B||_k^k + 2 axis + (4(k-1)/k) ||grad |B|^{k/2}||^2 = 0,
/// normalized by the initial ||B||_k^k. Needs at least 3 samples.
double balance_residual_B(const std::vector<BalanceSample>& samples, double k);

/// M(t_end) plus the trapezoidal time integrals of the dissipation terms
/// with the prefactors (p-1), 1, 1; the a-priori bound caps this by 2 M(0).
double dissipation_ledger(const std::vector<DiagnosticsRow>& rows, double p);

/// Writes the diagnostics table as CSV: header row of column_names, then one
/// row per sample, 17 significant digits.
void write_diagnostics_csv(const std::string& path,
                           const std::vector<DiagnosticsRow>& rows);

}  // namespace swirlmhd
