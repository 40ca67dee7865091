#include "swirlmhd/functionals.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "swirlmhd/operators.hpp"
#include "swirlmhd/util.hpp"

namespace swirlmhd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// |(-d_z g, c, d_r g + g/r)| pointwise for a swirl profile g and a middle
// component c (omega_theta for omega, zero for J).
ScalarField swirl_curl_magnitude(const ScalarField& g, const ScalarField* middle) {
    auto [comp_r, comp_z] = curl_from_swirl(g);
    ScalarField mag(g.grid, Parity::Even);
    mag.values = comp_r.values.square() + comp_z.values.square();
    if (middle != nullptr) mag.values += middle->values.square();
    mag.values = mag.values.sqrt();
    return mag;
}

double s_of_p(double p) { return 6.0 * p / (3.0 + p); }

}  // namespace

const std::vector<std::string>& DiagnosticsRow::column_names() {
    static const std::vector<std::string> names = {
        "time",          "ru_theta_linf",  "B_l32",
        "B_ls",          "eta_lp",         "V_l74",
        "M",             "grad_eta_p2_l2", "grad_V_78_l2",
        "V78_over_r_l2", "grad_B_s2_l2",   "btheta_l3",
        "omega_l32",     "J_l32",          "div_residual",
        "structure_residual"};
    return names;
}

std::vector<double> DiagnosticsRow::values_in_order() const {
    return {time,          ru_theta_linf,  B_l32,        B_ls,
            eta_lp,        V_l74,          M,            grad_eta_p2_l2,
            grad_V_78_l2,  V78_over_r_l2,  grad_B_s2_l2, btheta_l3,
            omega_l32,     J_l32,          div_residual, structure_residual};
}

double M_of_state(const ReformState& state, double p) {
    const double s = s_of_p(p);
    return std::pow(lp_norm(state.eta, p), p) +
           std::pow(lp_norm(state.V, 1.75), 1.75) +
           std::pow(lp_norm(state.B, s), s);
}

std::pair<double, double> omega_J_monitors(const AxiState& state) {
    const ScalarField omega_mag =
        swirl_curl_magnitude(state.u_theta, &state.omega_theta);
    const ScalarField j_mag = swirl_curl_magnitude(state.b_theta, nullptr);
    return {lp_norm(omega_mag, 1.5), lp_norm(j_mag, 1.5)};
}

namespace {

// Shared assembly once the reformulated fields and the swirl fields exist.
DiagnosticsRow assemble_row(double time, double p, const ScalarField& B,
                            const ScalarField& eta, const ScalarField& V,
                            const ScalarField& u_theta, const ScalarField& b_theta,
                            const ScalarField& omega_theta, const ScalarField& u_r,
                            const ScalarField& u_z) {
    const double s = s_of_p(p);
    DiagnosticsRow row;
    row.time = time;
    row.ru_theta_linf = lp_norm(u_theta, kInf, 1.0);
    row.B_l32 = lp_norm(B, 1.5);
    row.B_ls = lp_norm(B, s);
    row.eta_lp = lp_norm(eta, p);
    row.V_l74 = lp_norm(V, 1.75);
    row.M = std::pow(row.eta_lp, p) + std::pow(row.V_l74, 1.75) +
            std::pow(row.B_ls, s);
    row.grad_eta_p2_l2 = grad_power_norm(eta, 0.5 * p);
    row.grad_V_78_l2 = grad_power_norm(V, 7.0 / 8.0);
    row.V78_over_r_l2 = lp_norm(abs_power(V, 7.0 / 8.0), 2.0, -1.0);
    row.grad_B_s2_l2 = grad_power_norm(B, 0.5 * s);
    row.btheta_l3 = lp_norm(b_theta, 3.0);
    {
        ScalarField omega_mag = swirl_curl_magnitude(u_theta, &omega_theta);
        ScalarField j_mag = swirl_curl_magnitude(b_theta, nullptr);
        row.omega_l32 = lp_norm(omega_mag, 1.5);
        row.J_l32 = lp_norm(j_mag, 1.5);
    }
    row.div_residual = div_weighted_residual(u_r, u_z);
    row.structure_residual = 0.0;
    return row;
}

}  // namespace

DiagnosticsRow diagnostics_from_primitive(const AxiState& state, double p) {
    const double eps = 2.0 / 7.0 - 60.0 * (p - 1.0) / (7.0 * (3.0 - p));
    const ScalarField B = divide_by_r(state.b_theta);
    const ScalarField eta = divide_by_r(state.omega_theta);
    const ScalarField V = scale_by_r_power(state.u_theta, eps - 1.0, Parity::Even);
    return assemble_row(state.time, p, B, eta, V, state.u_theta, state.b_theta,
                        state.omega_theta, state.u_r, state.u_z);
}

DiagnosticsRow diagnostics_from_reform(const ReformState& state, double p) {
    const ScalarField u_theta =
        scale_by_r_power(state.V, 1.0 - state.epsilon, Parity::Odd);
    const ScalarField b_theta = multiply_by_r(state.B);
    const ScalarField omega_theta = multiply_by_r(state.eta);
    return assemble_row(state.time, p, state.B, state.eta, state.V, u_theta,
                        b_theta, omega_theta, state.u_r, state.u_z);
}

double axis_term_B(const ScalarField& B, double k) {
    const Grid& g = *B.grid;
    double integral = 0.0;
    for (int j = 0; j < g.nz; ++j) {
        const double y0 = std::pow(std::fabs(B(0, j)), k);
        const double y1 = std::pow(std::fabs(B(1, j)), k);
        // Even quadratic through (r_0, y0), (r_1, y1) evaluated at r = 0:
        // r_0 = dr/2, r_1 = 3 dr/2 gives (9 y0 - y1) / 8.
        integral += (9.0 * y0 - y1) / 8.0 * g.dz;
    }
    // Carries the same 2 pi angular factor as the volume norms, so that
    // d/dt ||B||_k^k + 2 * axis + (4(k-1)/k) * dissipation closes.
    return 2.0 * EIGEN_PI * integral;
}

double balance_residual_B(const std::vector<BalanceSample>& samples, double k) {
    if (samples.size() < 3) {
        throw std::domain_error("balance_residual_B: need at least 3 samples");
    }
    const double dt0 = samples[1].time - samples[0].time;
    for (std::size_t n = 1; n + 1 < samples.size(); ++n) {
        const double dt_n = samples[n + 1].time - samples[n].time;
        if (std::fabs(dt_n - dt0) > 1e-9 * std::max(1.0, std::fabs(dt0))) {
            throw std::domain_error("balance_residual_B: samples not uniform in time");
        }
    }
    const double scale = samples.front().norm_pow_k;
    if (scale == 0.0) return 0.0;
    double worst = 0.0;
    for (std::size_t n = 1; n + 1 < samples.size(); ++n) {
        const double dt_sample = 0.5 * (samples[n + 1].time - samples[n - 1].time);
        const double ddt =
            (samples[n + 1].norm_pow_k - samples[n - 1].norm_pow_k) /
            (2.0 * dt_sample);
        const double resid = ddt + 2.0 * samples[n].axis_term +
                             4.0 * (k - 1.0) / k * samples[n].grad_pow_sq;
        worst = std::max(worst, std::fabs(resid) / scale);
    }
    return worst;
}

double dissipation_ledger(const std::vector<DiagnosticsRow>& rows, double p) {
    if (rows.empty()) return 0.0;
    double integral = 0.0;
    auto integrand = [&](const DiagnosticsRow& r) {
        return (p - 1.0) * r.grad_eta_p2_l2 * r.grad_eta_p2_l2 +
               r.grad_V_78_l2 * r.grad_V_78_l2 +
               r.V78_over_r_l2 * r.V78_over_r_l2;
    };
    for (std::size_t n = 0; n + 1 < rows.size(); ++n) {
        integral += 0.5 * (integrand(rows[n]) + integrand(rows[n + 1])) *
                    (rows[n + 1].time - rows[n].time);
    }
    return rows.back().M + integral;
}

void write_diagnostics_csv(const std::string& path,
                           const std::vector<DiagnosticsRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    const auto& names = DiagnosticsRow::column_names();
    for (std::size_t c = 0; c < names.size(); ++c) {
        out << names[c] << (c + 1 < names.size() ? "," : "\n");
    }
    for (const auto& row : rows) {
        const auto vals = row.values_in_order();
        for (std::size_t c = 0; c < vals.size(); ++c) {
            out << format_double(vals[c]) << (c + 1 < vals.size() ? "," : "\n");
        }
    }
    if (!out) throw std::runtime_error("short write to " + path);
}

}  // namespace swirlmhd
