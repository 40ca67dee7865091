#include "swirlmhd/state.hpp"

namespace swirlmhd {

namespace {

void check_parity(const ScalarField& f, Parity p, const char* name) {
    if (f.parity != p) {
        throw std::invalid_argument(std::string(name) + " must be " +
                                    (p == Parity::Odd ? "odd" : "even"));
    }
}

}  // namespace

AxiState make_axi_state(const PoissonSolver& solver, ScalarField u_theta,
                        ScalarField b_theta, ScalarField omega_theta,
                        double time) {
    check_parity(u_theta, Parity::Odd, "u_theta");
    check_parity(b_theta, Parity::Odd, "b_theta");
    check_parity(omega_theta, Parity::Odd, "omega_theta");
    AxiState s;
    s.time = time;
    auto [u_r, u_z] = biot_savart(solver, omega_theta);
    s.u_theta = std::move(u_theta);
    s.b_theta = std::move(b_theta);
    s.omega_theta = std::move(omega_theta);
    s.u_r = std::move(u_r);
    s.u_z = std::move(u_z);
    return s;
}

ReformState make_reform_state(const PoissonSolver& solver, double epsilon,
                              ScalarField B, ScalarField eta, ScalarField V,
                              double time) {
    check_parity(B, Parity::Even, "B");
    check_parity(eta, Parity::Even, "eta");
    check_parity(V, Parity::Even, "V");
    if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
        throw std::invalid_argument("make_reform_state: epsilon must lie in ]0,1[");
    }
    ReformState s;
    s.time = time;
    s.epsilon = epsilon;
    auto [u_r, u_z] = biot_savart(solver, multiply_by_r(eta));
    s.B = std::move(B);
    s.eta = std::move(eta);
    s.V = std::move(V);
    s.u_r = std::move(u_r);
    s.u_z = std::move(u_z);
    return s;
}

ReformState reform_from_primitive(const PoissonSolver& solver,
                                  const AxiState& state, double epsilon) {
    return make_reform_state(
        solver, epsilon, divide_by_r(state.b_theta), divide_by_r(state.omega_theta),
        scale_by_r_power(state.u_theta, epsilon - 1.0, Parity::Even), state.time);
}

AxiState primitive_from_reform(const PoissonSolver& solver,
                               const ReformState& state) {
    return make_axi_state(
        solver, scale_by_r_power(state.V, 1.0 - state.epsilon, Parity::Odd),
        multiply_by_r(state.B), multiply_by_r(state.eta), state.time);
}

}  // namespace swirlmhd
