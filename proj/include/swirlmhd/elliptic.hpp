#pragma once

#include <utility>

#include "swirlmhd/grid.hpp"

namespace swirlmhd {

/// Radial part of a cylindrical operator d_rr + (c1/r) d_r + c2/r^2 (+ d_zz),
/// together with the axis parity that closes its stencil at r = 0.
struct RadialOperator {
    double c1;
    double c2;
    Parity parity;
};

/// (Delta - 1/r^2), acting on swirl components.
inline RadialOperator swirl_operator() { return {1.0, -1.0, Parity::Odd}; }
/// (Delta + (a/r) d_r), acting on the reformulated variables.
inline RadialOperator reform_operator(double a = 2.0) {
    return {1.0 + a, 0.0, Parity::Even};
}
/// (Delta - (2/r) d_r), acting on Gamma = r u_theta.
inline RadialOperator gamma_operator() { return {-1.0, 0.0, Parity::Even}; }
/// Plain axisymmetric Delta, acting on b_z.
inline RadialOperator plain_operator() { return {1.0, 0.0, Parity::Even}; }

/// Direct solver for cylindrical Poisson and backward-Euler Helmholtz
/// problems: FFT in the periodic z direction, one real tridiagonal solve per
/// mode in r, Dirichlet-0 at r = rmax, parity closure at the axis. Reusable
/// across calls; per-mode solves are exact for the discrete operator.
class PoissonSolver {
public:
    explicit PoissonSolver(GridPtr grid);

    /// Solves (op + d_zz) f = rhs. rhs parity must match the operator's.
    ScalarField solve(const ScalarField& rhs, const RadialOperator& op) const;

    /// Solves (I - dt (op + d_zz)) f = rhs, the backward-Euler diffusion step.
    ScalarField solve_backward_euler(const ScalarField& rhs,
                                     const RadialOperator& op, double dt) const;

    const GridPtr& grid() const { return grid_; }

private:
    ScalarField solve_impl(const ScalarField& rhs, const RadialOperator& op,
                           bool backward_euler, double dt) const;

    GridPtr grid_;
    Eigen::ArrayXd lambda_;  ///< symbols of -d_zz per z mode
};

/// Stream function phi (odd) with (Delta - 1/r^2) phi = -omega_theta.
ScalarField solve_stream(const PoissonSolver& solver,
                         const ScalarField& omega_theta);

/// (u_r, u_z) = (-d_z phi, d_r phi + phi/r) with phi from solve_stream:
/// the velocity uniquely determined by omega_theta.
std::pair<ScalarField, ScalarField> biot_savart(const PoissonSolver& solver,
                                                const ScalarField& omega_theta);

}  // namespace swirlmhd
