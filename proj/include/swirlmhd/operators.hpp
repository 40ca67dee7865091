#pragma once

#include <utility>

#include "swirlmhd/grid.hpp"

namespace swirlmhd {

/// Central radial derivative; the result's parity is flipped. Diagnostic
/// gradients of fields that merely decay (rather than vanish) at rmax should
/// pass OuterExtension::Replicate so the truncation row does not fabricate an
/// O(1/h) derivative.
ScalarField d_r(const ScalarField& f,
                OuterExtension outer = OuterExtension::Dirichlet0);

/// Central axial derivative; parity is preserved.
ScalarField d_z(const ScalarField& f);

/// (Delta - 1/r^2) f for swirl components. Requires Odd parity: the operator
/// is singular on even fields at the axis.
ScalarField laplacian_swirl(const ScalarField& f);

/// (Delta + (a/r) d_r) f for the reformulated variables; a = 2 for B and eta,
/// a = 2(1-epsilon) for V. Requires Even parity.
ScalarField laplacian_reform(const ScalarField& f, double a = 2.0);

/// +(u_r d_r + u_z d_z) f, the advection term as it appears on the left of
/// the evolution equations. Monotone second-order upwind (minmod-limited
/// MUSCL reconstruction); at the global extrema of f the update it induces
/// can only shrink them.
ScalarField advect(const ScalarField& u_r, const ScalarField& u_z,
                   const ScalarField& f);

/// (-d_z g, d_r g + g/r): the (r,z) components of curl(g e_theta) for an odd
/// swirl profile g. Gives (J_r, J_z) from b_theta and (omega_r, omega_z)
/// from u_theta. First component Odd, second Even.
std::pair<ScalarField, ScalarField> curl_from_swirl(const ScalarField& g);

/// || d_r(r u_r) + d_z(r u_z) ||_{L^2} on the plain dr*dz grid measure,
/// diagnosing discrete violation of the weighted divergence constraint.
double div_weighted_residual(const ScalarField& u_r, const ScalarField& u_z);

/// Max over cells of (|grad u_r| + |grad u_z| + |u_r/r|) / |grad u_tilde|
/// where |grad u_tilde|^2 carries all four plane derivatives plus (u_r/r)^2.
/// Bounded by sqrt(3) cell-wise; 0 for the zero field.
double pointwise_gradient_bound_check(const ScalarField& u_r,
                                      const ScalarField& u_z);

/// Pointwise |grad u_tilde| of the meridional velocity (the full Cartesian
/// gradient magnitude: four plane derivatives plus u_r/r), with replicate
/// outer edges. Feeds the gradient-norm monitors.
ScalarField velocity_gradient_magnitude(const ScalarField& u_r,
                                        const ScalarField& u_z);

}  // namespace swirlmhd
