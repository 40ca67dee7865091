#pragma once

#include <vector>

#include "swirlmhd/grid.hpp"

namespace swirlmhd {

/// A real field on the periodic Cartesian box [-L/2, L/2)^3 sampled at n^3
/// points (n a power of two), with 1 (scalar) or 3 (vector) components.
/// Point (i,j,k) sits at x_c = -L/2 + i_c L/n; linear index i + n(j + n k).
struct CartesianField3D {
    int n = 0;
    double L = 0.0;
    std::vector<Eigen::ArrayXd> components;

    static CartesianField3D scalar(int n, double L);
    static CartesianField3D vector(int n, double L);
    int ncomp() const { return static_cast<int>(components.size()); }
    std::ptrdiff_t size() const {
        return static_cast<std::ptrdiff_t>(n) * n * n;
    }
};

/// Dyadic profiles built from one smooth low-pass cut chi: identically 1 for
/// tau <= 3/4, an exponential-transition fall on ]3/4, 4/3[, 0 beyond, and
/// phi(tau) = chi(tau/2) - chi(tau), supported in [3/4, 8/3]. The telescoping
/// definition makes chi(2^-j tau) + sum_{j' >= j} phi(2^-j' tau) collapse
/// exactly, so partition-of-unity identities hold to roundoff.
struct DyadicPartition {
    int j_min;
    int j_max;

    explicit DyadicPartition(int n);  // j_min = -2, j_max = log2(n/8)

    static double chi(double tau);
    static double phi(double tau);
};

/// Frequencies are measured on the integer lattice (unit 2 pi / L). tau = |k|.

/// Spectral restriction to the dyadic annulus of block j. Throws
/// std::domain_error outside the resolvable band.
CartesianField3D dyadic_block(const CartesianField3D& u, int j);

/// Low-pass complement at the bottom of the band: multiplier chi(2^-j_min |k|).
CartesianField3D low_pass(const CartesianField3D& u);

/// L^p norm over the box of the pointwise component magnitude.
double box_lp_norm(const CartesianField3D& u, double p);

/// Truncated Besov norm: l^{r_sum} over j in [j_min, j_max] of
/// 2^{js} ||Delta_j u||_{L^p}.
double besov_norm(const CartesianField3D& u, double s, double p, double r_sum);

/// Spectral Leray projection (Id - xi xi^T/|xi|^2) per mode; the k = 0 mode
/// is left untouched. Requires a vector field.
CartesianField3D leray_project(const CartesianField3D& u);

/// || div u ||_{L^2} evaluated spectrally (exact for the trigonometric
/// interpolant). Requires a vector field.
double spectral_divergence_l2(const CartesianField3D& u);

/// Heat semigroup e^{t Delta}: multiplier e^{-t |xi|^2} with physical
/// frequencies xi = (2 pi / L) k. Throws std::domain_error for t < 0.
CartesianField3D heat_semigroup(const CartesianField3D& u, double t);

struct BernsteinReport {
    int j;                 ///< detected dyadic block of the spectral support
    double forward_ratio;  ///< ||D^N u||_{L^q} / (lam^{N+3(1/p-1/q)} ||u||_{L^p})
    double reverse_ratio;  ///< lam^N ||u||_{L^p} / ||D^N u||_{L^p}
};

/// Verifies that u is spectrally supported in a single dyadic annulus and
/// returns both Bernstein ratios, with lam = (2 pi / L) 2^j and D^N the sup
/// over |alpha| = N of the spectral derivative d^alpha. Non-localized input
/// throws std::invalid_argument.
BernsteinReport bernstein_check(const CartesianField3D& u, double p, double q,
                                int n_deriv);

/// Residual of the mild-solution identity on block j for the heat flow with
/// the sampled forcing (piecewise linear in time between uniform samples over
/// [0, t]): compares the exactly integrated spectral solution against
/// e^{t Delta} Delta_j u0 minus the trapezoidal Duhamel integral of the
/// Leray-projected forcing. Returns the box L^inf norm of the difference.
/// Throws std::domain_error on mismatched sampling.
double duhamel_residual(const CartesianField3D& u0,
                        const std::vector<CartesianField3D>& forcing, double t,
                        int j);

/// Samples the Cartesian components of f_r e_r + f_theta e_theta + f_z e_z
/// on the box by bilinear interpolation in (r, z). The cylinder's z period is
/// centered in the box; the data must be compactly supported inside it, and
/// L >= 2 max(rmax, lz) is required (domain error otherwise).
CartesianField3D embed_axisymmetric(const ScalarField& f_r,
                                    const ScalarField& f_theta,
                                    const ScalarField& f_z, int n, double L);

/// Same embedding for a single axisymmetric scalar.
CartesianField3D embed_scalar(const ScalarField& f, int n, double L);

}  // namespace swirlmhd
