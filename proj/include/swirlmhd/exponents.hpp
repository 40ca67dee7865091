#pragma once

#include <utility>

namespace swirlmhd {

/// Admissible interval for the integrability index p: ]1, 63/61].
inline constexpr double kPMin = 1.0;
inline constexpr double kPMax = 63.0 / 61.0;

/// All exponents derived from a single admissible p.
struct ExponentSet {
    double p;        ///< integrability index in ]1, 63/61]
    double epsilon;  ///< weight exponent of V = u_theta / r^(1-epsilon), in [1/7, 2/7[
    double a_frak;   ///< radial-norm index generator, in ]1/12, 168/1525]
    double s;        ///< 6p/(3+p), the L^s index for the B energy, in ]3/2, 63/41]
    double q1;       ///< 5p/(3-p)
    double q2;       ///< 5p/(3(2p-1)), the Hoelder conjugate of q1
};

/// Initial-data norms feeding the smallness conditions.
struct InitialNormBundle {
    double swirl_sup;     ///< ||r u_theta(0)||_Linf
    double swirl_a_norm;  ///< ||r u_theta(0)||_L^{a_frak/(p-1)}
    double B_l32;         ///< ||B(0)||_L^{3/2}
    double B_l3p2;        ///< ||B(0)||_L^{3p/2}
    double M0;            ///< compute_M0 of the same data
};

/// Outcome of the two smallness conditions, with the evaluated bounds.
struct SmallnessReport {
    double lhs_swirl;     ///< ||r u_theta(0)||_Linf
    double rhs_swirl;     ///< c0 * min of the two swirl bounds
    double lhs_B;         ///< ||B(0)||_L^{3/2}
    double rhs_B;         ///< c0 * the B bound
    double c0;            ///< universal constant used
    bool passed;          ///< both conditions hold
    std::pair<double, double> margins;  ///< (rhs/lhs) for swirl and B conditions
};

/// epsilon(p) = 2/7 - 60(p-1)/(7(3-p)). Throws std::domain_error outside ]1, 63/61].
double epsilon_of_p(double p);

/// a_frak(p) = (3-p)(23p-21)/(12(3p+1)). Throws std::domain_error outside ]1, 63/61].
double a_frak_of_p(double p);

/// Interpolation exponent lambda = (p-1)/2 + 3p/(2q) of the u_r/r control.
/// q may be +infinity. Throws std::domain_error for p outside ]1,3[ or q <= 3p/(3-p).
double lambda_interp(double p, double q);

/// All derived exponents for one p.
ExponentSet exponents_for(double p);

/// Index of the radial-weight norm in the smallness condition, a_frak(p)/(p-1).
double radial_norm_index(double p);

/// Variant of the radial-norm index scaled by (25p-21)/(23p-21); see the
/// exponents verification suite, which reports both readings.
double radial_norm_index_alt(double p);

/// M0 = ||eta0||_p^p + ||V0||_{7/4}^{7/4} + ||B0||_s^s with s = 6p/(3+p).
/// Inputs are the norms themselves; throws std::domain_error on negatives.
double compute_M0(double eta0_norm_p, double V0_norm, double B0_norm_s, double p);

/// N0 = ||omega0||_{3/2}^{3/2} + ||J0||_{3/2}^3
///    + ||r u_theta(0)||_Linf^{3(39p-37)/(16(2p-1))} (2 M0)^{-3(p+2)/(4(2p-1))}.
/// Throws std::domain_error if M0 = 0 while swirl_sup > 0, or on negative input.
double compute_N0(double omega0_norm, double J0_norm, double swirl_sup, double M0,
                  double p);

/// Evaluates both smallness conditions of the global-existence theorem.
/// Zero denominators (all-zero data under a negative power) make the
/// corresponding bound +infinity and the condition passes.
SmallnessReport check_smallness(double p, double c0, const InitialNormBundle& norms);

}  // namespace swirlmhd
