#include "swirlmhd/exponents.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace swirlmhd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_admissible_p(double p) {
    if (!(p > kPMin) || !(p <= kPMax)) {
        throw std::domain_error("p = " + std::to_string(p) +
                                " outside the admissible interval ]1, 63/61]");
    }
}

// x^y with the convention 0^negative = +inf (empty data under a negative power).
double pow_or_inf(double x, double y) {
    if (x == 0.0 && y < 0.0) return kInf;
    return std::pow(x, y);
}

}  // namespace

double epsilon_of_p(double p) {
    require_admissible_p(p);
    return 2.0 / 7.0 - 60.0 * (p - 1.0) / (7.0 * (3.0 - p));
}

double a_frak_of_p(double p) {
    require_admissible_p(p);
    return (3.0 - p) * (23.0 * p - 21.0) / (12.0 * (3.0 * p + 1.0));
}

double lambda_interp(double p, double q) {
    if (!(p > 1.0) || !(p < 3.0)) {
        throw std::domain_error("lambda_interp: p = " + std::to_string(p) +
                                " outside ]1, 3[");
    }
    const double q_min = 3.0 * p / (3.0 - p);
    if (!(q > q_min)) {
        throw std::domain_error("lambda_interp: q = " + std::to_string(q) +
                                " not above 3p/(3-p) = " + std::to_string(q_min));
    }
    if (std::isinf(q)) return (p - 1.0) / 2.0;
    return (p - 1.0) / 2.0 + 3.0 * p / (2.0 * q);
}

ExponentSet exponents_for(double p) {
    require_admissible_p(p);
    ExponentSet e;
    e.p = p;
    e.epsilon = epsilon_of_p(p);
    e.a_frak = a_frak_of_p(p);
    e.s = 6.0 * p / (3.0 + p);
    e.q1 = 5.0 * p / (3.0 - p);
    e.q2 = 5.0 * p / (3.0 * (2.0 * p - 1.0));
    return e;
}

double radial_norm_index(double p) {
    return a_frak_of_p(p) / (p - 1.0);
}

double radial_norm_index_alt(double p) {
    return radial_norm_index(p) * (25.0 * p - 21.0) / (23.0 * p - 21.0);
}

double compute_M0(double eta0_norm_p, double V0_norm, double B0_norm_s, double p) {
    require_admissible_p(p);
    if (eta0_norm_p < 0.0 || V0_norm < 0.0 || B0_norm_s < 0.0) {
        throw std::domain_error("compute_M0: negative norm input");
    }
    const double s = 6.0 * p / (3.0 + p);
    return std::pow(eta0_norm_p, p) + std::pow(V0_norm, 7.0 / 4.0) +
           std::pow(B0_norm_s, s);
}

double compute_N0(double omega0_norm, double J0_norm, double swirl_sup, double M0,
                  double p) {
    require_admissible_p(p);
    if (omega0_norm < 0.0 || J0_norm < 0.0 || swirl_sup < 0.0 || M0 < 0.0) {
        throw std::domain_error("compute_N0: negative input");
    }
    if (M0 == 0.0 && swirl_sup > 0.0) {
        throw std::domain_error(
            "compute_N0: M0 = 0 with nonzero swirl puts a negative power on zero");
    }
    double swirl_term = 0.0;
    if (swirl_sup > 0.0) {
        const double e1 = 3.0 * (39.0 * p - 37.0) / (16.0 * (2.0 * p - 1.0));
        const double e2 = -3.0 * (p + 2.0) / (4.0 * (2.0 * p - 1.0));
        swirl_term = std::pow(swirl_sup, e1) * std::pow(2.0 * M0, e2);
    }
    return std::pow(omega0_norm, 1.5) + std::pow(J0_norm, 3.0) + swirl_term;
}

SmallnessReport check_smallness(double p, double c0, const InitialNormBundle& norms) {
    require_admissible_p(p);
    if (!(c0 > 0.0)) {
        throw std::domain_error("check_smallness: c0 must be positive");
    }
    if (norms.swirl_sup < 0.0 || norms.swirl_a_norm < 0.0 || norms.B_l32 < 0.0 ||
        norms.B_l3p2 < 0.0 || norms.M0 < 0.0) {
        throw std::domain_error("check_smallness: negative norm input");
    }

    const double two_M0 = 2.0 * norms.M0;
    const double bound1 = pow_or_inf(p - 1.0, 20.0 * p / (7.0 * (3.0 - p))) *
                          pow_or_inf(two_M0, -4.0 * (p + 2.0) / (7.0 * (3.0 - p)));
    const double bound2 = std::pow(p - 1.0, 8.0) *
                          pow_or_inf(two_M0, -2.0 * (p - 1.0) / p) *
                          pow_or_inf(norms.swirl_a_norm, -(23.0 * p - 21.0) / (2.0 * p));
    const double bound_B = std::pow(p - 1.0, 8.0) *
                           pow_or_inf(two_M0, -2.0 * (p - 1.0) / p) *
                           pow_or_inf(norms.B_l3p2, -3.0);

    SmallnessReport rep;
    rep.c0 = c0;
    rep.lhs_swirl = norms.swirl_sup;
    rep.rhs_swirl = c0 * std::min(bound1, bound2);
    rep.lhs_B = norms.B_l32;
    rep.rhs_B = c0 * bound_B;
    // A zero left-hand side satisfies its condition vacuously; this also
    // covers 0 * inf = NaN bounds arising from degenerate norm bundles.
    if (rep.lhs_swirl == 0.0 && std::isnan(rep.rhs_swirl)) rep.rhs_swirl = kInf;
    if (rep.lhs_B == 0.0 && std::isnan(rep.rhs_B)) rep.rhs_B = kInf;
    const bool swirl_ok = rep.lhs_swirl == 0.0 || rep.lhs_swirl <= rep.rhs_swirl;
    const bool b_ok = rep.lhs_B == 0.0 || rep.lhs_B <= rep.rhs_B;
    rep.passed = swirl_ok && b_ok;
    rep.margins.first = rep.lhs_swirl == 0.0 ? kInf : rep.rhs_swirl / rep.lhs_swirl;
    rep.margins.second = rep.lhs_B == 0.0 ? kInf : rep.rhs_B / rep.lhs_B;
    return rep;
}

}  // namespace swirlmhd
