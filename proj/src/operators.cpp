#include "swirlmhd/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace swirlmhd {

namespace {

void require_parity(const ScalarField& f, Parity p, const char* op) {
    if (f.parity != p) {
        throw std::invalid_argument(std::string(op) + ": field must be " +
                                    (p == Parity::Odd ? "odd" : "even") +
                                    " across the axis");
    }
}

void require_same_grid(const ScalarField& a, const ScalarField& b, const char* op) {
    if (a.grid.get() != b.grid.get()) {
        throw std::invalid_argument(std::string(op) + ": fields on different grids");
    }
}

double minmod(double a, double b) {
    if (a > 0.0 && b > 0.0) return std::min(a, b);
    if (a < 0.0 && b < 0.0) return std::max(a, b);
    return 0.0;
}

}  // namespace

ScalarField d_r(const ScalarField& f, OuterExtension outer) {
    const Grid& g = *f.grid;
    const PaddedField p = fill_ghosts(f, 1, outer);
    ScalarField out(f.grid, f.parity == Parity::Even ? Parity::Odd : Parity::Even);
    const double inv2dr = 1.0 / (2.0 * g.dr);
    for (int j = 0; j < g.nz; ++j)
        for (int i = 0; i < g.nr; ++i)
            out(i, j) = (p(i + 1, j) - p(i - 1, j)) * inv2dr;
    return out;
}

ScalarField d_z(const ScalarField& f) {
    const Grid& g = *f.grid;
    const PaddedField p = fill_ghosts(f, 1);
    ScalarField out(f.grid, f.parity);
    const double inv2dz = 1.0 / (2.0 * g.dz);
    for (int j = 0; j < g.nz; ++j)
        for (int i = 0; i < g.nr; ++i)
            out(i, j) = (p(i, j + 1) - p(i, j - 1)) * inv2dz;
    return out;
}

ScalarField laplacian_swirl(const ScalarField& f) {
    require_parity(f, Parity::Odd, "laplacian_swirl");
    const Grid& g = *f.grid;
    const PaddedField p = fill_ghosts(f, 1);
    ScalarField out(f.grid, Parity::Odd);
    const double idr2 = 1.0 / (g.dr * g.dr);
    const double idz2 = 1.0 / (g.dz * g.dz);
    for (int j = 0; j < g.nz; ++j) {
        for (int i = 0; i < g.nr; ++i) {
            const double r = g.r_centers[i];
            const double frr = (p(i + 1, j) - 2.0 * p(i, j) + p(i - 1, j)) * idr2;
            const double fr = (p(i + 1, j) - p(i - 1, j)) / (2.0 * g.dr);
            const double fzz = (p(i, j + 1) - 2.0 * p(i, j) + p(i, j - 1)) * idz2;
            out(i, j) = frr + fr / r + fzz - p(i, j) / (r * r);
        }
    }
    return out;
}

ScalarField laplacian_reform(const ScalarField& f, double a) {
    require_parity(f, Parity::Even, "laplacian_reform");
    const Grid& g = *f.grid;
    const PaddedField p = fill_ghosts(f, 1);
    ScalarField out(f.grid, Parity::Even);
    const double idr2 = 1.0 / (g.dr * g.dr);
    const double idz2 = 1.0 / (g.dz * g.dz);
    for (int j = 0; j < g.nz; ++j) {
        for (int i = 0; i < g.nr; ++i) {
            const double r = g.r_centers[i];
            const double frr = (p(i + 1, j) - 2.0 * p(i, j) + p(i - 1, j)) * idr2;
            const double fr = (p(i + 1, j) - p(i - 1, j)) / (2.0 * g.dr);
            const double fzz = (p(i, j + 1) - 2.0 * p(i, j) + p(i, j - 1)) * idz2;
            out(i, j) = frr + (1.0 + a) * fr / r + fzz;
        }
    }
    return out;
}

ScalarField advect(const ScalarField& u_r, const ScalarField& u_z,
                   const ScalarField& f) {
    require_same_grid(u_r, f, "advect");
    require_same_grid(u_z, f, "advect");
    const Grid& g = *f.grid;
    const PaddedField p = fill_ghosts(f, 2);
    ScalarField out(f.grid, f.parity);

    auto slope_r = [&](int i, int j) {
        return minmod((p(i + 1, j) - p(i, j)) / g.dr, (p(i, j) - p(i - 1, j)) / g.dr);
    };
    auto slope_z = [&](int i, int j) {
        return minmod((p(i, j + 1) - p(i, j)) / g.dz, (p(i, j) - p(i, j - 1)) / g.dz);
    };

    for (int j = 0; j < g.nz; ++j) {
        for (int i = 0; i < g.nr; ++i) {
            const double ur = u_r(i, j);
            const double uz = u_z(i, j);
            double term = 0.0;

            if (ur > 0.0) {
                const double hi = p(i, j) + 0.5 * g.dr * slope_r(i, j);
                const double lo = p(i - 1, j) + 0.5 * g.dr * slope_r(i - 1, j);
                term += ur * (hi - lo) / g.dr;
            } else if (ur < 0.0) {
                const double hi = p(i + 1, j) - 0.5 * g.dr * slope_r(i + 1, j);
                const double lo = p(i, j) - 0.5 * g.dr * slope_r(i, j);
                term += ur * (hi - lo) / g.dr;
            }

            if (uz > 0.0) {
                const double hi = p(i, j) + 0.5 * g.dz * slope_z(i, j);
                const double lo = p(i, j - 1) + 0.5 * g.dz * slope_z(i, j - 1);
                term += uz * (hi - lo) / g.dz;
            } else if (uz < 0.0) {
                const double hi = p(i, j + 1) - 0.5 * g.dz * slope_z(i, j + 1);
                const double lo = p(i, j) - 0.5 * g.dz * slope_z(i, j);
                term += uz * (hi - lo) / g.dz;
            }

            out(i, j) = term;
        }
    }
    return out;
}

std::pair<ScalarField, ScalarField> curl_from_swirl(const ScalarField& g) {
    require_parity(g, Parity::Odd, "curl_from_swirl");
    ScalarField comp_r = d_z(g);
    comp_r.values = -comp_r.values;
    ScalarField comp_z = d_r(g);
    comp_z.values += g.values.colwise() / g.grid->r_centers;
    return {std::move(comp_r), std::move(comp_z)};
}

double div_weighted_residual(const ScalarField& u_r, const ScalarField& u_z) {
    require_same_grid(u_r, u_z, "div_weighted_residual");
    const Grid& g = *u_r.grid;
    const ScalarField div_field = [&] {
        ScalarField d = d_r(multiply_by_r(u_r));
        d.values += d_z(multiply_by_r(u_z)).values;
        return d;
    }();
    return std::sqrt(div_field.values.square().sum() * g.dr * g.dz);
}

ScalarField velocity_gradient_magnitude(const ScalarField& u_r,
                                        const ScalarField& u_z) {
    require_same_grid(u_r, u_z, "velocity_gradient_magnitude");
    const Grid& g = *u_r.grid;
    const ScalarField drr = d_r(u_r, OuterExtension::Replicate);
    const ScalarField dzr = d_z(u_r);
    const ScalarField drz = d_r(u_z, OuterExtension::Replicate);
    const ScalarField dzz = d_z(u_z);
    ScalarField mag(u_r.grid, Parity::Even);
    for (int j = 0; j < g.nz; ++j) {
        for (int i = 0; i < g.nr; ++i) {
            const double uor = u_r(i, j) / g.r_centers[i];
            mag(i, j) = std::sqrt(drr(i, j) * drr(i, j) + dzr(i, j) * dzr(i, j) +
                                  drz(i, j) * drz(i, j) + dzz(i, j) * dzz(i, j) +
                                  uor * uor);
        }
    }
    return mag;
}

double pointwise_gradient_bound_check(const ScalarField& u_r,
                                      const ScalarField& u_z) {
    require_same_grid(u_r, u_z, "pointwise_gradient_bound_check");
    require_parity(u_r, Parity::Odd, "pointwise_gradient_bound_check");
    require_parity(u_z, Parity::Even, "pointwise_gradient_bound_check");
    const Grid& g = *u_r.grid;
    const ScalarField drr = d_r(u_r), dzr = d_z(u_r);
    const ScalarField drz = d_r(u_z), dzz = d_z(u_z);
    double worst = 0.0;
    for (int j = 0; j < g.nz; ++j) {
        for (int i = 0; i < g.nr; ++i) {
            const double uor = u_r(i, j) / g.r_centers[i];
            const double gr2 = drr(i, j) * drr(i, j) + dzr(i, j) * dzr(i, j);
            const double gz2 = drz(i, j) * drz(i, j) + dzz(i, j) * dzz(i, j);
            const double rhs = std::sqrt(gr2 + gz2 + uor * uor);
            if (rhs == 0.0) continue;
            const double lhs = std::sqrt(gr2) + std::sqrt(gz2) + std::fabs(uor);
            worst = std::max(worst, lhs / rhs);
        }
    }
    return worst;
}

}  // namespace swirlmhd
