#include "swirlmhd/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace swirlmhd {

Grid::Grid(int nr_, int nz_, double rmax_, double lz_)
    : nr(nr_), nz(nz_), rmax(rmax_), lz(lz_) {
    if (nr < 8 || nz < 8) {
        throw std::domain_error("Grid: Nr and Nz must be at least 8");
    }
    if (!(rmax > 0.0) || !(lz > 0.0)) {
        throw std::domain_error("Grid: Rmax and Lz must be positive");
    }
    dr = rmax / nr;
    dz = lz / nz;
    r_centers = Eigen::ArrayXd::LinSpaced(nr, 0.5 * dr, (nr - 0.5) * dr);
    z_centers = Eigen::ArrayXd::LinSpaced(nz, 0.5 * dz, (nz - 0.5) * dz);
}

GridPtr make_grid(int nr, int nz, double rmax, double lz) {
    return std::make_shared<const Grid>(nr, nz, rmax, lz);
}

ScalarField sample_field(const GridPtr& grid, Parity parity,
                         const std::function<double(double, double)>& f) {
    ScalarField out(grid, parity);
    for (int j = 0; j < grid->nz; ++j) {
        for (int i = 0; i < grid->nr; ++i) {
            out(i, j) = f(grid->r_centers[i], grid->z_centers[j]);
        }
    }
    return out;
}

PaddedField fill_ghosts(const ScalarField& f, int width, OuterExtension outer) {
    const Grid& g = *f.grid;
    const int w = width;
    PaddedField out;
    out.width = w;
    out.nr = g.nr;
    out.nz = g.nz;
    out.data = Array2d::Zero(g.nr + 2 * w, g.nz + 2 * w);
    out.data.block(w, w, g.nr, g.nz) = f.values;

    const double axis_sign = f.parity == Parity::Even ? 1.0 : -1.0;
    // Axis: r_{-1-k} = -r_k, so ghost(-1-k) = sign * f(k).
    for (int k = 0; k < w; ++k) {
        for (int j = 0; j < g.nz; ++j) {
            out.data(w - 1 - k, w + j) = axis_sign * f.values(k, j);
        }
    }
    // Outer boundary at the face r = rmax.
    for (int k = 0; k < w; ++k) {
        for (int j = 0; j < g.nz; ++j) {
            const double v = f.values(g.nr - 1 - k, j);
            out.data(w + g.nr + k, w + j) =
                outer == OuterExtension::Dirichlet0 ? -v : f.values(g.nr - 1, j);
        }
    }
    // Periodic z, including the ghost rows just filled.
    for (int k = 0; k < w; ++k) {
        out.data.col(w - 1 - k) = out.data.col(w + g.nz - 1 - k);
        out.data.col(w + g.nz + k) = out.data.col(w + k);
    }
    return out;
}

double lp_norm(const ScalarField& f, double p, double weight_power) {
    const Grid& g = *f.grid;
    if (!(p > 0.0)) {
        throw std::domain_error("lp_norm: p must be positive (or infinity)");
    }
    Eigen::ArrayXd rw;
    if (weight_power == 0.0) {
        rw = Eigen::ArrayXd::Ones(g.nr);
    } else {
        rw = g.r_centers.pow(weight_power);
    }
    const Array2d weighted = f.values.abs().colwise() * rw;
    if (std::isinf(p)) {
        return weighted.maxCoeff();
    }
    const Eigen::ArrayXd cell_w = 2.0 * EIGEN_PI * g.dr * g.dz * g.r_centers;
    const double total = (weighted.pow(p).colwise() * cell_w).sum();
    return std::pow(total, 1.0 / p);
}

ScalarField abs_power(const ScalarField& f, double alpha) {
    ScalarField out(f.grid, Parity::Even);
    out.values = f.values.abs().max(1e-30).pow(alpha);
    return out;
}

double grad_power_norm(const ScalarField& f, double alpha) {
    if (!(alpha > 0.0)) {
        throw std::domain_error("grad_power_norm: alpha must be positive");
    }
    const Grid& g = *f.grid;
    const ScalarField fp = abs_power(f, alpha);
    const PaddedField pad = fill_ghosts(fp, 1, OuterExtension::Replicate);
    double total = 0.0;
    for (int j = 0; j < g.nz; ++j) {
        for (int i = 0; i < g.nr; ++i) {
            const double gr = (pad(i + 1, j) - pad(i - 1, j)) / (2.0 * g.dr);
            const double gz = (pad(i, j + 1) - pad(i, j - 1)) / (2.0 * g.dz);
            total += (gr * gr + gz * gz) * g.cell_weight(i);
        }
    }
    return std::sqrt(total);
}

ScalarField multiply_by_r(const ScalarField& f) {
    ScalarField out(f.grid, f.parity == Parity::Even ? Parity::Odd : Parity::Even);
    out.values = f.values.colwise() * f.grid->r_centers;
    return out;
}

ScalarField divide_by_r(const ScalarField& f) {
    ScalarField out(f.grid, f.parity == Parity::Even ? Parity::Odd : Parity::Even);
    out.values = f.values.colwise() / f.grid->r_centers;
    return out;
}

ScalarField scale_by_r_power(const ScalarField& f, double a, Parity result_parity) {
    ScalarField out(f.grid, result_parity);
    out.values = f.values.colwise() * f.grid->r_centers.pow(a).eval();
    return out;
}

bool all_finite(const ScalarField& f) {
    return f.values.isFinite().all();
}

}  // namespace swirlmhd
