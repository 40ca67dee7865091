#include "swirlmhd/elliptic.hpp"

#include <unsupported/Eigen/FFT>

#include <atomic>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "swirlmhd/operators.hpp"
#include "swirlmhd/util.hpp"

namespace swirlmhd {

namespace {

using Complex = std::complex<double>;

Eigen::FFT<double>& thread_fft() {
    thread_local Eigen::FFT<double> fft;
    return fft;
}

// Thomas algorithm with real matrix bands and complex right-hand side; the
// multipliers stay real, so conjugate-symmetric inputs produce exactly
// conjugate-symmetric outputs.
void tridiag_solve(const std::vector<double>& lower, std::vector<double> diag,
                   const std::vector<double>& upper, Complex* rhs, int n) {
    for (int i = 1; i < n; ++i) {
        if (std::fabs(diag[i - 1]) < 1e-300) {
            throw std::runtime_error("PoissonSolver: singular radial mode");
        }
        const double w = lower[i] / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    if (std::fabs(diag[n - 1]) < 1e-300) {
        throw std::runtime_error("PoissonSolver: singular radial mode");
    }
    rhs[n - 1] /= diag[n - 1];
    for (int i = n - 2; i >= 0; --i) {
        rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
    }
}

}  // namespace

PoissonSolver::PoissonSolver(GridPtr grid) : grid_(std::move(grid)) {
    const int nz = grid_->nz;
    lambda_.resize(nz);
    for (int m = 0; m < nz; ++m) {
        const double c = std::cos(2.0 * EIGEN_PI * m / nz);
        lambda_[m] = (2.0 - 2.0 * c) / (grid_->dz * grid_->dz);
    }
}

ScalarField PoissonSolver::solve(const ScalarField& rhs,
                                 const RadialOperator& op) const {
    return solve_impl(rhs, op, false, 0.0);
}

ScalarField PoissonSolver::solve_backward_euler(const ScalarField& rhs,
                                                const RadialOperator& op,
                                                double dt) const {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("solve_backward_euler: dt must be positive");
    }
    return solve_impl(rhs, op, true, dt);
}

ScalarField PoissonSolver::solve_impl(const ScalarField& rhs,
                                      const RadialOperator& op,
                                      bool backward_euler, double dt) const {
    if (rhs.grid.get() != grid_.get()) {
        throw std::invalid_argument("PoissonSolver: rhs lives on a different grid");
    }
    if (rhs.parity != op.parity) {
        throw std::invalid_argument("PoissonSolver: rhs parity does not match the operator");
    }
    if (!all_finite(rhs)) {
        throw std::invalid_argument("PoissonSolver: non-finite right-hand side");
    }

    const Grid& g = *grid_;
    const int nr = g.nr, nz = g.nz;
    const double idr2 = 1.0 / (g.dr * g.dr);
    const double axis_sign = op.parity == Parity::Even ? 1.0 : -1.0;

    // Radial bands of L = d_rr + (c1/r) d_r + c2/r^2 with ghost closures
    // folded into the diagonal: parity at the axis, Dirichlet-0 at rmax.
    std::vector<double> lower(nr), upper(nr), base_diag(nr);
    for (int i = 0; i < nr; ++i) {
        const double r = g.r_centers[i];
        lower[i] = idr2 - op.c1 / (2.0 * r * g.dr);
        upper[i] = idr2 + op.c1 / (2.0 * r * g.dr);
        base_diag[i] = -2.0 * idr2 + op.c2 / (r * r);
    }
    base_diag[0] += axis_sign * lower[0];
    base_diag[nr - 1] -= upper[nr - 1];

    // Forward FFT of every radial row over z.
    Eigen::ArrayXXcd spec(nr, nz);
    parallel_for(nr, [&](int begin, int end) {
        std::vector<double> line(nz);
        std::vector<Complex> out(nz);
        for (int i = begin; i < end; ++i) {
            for (int j = 0; j < nz; ++j) line[j] = rhs(i, j);
            thread_fft().fwd(out.data(), line.data(), nz);
            for (int j = 0; j < nz; ++j) spec(i, j) = out[j];
        }
    });

    // Per-mode tridiagonal solve in r. Exceptions may not cross the worker
    // boundary, so singular modes are flagged and rethrown after the join.
    std::atomic<bool> singular{false};
    parallel_for(nz, [&](int begin, int end) {
        std::vector<double> lo(nr), di(nr), up(nr);
        std::vector<Complex> col(nr);
        for (int m = begin; m < end && !singular.load(); ++m) {
            if (backward_euler) {
                for (int i = 0; i < nr; ++i) {
                    lo[i] = -dt * lower[i];
                    di[i] = 1.0 - dt * (base_diag[i] - lambda_[m]);
                    up[i] = -dt * upper[i];
                }
            } else {
                for (int i = 0; i < nr; ++i) {
                    lo[i] = lower[i];
                    di[i] = base_diag[i] - lambda_[m];
                    up[i] = upper[i];
                }
            }
            for (int i = 0; i < nr; ++i) col[i] = spec(i, m);
            try {
                tridiag_solve(lo, di, up, col.data(), nr);
            } catch (const std::runtime_error&) {
                singular.store(true);
                break;
            }
            for (int i = 0; i < nr; ++i) spec(i, m) = col[i];
        }
    });
    if (singular.load()) {
        throw std::runtime_error("PoissonSolver: singular radial mode");
    }

    // Inverse FFT back to physical space; imaginary parts are roundoff.
    ScalarField out(grid_, op.parity);
    parallel_for(nr, [&](int begin, int end) {
        std::vector<Complex> line(nz), phys(nz);
        for (int i = begin; i < end; ++i) {
            for (int j = 0; j < nz; ++j) line[j] = spec(i, j);
            thread_fft().inv(phys.data(), line.data(), nz);
            for (int j = 0; j < nz; ++j) out(i, j) = phys[j].real();
        }
    });
    return out;
}

ScalarField solve_stream(const PoissonSolver& solver,
                         const ScalarField& omega_theta) {
    ScalarField rhs = omega_theta;
    rhs.values = -rhs.values;
    return solver.solve(rhs, swirl_operator());
}

std::pair<ScalarField, ScalarField> biot_savart(const PoissonSolver& solver,
                                                const ScalarField& omega_theta) {
    return curl_from_swirl(solve_stream(solver, omega_theta));
}

}  // namespace swirlmhd
