#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>

namespace swirlmhd {

/// 2D field storage, radial index i (fast, column-major) by axial index j.
using Array2d = Eigen::ArrayXXd;

/// Cell-centered cylindrical (r,z) grid: r_i = (i+1/2) dr on ]0, rmax[,
/// z_j = (j+1/2) dz on a z-periodic box of period lz. No point lies on the
/// axis, so 1/r and 1/r^2 coefficients are always finite.
struct Grid {
    int nr;
    int nz;
    double rmax;
    double lz;
    double dr;
    double dz;
    Eigen::ArrayXd r_centers;
    Eigen::ArrayXd z_centers;

    Grid(int nr_, int nz_, double rmax_, double lz_);

    /// Quadrature weight of every cell in radial row i: 2*pi*r_i*dr*dz.
    double cell_weight(int i) const { return 2.0 * EIGEN_PI * r_centers[i] * dr * dz; }
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(int nr, int nz, double rmax, double lz);

/// Behavior of a field under the reflection r -> -r, used to fill axis ghosts.
enum class Parity { Even, Odd };

/// A scalar on the (r,z) grid with declared axis parity. Outer radial
/// boundary is homogeneous Dirichlet at r = rmax, z is periodic.
struct ScalarField {
    GridPtr grid;
    Parity parity = Parity::Even;
    Array2d values;

    ScalarField() = default;
    ScalarField(GridPtr g, Parity par)
        : grid(std::move(g)), parity(par),
          values(Array2d::Zero(grid->nr, grid->nz)) {}

    double operator()(int i, int j) const { return values(i, j); }
    double& operator()(int i, int j) { return values(i, j); }
};

/// Samples an analytic profile f(r,z) at the cell centers.
ScalarField sample_field(const GridPtr& grid, Parity parity,
                         const std::function<double(double, double)>& f);

/// How ghost cells beyond r = rmax are filled.
enum class OuterExtension {
    Dirichlet0,  ///< odd reflection through the boundary face (value 0 at rmax)
    Replicate,   ///< copy of the last interior cell
};

/// Field values extended by `width` ghost layers on every side: parity
/// reflection at the axis, the chosen extension at r = rmax, periodic wrap
/// in z. Ghost filling is a pure function of the interior values.
struct PaddedField {
    int width;
    int nr;
    int nz;
    Array2d data;  ///< (nr + 2 width) x (nz + 2 width)

    double operator()(int i, int j) const { return data(i + width, j + width); }
};

PaddedField fill_ghosts(const ScalarField& f, int width = 1,
                        OuterExtension outer = OuterExtension::Dirichlet0);

/// || r^weight_power f ||_{L^p} over R^3 with the cylindrical measure
/// 2 pi r dr dz; midpoint quadrature, grid max for p = infinity.
double lp_norm(const ScalarField& f, double p, double weight_power = 0.0);

/// || grad |f|^alpha ||_{L^2}, central differences of |f|^alpha in (r,z).
double grad_power_norm(const ScalarField& f, double alpha);

/// |f|^alpha as a field (always Even), with the |f| >= 1e-30 floor applied
/// before the fractional power.
ScalarField abs_power(const ScalarField& f, double alpha);

/// r f, f/r and r^a f; multiplying by an odd power of r flips parity.
ScalarField multiply_by_r(const ScalarField& f);
ScalarField divide_by_r(const ScalarField& f);
ScalarField scale_by_r_power(const ScalarField& f, double a, Parity result_parity);

/// True when every entry is finite.
bool all_finite(const ScalarField& f);

}  // namespace swirlmhd
