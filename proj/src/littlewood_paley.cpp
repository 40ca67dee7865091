#include "swirlmhd/littlewood_paley.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <stdexcept>

namespace swirlmhd {

namespace {

using Complex = std::complex<double>;
using SpectrumArray = Eigen::ArrayXcd;

Eigen::FFT<double>& lp_fft() {
    thread_local Eigen::FFT<double> fft;
    return fft;
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void require_box(const CartesianField3D& u) {
    if (!is_power_of_two(u.n) || u.n < 16) {
        throw std::domain_error("CartesianField3D: n must be a power of two >= 16");
    }
    if (!(u.L > 0.0) || u.components.empty()) {
        throw std::domain_error("CartesianField3D: invalid box");
    }
}

// In-place 1D transforms along each axis; scaling 1/n^3 on the inverse.
void fft3_axis(SpectrumArray& a, int n, int axis, bool inverse) {
    const std::ptrdiff_t stride =
        axis == 0 ? 1 : (axis == 1 ? n : static_cast<std::ptrdiff_t>(n) * n);
    std::vector<Complex> line(n), out(n);
    const std::ptrdiff_t n2 = static_cast<std::ptrdiff_t>(n) * n;
    for (std::ptrdiff_t outer = 0; outer < n2; ++outer) {
        // Decompose outer into the two non-transformed axes.
        std::ptrdiff_t base;
        if (axis == 0) {
            base = outer * n;
        } else if (axis == 1) {
            const std::ptrdiff_t i = outer % n, k = outer / n;
            base = i + k * n2;
        } else {
            base = outer;
        }
        for (int m = 0; m < n; ++m) line[m] = a[base + m * stride];
        if (inverse) {
            lp_fft().inv(out.data(), line.data(), n);
        } else {
            lp_fft().fwd(out.data(), line.data(), n);
        }
        for (int m = 0; m < n; ++m) a[base + m * stride] = out[m];
    }
}

SpectrumArray fft3(const Eigen::ArrayXd& phys, int n) {
    SpectrumArray a = phys.cast<Complex>();
    for (int axis = 0; axis < 3; ++axis) fft3_axis(a, n, axis, false);
    return a;
}

Eigen::ArrayXd ifft3_real(SpectrumArray a, int n) {
    for (int axis = 0; axis < 3; ++axis) fft3_axis(a, n, axis, true);
    return a.real();
}

// Integer lattice frequency of index m on an n-periodic axis.
inline int lattice_freq(int m, int n) { return m <= n / 2 ? m : m - n; }

// Applies fn(kx, ky, kz) as a spectral multiplier to every component.
template <typename Fn>
CartesianField3D apply_multiplier(const CartesianField3D& u, Fn&& fn) {
    require_box(u);
    CartesianField3D out;
    out.n = u.n;
    out.L = u.L;
    out.components.reserve(u.components.size());
    for (const auto& comp : u.components) {
        SpectrumArray spec = fft3(comp, u.n);
        std::ptrdiff_t idx = 0;
        for (int kz = 0; kz < u.n; ++kz) {
            const int fz = lattice_freq(kz, u.n);
            for (int ky = 0; ky < u.n; ++ky) {
                const int fy = lattice_freq(ky, u.n);
                for (int kx = 0; kx < u.n; ++kx, ++idx) {
                    spec[idx] *= fn(lattice_freq(kx, u.n), fy, fz);
                }
            }
        }
        out.components.push_back(ifft3_real(std::move(spec), u.n));
    }
    return out;
}

double smooth_step_exp(double t) {
    // e^{-1/t} transition: 0 at t <= 0, 1 at t >= 1, C-infinity.
    auto g = [](double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; };
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = g(t);
    return a / (a + g(1.0 - t));
}

}  // namespace

CartesianField3D CartesianField3D::scalar(int n, double L) {
    CartesianField3D f;
    f.n = n;
    f.L = L;
    f.components.assign(1, Eigen::ArrayXd::Zero(static_cast<std::ptrdiff_t>(n) * n * n));
    return f;
}

CartesianField3D CartesianField3D::vector(int n, double L) {
    CartesianField3D f;
    f.n = n;
    f.L = L;
    f.components.assign(3, Eigen::ArrayXd::Zero(static_cast<std::ptrdiff_t>(n) * n * n));
    return f;
}

DyadicPartition::DyadicPartition(int n) {
    if (!is_power_of_two(n) || n < 16) {
        throw std::domain_error("DyadicPartition: n must be a power of two >= 16");
    }
    j_min = -2;
    j_max = static_cast<int>(std::lround(std::log2(n / 8.0)));
}

double DyadicPartition::chi(double tau) {
    // Falls from 1 to 0 across ]3/4, 4/3[.
    return 1.0 - smooth_step_exp((tau - 0.75) / (4.0 / 3.0 - 0.75));
}

double DyadicPartition::phi(double tau) { return chi(0.5 * tau) - chi(tau); }

CartesianField3D dyadic_block(const CartesianField3D& u, int j) {
    const DyadicPartition part(u.n);
    if (j < part.j_min || j > part.j_max) {
        throw std::domain_error("dyadic_block: block " + std::to_string(j) +
                                " outside the resolvable band [" +
                                std::to_string(part.j_min) + ", " +
                                std::to_string(part.j_max) + "]");
    }
    const double scale = std::ldexp(1.0, -j);
    return apply_multiplier(u, [scale](int kx, int ky, int kz) {
        const double tau =
            std::sqrt(double(kx) * kx + double(ky) * ky + double(kz) * kz);
        return DyadicPartition::phi(scale * tau);
    });
}

CartesianField3D low_pass(const CartesianField3D& u) {
    const DyadicPartition part(u.n);
    const double scale = std::ldexp(1.0, -part.j_min);
    return apply_multiplier(u, [scale](int kx, int ky, int kz) {
        const double tau =
            std::sqrt(double(kx) * kx + double(ky) * ky + double(kz) * kz);
        return DyadicPartition::chi(scale * tau);
    });
}

double box_lp_norm(const CartesianField3D& u, double p) {
    require_box(u);
    Eigen::ArrayXd mag2 = u.components[0].square();
    for (int c = 1; c < u.ncomp(); ++c) mag2 += u.components[c].square();
    const Eigen::ArrayXd mag = mag2.sqrt();
    if (std::isinf(p)) return mag.maxCoeff();
    const double cell = std::pow(u.L / u.n, 3.0);
    return std::pow((mag.pow(p) * cell).sum(), 1.0 / p);
}

double besov_norm(const CartesianField3D& u, double s, double p, double r_sum) {
    if (!(p >= 1.0) || !(r_sum >= 1.0)) {
        throw std::domain_error("besov_norm: p and r must lie in [1, infinity]");
    }
    const DyadicPartition part(u.n);
    std::vector<double> terms;
    for (int j = part.j_min; j <= part.j_max; ++j) {
        terms.push_back(std::pow(2.0, j * s) *
                        box_lp_norm(dyadic_block(u, j), p));
    }
    if (std::isinf(r_sum)) {
        double worst = 0.0;
        for (double t : terms) worst = std::max(worst, t);
        return worst;
    }
    if (r_sum == 1.0) {
        double total = 0.0;
        for (double t : terms) total += t;
        return total;
    }
    double total = 0.0;
    for (double t : terms) total += std::pow(t, r_sum);
    return std::pow(total, 1.0 / r_sum);
}

CartesianField3D leray_project(const CartesianField3D& u) {
    require_box(u);
    if (u.ncomp() != 3) {
        throw std::invalid_argument("leray_project: vector field required");
    }
    CartesianField3D out;
    out.n = u.n;
    out.L = u.L;
    SpectrumArray spec[3] = {fft3(u.components[0], u.n),
                             fft3(u.components[1], u.n),
                             fft3(u.components[2], u.n)};
    std::ptrdiff_t idx = 0;
    for (int kz = 0; kz < u.n; ++kz) {
        const int fz = lattice_freq(kz, u.n);
        for (int ky = 0; ky < u.n; ++ky) {
            const int fy = lattice_freq(ky, u.n);
            for (int kx = 0; kx < u.n; ++kx, ++idx) {
                const int fx = lattice_freq(kx, u.n);
                const double k2 = double(fx) * fx + double(fy) * fy + double(fz) * fz;
                if (k2 == 0.0) continue;
                const Complex kdotv = double(fx) * spec[0][idx] +
                                      double(fy) * spec[1][idx] +
                                      double(fz) * spec[2][idx];
                spec[0][idx] -= double(fx) * kdotv / k2;
                spec[1][idx] -= double(fy) * kdotv / k2;
                spec[2][idx] -= double(fz) * kdotv / k2;
            }
        }
    }
    for (auto& s : spec) out.components.push_back(ifft3_real(std::move(s), u.n));
    return out;
}

double spectral_divergence_l2(const CartesianField3D& u) {
    require_box(u);
    if (u.ncomp() != 3) {
        throw std::invalid_argument("spectral_divergence_l2: vector field required");
    }
    SpectrumArray spec[3] = {fft3(u.components[0], u.n),
                             fft3(u.components[1], u.n),
                             fft3(u.components[2], u.n)};
    const double unit = 2.0 * EIGEN_PI / u.L;
    double sum = 0.0;
    std::ptrdiff_t idx = 0;
    for (int kz = 0; kz < u.n; ++kz) {
        const int fz = lattice_freq(kz, u.n);
        for (int ky = 0; ky < u.n; ++ky) {
            const int fy = lattice_freq(ky, u.n);
            for (int kx = 0; kx < u.n; ++kx, ++idx) {
                const int fx = lattice_freq(kx, u.n);
                const Complex div = Complex(0.0, unit) *
                                    (double(fx) * spec[0][idx] +
                                     double(fy) * spec[1][idx] +
                                     double(fz) * spec[2][idx]);
                sum += std::norm(div);
            }
        }
    }
    // Parseval: sum_x |f|^2 (L/n)^3 = (L^3 / n^6) sum_k |f_hat|^2.
    const double n3 = std::pow(double(u.n), 3.0);
    return std::sqrt(sum * u.L * u.L * u.L / (n3 * n3));
}

CartesianField3D heat_semigroup(const CartesianField3D& u, double t) {
    if (t < 0.0) throw std::domain_error("heat_semigroup: t must be nonnegative");
    const double unit2 = std::pow(2.0 * EIGEN_PI / u.L, 2.0);
    return apply_multiplier(u, [t, unit2](int kx, int ky, int kz) {
        const double k2 = double(kx) * kx + double(ky) * ky + double(kz) * kz;
        return std::exp(-t * unit2 * k2);
    });
}

BernsteinReport bernstein_check(const CartesianField3D& u, double p, double q,
                                int n_deriv) {
    require_box(u);
    if (!(1.0 <= p) || !(p <= q)) {
        throw std::invalid_argument("bernstein_check: need 1 <= p <= q");
    }
    const DyadicPartition part(u.n);

    // Locate the spectral support and verify single-annulus localization.
    // Two passes: total spectral energy first, then the support of all modes
    // carrying more than a 1e-18 fraction of it (roundoff leakage sits around
    // 1e-26 relative for these sizes).
    std::vector<SpectrumArray> spectra;
    double total = 0.0;
    for (const auto& comp : u.components) {
        spectra.push_back(fft3(comp, u.n));
        total += spectra.back().abs2().sum();
    }
    if (total == 0.0) {
        throw std::invalid_argument("bernstein_check: zero field");
    }
    double tau_min = std::numeric_limits<double>::infinity(), tau_max = 0.0;
    double log_center = 0.0, weight = 0.0;
    for (const auto& spec : spectra) {
        std::ptrdiff_t idx = 0;
        for (int kz = 0; kz < u.n; ++kz) {
            const int fz = lattice_freq(kz, u.n);
            for (int ky = 0; ky < u.n; ++ky) {
                const int fy = lattice_freq(ky, u.n);
                for (int kx = 0; kx < u.n; ++kx, ++idx) {
                    const double e = std::norm(spec[idx]);
                    if (e > 1e-18 * total) {
                        const int fx = lattice_freq(kx, u.n);
                        const double tau = std::sqrt(double(fx) * fx +
                                                     double(fy) * fy +
                                                     double(fz) * fz);
                        tau_min = std::min(tau_min, tau);
                        tau_max = std::max(tau_max, tau);
                        if (tau > 0.0) {
                            log_center += e * std::log2(tau);
                            weight += e;
                        }
                    }
                }
            }
        }
    }
    // Adjacent annuli overlap; among those containing the whole support,
    // pick the one nearest the energy-weighted spectral center.
    int block = part.j_min - 1;
    double best = std::numeric_limits<double>::infinity();
    const double center = weight > 0.0 ? log_center / weight : 0.0;
    for (int j = part.j_min; j <= part.j_max; ++j) {
        const double lo = 0.75 * std::ldexp(1.0, j);
        const double hi = 8.0 / 3.0 * std::ldexp(1.0, j);
        if (tau_min >= lo - 1e-9 && tau_max <= hi + 1e-9 &&
            std::fabs(j - center) < best) {
            block = j;
            best = std::fabs(j - center);
        }
    }
    if (block < part.j_min) {
        throw std::invalid_argument(
            "bernstein_check: spectrum not localized in a single dyadic annulus");
    }

    // sup over |alpha| = N of the L^p norms of the spectral derivatives.
    const double unit = 2.0 * EIGEN_PI / u.L;
    auto deriv_norm = [&](int ax, int ay, int az, double norm_p) {
        CartesianField3D d = apply_multiplier(
            u, [&](int kx, int ky, int kz) -> Complex {
                Complex m(1.0, 0.0);
                for (int c = 0; c < ax; ++c) m *= Complex(0.0, unit * kx);
                for (int c = 0; c < ay; ++c) m *= Complex(0.0, unit * ky);
                for (int c = 0; c < az; ++c) m *= Complex(0.0, unit * kz);
                return m;
            });
        return box_lp_norm(d, norm_p);
    };
    double dq = 0.0, dp = 0.0;
    for (int ax = 0; ax <= n_deriv; ++ax) {
        for (int ay = 0; ay + ax <= n_deriv; ++ay) {
            const int az = n_deriv - ax - ay;
            dq = std::max(dq, deriv_norm(ax, ay, az, q));
            dp = std::max(dp, deriv_norm(ax, ay, az, p));
        }
    }

    const double lam = unit * std::ldexp(1.0, block);
    BernsteinReport rep;
    rep.j = block;
    rep.forward_ratio =
        dq / (std::pow(lam, n_deriv + 3.0 * (1.0 / p - 1.0 / q)) *
              box_lp_norm(u, p));
    rep.reverse_ratio = std::pow(lam, n_deriv) * box_lp_norm(u, p) / dp;
    return rep;
}

double duhamel_residual(const CartesianField3D& u0,
                        const std::vector<CartesianField3D>& forcing, double t,
                        int j) {
    require_box(u0);
    if (forcing.size() < 2) {
        throw std::domain_error("duhamel_residual: need at least 2 forcing samples");
    }
    for (const auto& f : forcing) {
        if (f.n != u0.n || f.ncomp() != u0.ncomp() || f.L != u0.L) {
            throw std::domain_error("duhamel_residual: mismatched sampling");
        }
    }
    if (!(t > 0.0)) throw std::domain_error("duhamel_residual: t must be positive");

    const int m = static_cast<int>(forcing.size());
    const double dt = t / (m - 1);
    const int nc = u0.ncomp();
    const double unit2 = std::pow(2.0 * EIGEN_PI / u0.L, 2.0);

    // Leray-projected forcing spectra (projection skipped for scalars).
    std::vector<std::vector<SpectrumArray>> fhat(m);
    for (int s = 0; s < m; ++s) {
        const CartesianField3D pf =
            nc == 3 ? leray_project(forcing[s]) : forcing[s];
        fhat[s].reserve(nc);
        for (int c = 0; c < nc; ++c) fhat[s].push_back(fft3(pf.components[c], u0.n));
    }
    std::vector<SpectrumArray> uhat;
    for (int c = 0; c < nc; ++c) uhat.push_back(fft3(u0.components[c], u0.n));

    // lambda per mode.
    const std::ptrdiff_t n3 = u0.size();
    Eigen::ArrayXd lambda(n3);
    {
        std::ptrdiff_t idx = 0;
        for (int kz = 0; kz < u0.n; ++kz) {
            const int fz = lattice_freq(kz, u0.n);
            for (int ky = 0; ky < u0.n; ++ky) {
                const int fy = lattice_freq(ky, u0.n);
                for (int kx = 0; kx < u0.n; ++kx, ++idx) {
                    const int fx = lattice_freq(kx, u0.n);
                    lambda[idx] =
                        unit2 * (double(fx) * fx + double(fy) * fy + double(fz) * fz);
                }
            }
        }
    }

    // Exact segment integrals for piecewise-linear forcing:
    //   I0 = int_0^dt e^{-lam (dt - s)} ds, I1 = int_0^dt s e^{-lam (dt - s)} ds.
    auto I0 = [&](double lam) {
        return lam > 0.0 ? (1.0 - std::exp(-lam * dt)) / lam : dt;
    };
    auto I1 = [&](double lam) {
        return lam > 0.0 ? (dt - I0(lam)) / lam : 0.5 * dt * dt;
    };

    CartesianField3D exact;
    exact.n = u0.n;
    exact.L = u0.L;
    CartesianField3D duhamel = exact;
    for (int c = 0; c < nc; ++c) {
        SpectrumArray ref = uhat[c];
        // March the exact solution segment by segment.
        for (int s = 0; s + 1 < m; ++s) {
            for (std::ptrdiff_t k = 0; k < n3; ++k) {
                const double lam = lambda[k];
                const Complex fa = fhat[s][c][k];
                const Complex fb = fhat[s + 1][c][k];
                ref[k] = std::exp(-lam * dt) * ref[k] -
                         (fa * I0(lam) + (fb - fa) * (I1(lam) / dt));
            }
        }
        exact.components.push_back(ifft3_real(std::move(ref), u0.n));

        // Trapezoidal Duhamel approximation of the same mild formula.
        SpectrumArray duh = uhat[c];
        for (std::ptrdiff_t k = 0; k < n3; ++k) {
            const double lam = lambda[k];
            duh[k] *= std::exp(-lam * t);
            Complex integral(0.0, 0.0);
            for (int s = 0; s < m; ++s) {
                const double w = (s == 0 || s == m - 1) ? 0.5 * dt : dt;
                integral += w * std::exp(-lam * (t - s * dt)) * fhat[s][c][k];
            }
            duh[k] -= integral;
        }
        duhamel.components.push_back(ifft3_real(std::move(duh), u0.n));
    }

    CartesianField3D diff = dyadic_block(exact, j);
    const CartesianField3D duh_j = dyadic_block(duhamel, j);
    for (int c = 0; c < nc; ++c) diff.components[c] -= duh_j.components[c];
    return box_lp_norm(diff, std::numeric_limits<double>::infinity());
}

namespace {

// Bilinear sample of a padded axisymmetric field at arbitrary (r, z).
double sample_cyl(const PaddedField& pad, const Grid& g, double r, double z) {
    if (r > g.rmax) return 0.0;
    double zw = std::fmod(z, g.lz);
    if (zw < 0.0) zw += g.lz;
    const double s = r / g.dr - 0.5;
    const double tz = zw / g.dz - 0.5;
    const int i0 = static_cast<int>(std::floor(s));
    const int j0 = static_cast<int>(std::floor(tz));
    const double fr = s - i0;
    const double fz = tz - j0;
    auto at = [&](int i, int jj) {
        if (i > g.nr) return 0.0;
        int jwrap = jj;
        if (jwrap < -1) jwrap += g.nz;
        if (jwrap > g.nz) jwrap -= g.nz;
        return pad(std::min(i, g.nr), jwrap);
    };
    return (1.0 - fr) * (1.0 - fz) * at(i0, j0) + fr * (1.0 - fz) * at(i0 + 1, j0) +
           (1.0 - fr) * fz * at(i0, j0 + 1) + fr * fz * at(i0 + 1, j0 + 1);
}

}  // namespace

CartesianField3D embed_axisymmetric(const ScalarField& f_r,
                                    const ScalarField& f_theta,
                                    const ScalarField& f_z, int n, double L) {
    const Grid& g = *f_r.grid;
    if (L < 2.0 * std::max(g.rmax, g.lz)) {
        throw std::domain_error(
            "embed_axisymmetric: box must satisfy L >= 2 max(rmax, lz)");
    }
    const PaddedField pr = fill_ghosts(f_r, 1);
    const PaddedField pt = fill_ghosts(f_theta, 1);
    const PaddedField pz = fill_ghosts(f_z, 1);

    CartesianField3D out = CartesianField3D::vector(n, L);
    const double h = L / n;
    std::ptrdiff_t idx = 0;
    for (int kz = 0; kz < n; ++kz) {
        const double z_box = -0.5 * L + kz * h;
        const double z_cyl = z_box + 0.5 * g.lz;
        const bool inside_z = z_box >= -0.5 * g.lz && z_box < 0.5 * g.lz;
        for (int ky = 0; ky < n; ++ky) {
            const double y = -0.5 * L + ky * h;
            for (int kx = 0; kx < n; ++kx, ++idx) {
                if (!inside_z) continue;
                const double x = -0.5 * L + kx * h;
                const double rp = std::hypot(x, y);
                if (rp > g.rmax) continue;
                const double vz = sample_cyl(pz, g, rp, z_cyl);
                out.components[2][idx] = vz;
                if (rp < 1e-14) continue;  // odd components vanish on the axis
                const double vr = sample_cyl(pr, g, rp, z_cyl);
                const double vt = sample_cyl(pt, g, rp, z_cyl);
                const double ct = x / rp, st = y / rp;
                out.components[0][idx] = vr * ct - vt * st;
                out.components[1][idx] = vr * st + vt * ct;
            }
        }
    }
    return out;
}

CartesianField3D embed_scalar(const ScalarField& f, int n, double L) {
    const Grid& g = *f.grid;
    if (L < 2.0 * std::max(g.rmax, g.lz)) {
        throw std::domain_error(
            "embed_scalar: box must satisfy L >= 2 max(rmax, lz)");
    }
    const PaddedField pf = fill_ghosts(f, 1);
    CartesianField3D out = CartesianField3D::scalar(n, L);
    const double h = L / n;
    std::ptrdiff_t idx = 0;
    for (int kz = 0; kz < n; ++kz) {
        const double z_box = -0.5 * L + kz * h;
        const double z_cyl = z_box + 0.5 * g.lz;
        const bool inside_z = z_box >= -0.5 * g.lz && z_box < 0.5 * g.lz;
        for (int ky = 0; ky < n; ++ky) {
            const double y = -0.5 * L + ky * h;
            for (int kx = 0; kx < n; ++kx, ++idx) {
                if (!inside_z) continue;
                const double x = -0.5 * L + kx * h;
                const double rp = std::hypot(x, y);
                if (rp > g.rmax) continue;
                out.components[0][idx] = sample_cyl(pf, g, rp, z_cyl);
            }
        }
    }
    return out;
}

}  // namespace swirlmhd
