#include "hslab/moments.hpp"

#include <algorithm>
#include <cmath>

namespace hs::moments {

namespace {

struct CurveBounds {
    double xmin, xmax, ymin, ymax;
};

CurveBounds bounds(const MarkerCurve& curve) {
    CurveBounds b{1e300, -1e300, 1e300, -1e300};
    for (const Complex& p : curve.markers()) {
        b.xmin = std::min(b.xmin, p.real());
        b.xmax = std::max(b.xmax, p.real());
        b.ymin = std::min(b.ymin, p.imag());
        b.ymax = std::max(b.ymax, p.imag());
    }
    return b;
}

// Equal-area-disc cell potential: the midpoint log kernel for far targets,
// matched C^1 to the uniform-disc interior solution for near targets.
double cell_log_kernel(Complex d, double h) {
    const double r_eq = h / std::sqrt(kPi);
    const double s = std::abs(d);
    if (s >= r_eq) return (2.0 / kPi) * h * h * std::log(s);
    return s * s + 2.0 * r_eq * r_eq * std::log(r_eq) - r_eq * r_eq;
}

Complex cell_log_kernel_dz(Complex d, double h) {
    const double r_eq = h / std::sqrt(kPi);
    const double s = std::abs(d);
    if (s >= r_eq) return h * h / (kPi * d);
    return std::conj(d);
}

}  // namespace

void MomentSeries::validate() const {
    if (times.size() != values.size()) {
        throw Error("MomentSeries: times and values must have equal length");
    }
    for (size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1])) {
            throw Error("MomentSeries: times must be strictly increasing");
        }
    }
    for (const auto& v : values) {
        if (!v.empty() && std::abs(v[0].imag()) > 1e-9 * std::max(1.0, std::abs(v[0]))) {
            throw Error("MomentSeries: M_0 must be real valued");
        }
    }
}

std::vector<Complex> moments_grid(const MarkerCurve& curve, const DensityField& rho, int K,
                                  double h) {
    if (K < 0) throw Error("moments_grid: K must be nonnegative");
    if (!(h > 0.0)) throw Error("moments_grid: h must be positive");
    const CurveBounds b = bounds(curve);
    const double margin = 10.0 * h;
    const Box box{b.xmin - margin, b.xmax + margin, b.ymin - margin, b.ymax + margin};
    if (!rho.covers(box)) {
        throw Error("moments_grid: computational box exceeds the sampled density domain "
                    "(box too small)");
    }
    const int nx = static_cast<int>(std::ceil(box.width() / h));
    const int ny = static_cast<int>(std::ceil(box.height() / h));
    // Cell centers: first sample half a cell inside the box.
    const ScalarGrid grid(Complex(box.xmin + 0.5 * h, box.ymin + 0.5 * h), h, nx, ny);
    const std::vector<uint8_t> inside = rasterize_indicator(curve, grid);

    std::vector<Complex> mk(static_cast<size_t>(K) + 1, Complex(0.0, 0.0));
    const double cell_area = h * h;
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            if (!inside[static_cast<size_t>(j) * nx + i]) continue;
            const Complex z = grid.point(i, j);
            const double weight = rho(z) * cell_area;
            Complex zk(1.0, 0.0);
            for (int k = 0; k <= K; ++k) {
                mk[k] += weight * zk;
                zk *= z;
            }
        }
    }
    return mk;
}

std::vector<Complex> moments_boundary(const MarkerCurve& curve,
                                      std::span<const Complex> phi0_dz, int K) {
    if (static_cast<int>(phi0_dz.size()) != curve.size()) {
        throw Error("moments_boundary: one derivative sample per marker required");
    }
    std::vector<Complex> mk(static_cast<size_t>(K) + 1);
    const int n = curve.size();
    std::vector<Complex> samples(phi0_dz.begin(), phi0_dz.end());
    for (int k = 0; k <= K; ++k) {
        mk[k] = Complex(0.0, -0.5) * contour_integral(curve, samples);
        if (k < K) {
            for (int j = 0; j < n; ++j) samples[j] *= curve.markers()[j];
        }
    }
    return mk;
}

ScalarGrid newtonian_potential(const DensityField& rho, const ScalarGrid& grid) {
    grid.validate("newtonian_potential");
    const int nx = grid.nx, ny = grid.ny;
    const double h = grid.h;
    // Cache source strengths once.
    std::vector<double> strength(static_cast<size_t>(nx) * ny);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const double r = rho(grid.point(i, j));
            if (!(r > 0.0)) throw Error("newtonian_potential: density must be positive");
            strength[static_cast<size_t>(j) * nx + i] = r;
        }
    }
    ScalarGrid out(grid.origin, h, nx, ny);
    for (int tj = 0; tj < ny; ++tj) {
        for (int ti = 0; ti < nx; ++ti) {
            const Complex z = grid.point(ti, tj);
            double acc = 0.0;
            for (int sj = 0; sj < ny; ++sj) {
                for (int si = 0; si < nx; ++si) {
                    acc += strength[static_cast<size_t>(sj) * nx + si] *
                           cell_log_kernel(z - grid.point(si, sj), h);
                }
            }
            out.at(ti, tj) = acc;
        }
    }
    return out;
}

Complex newtonian_potential_dz(const DensityField& rho, const ScalarGrid& grid, Complex z) {
    grid.validate("newtonian_potential_dz");
    Complex acc(0.0, 0.0);
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const Complex w = grid.point(i, j);
            acc += rho(w) * cell_log_kernel_dz(z - w, grid.h);
        }
    }
    return acc;
}

std::vector<double> richardson_drift(const MomentSeries& series) {
    series.validate();
    if (series.times.size() < 2) {
        throw Error("richardson_drift: at least two time samples required");
    }
    const size_t kmax = series.values.front().size();
    for (const auto& v : series.values) {
        if (v.size() != kmax) throw Error("richardson_drift: ragged moment vectors");
    }
    std::vector<double> drift(kmax, 0.0);
    const double t0 = series.times.front();
    const auto& m0 = series.values.front();
    for (size_t ti = 1; ti < series.times.size(); ++ti) {
        const double dt = series.times[ti] - t0;
        for (size_t k = 0; k < kmax; ++k) {
            Complex delta = series.values[ti][k] - m0[k];
            if (k == 0) delta -= dt;  // unit injection clock
            drift[k] = std::max(drift[k], std::abs(delta));
        }
    }
    return drift;
}

}  // namespace hs::moments
