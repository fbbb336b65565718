#include "hslab/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

namespace hs {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Trigonometric (DFT-based) derivative of periodic complex samples with
// respect to the parameter theta in [0, 2pi).  Direct O(N^2) transform with
// tabulated twiddles; desk-scale N keeps this cheap and dependency-free.
// order = 1 or 2.
std::vector<Complex> spectral_derivative(const std::vector<Complex>& f, int order) {
    const int n = static_cast<int>(f.size());
    std::vector<Complex> twiddle(n);
    for (int k = 0; k < n; ++k) {
        const double ang = 2.0 * kPi * k / n;
        twiddle[k] = Complex(std::cos(ang), std::sin(ang));
    }
    std::vector<Complex> fhat(n);
    for (int k = 0; k < n; ++k) {
        Complex acc(0.0, 0.0);
        for (int j = 0; j < n; ++j) {
            // conj(twiddle) realizes the forward transform
            acc += f[j] * std::conj(twiddle[(static_cast<int64_t>(j) * k) % n]);
        }
        fhat[k] = acc / static_cast<double>(n);
    }
    std::vector<Complex> out(n, Complex(0.0, 0.0));
    for (int k = 0; k < n; ++k) {
        int wave = (k <= n / 2) ? k : k - n;
        if (2 * k == n) wave = 0;  // Nyquist mode carries no derivative information
        if (wave == 0 && order >= 1) continue;
        Complex factor = Complex(0.0, static_cast<double>(wave));
        if (order == 2) factor *= Complex(0.0, static_cast<double>(wave));
        const Complex coeff = fhat[k] * factor;
        for (int j = 0; j < n; ++j) {
            out[j] += coeff * twiddle[(static_cast<int64_t>(j) * k) % n];
        }
    }
    return out;
}

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

double point_segment_distance(Complex p, Complex a, Complex b) {
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 < 1e-300) return std::abs(p - a);
    double t = ((p - a).real() * ab.real() + (p - a).imag() * ab.imag()) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

bool segments_too_close(Complex a, Complex b, Complex c, Complex d, double tol) {
    // Proper intersection test first.
    const double d1 = cross(b - a, c - a);
    const double d2 = cross(b - a, d - a);
    const double d3 = cross(d - c, a - c);
    const double d4 = cross(d - c, b - c);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
        ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
        return true;
    }
    const double dist = std::min(
        std::min(point_segment_distance(a, c, d), point_segment_distance(b, c, d)),
        std::min(point_segment_distance(c, a, b), point_segment_distance(d, a, b)));
    return dist <= tol;
}

double polygon_signed_area(const std::vector<Complex>& m) {
    double area2 = 0.0;
    const int n = static_cast<int>(m.size());
    for (int i = 0; i < n; ++i) {
        const Complex& p = m[i];
        const Complex& q = m[(i + 1) % n];
        area2 += p.real() * q.imag() - q.real() * p.imag();
    }
    return 0.5 * area2;
}

// --- periodic cubic spline through complex samples at unit parameter spacing

struct PeriodicSpline {
    std::vector<Complex> f;   // knot values
    std::vector<Complex> m2;  // second derivatives at knots

    Complex eval(int seg, double s) const {
        const int n = static_cast<int>(f.size());
        const int j = seg % n;
        const int k = (seg + 1) % n;
        const double u = 1.0 - s;
        return m2[j] * (u * u * u / 6.0) + m2[k] * (s * s * s / 6.0) +
               (f[j] - m2[j] / 6.0) * u + (f[k] - m2[k] / 6.0) * s;
    }
    Complex deriv(int seg, double s) const {
        const int n = static_cast<int>(f.size());
        const int j = seg % n;
        const int k = (seg + 1) % n;
        const double u = 1.0 - s;
        return -m2[j] * (u * u / 2.0) + m2[k] * (s * s / 2.0) + (f[k] - f[j]) -
               (m2[k] - m2[j]) / 6.0;
    }
};

// Cyclic tridiagonal solve (off-diagonal 1, diagonal 4, wrapped corners 1)
// via Sherman-Morrison on the Thomas algorithm; rhs and result are complex.
// A = T + u v^T with u = (gamma,0,...,0,1)^T, v = (1,0,...,0,1/gamma)^T,
// so T is plain tridiagonal with modified first/last diagonal entries.
std::vector<Complex> solve_cyclic_141(const std::vector<Complex>& rhs) {
    const int n = static_cast<int>(rhs.size());
    const double gamma = -4.0;
    std::vector<double> diag(n, 4.0);
    diag[0] = 4.0 - gamma;
    diag[n - 1] = 4.0 - 1.0 / gamma;
    auto tri = [&](std::vector<Complex> b) {
        std::vector<double> dd = diag;
        for (int i = 1; i < n; ++i) {
            const double w = 1.0 / dd[i - 1];
            dd[i] -= w;
            b[i] -= w * b[i - 1];
        }
        b[n - 1] /= dd[n - 1];
        for (int i = n - 2; i >= 0; --i) b[i] = (b[i] - b[i + 1]) / dd[i];
        return b;
    };
    const std::vector<Complex> y = tri(rhs);
    std::vector<Complex> u(n, Complex(0.0, 0.0));
    u[0] = Complex(gamma, 0.0);
    u[n - 1] = Complex(1.0, 0.0);
    const std::vector<Complex> q = tri(u);
    const Complex vy = y[0] + y[n - 1] / gamma;
    const Complex vq = q[0] + q[n - 1] / gamma;
    const Complex factor = vy / (Complex(1.0, 0.0) + vq);
    std::vector<Complex> x(n);
    for (int i = 0; i < n; ++i) x[i] = y[i] - factor * q[i];
    return x;
}

PeriodicSpline build_spline(const std::vector<Complex>& pts) {
    const int n = static_cast<int>(pts.size());
    std::vector<Complex> rhs(n);
    for (int i = 0; i < n; ++i) {
        rhs[i] = 6.0 * (pts[(i + 1) % n] - 2.0 * pts[i] + pts[(i + n - 1) % n]);
    }
    PeriodicSpline sp;
    sp.f = pts;
    sp.m2 = solve_cyclic_141(std::move(rhs));
    return sp;
}

double segment_arclength(const PeriodicSpline& sp, int seg, double s_end) {
    static const QuadRule gl = gauss_legendre(16);
    double acc = 0.0;
    for (int q = 0; q < 16; ++q) {
        acc += gl.weights[q] * std::abs(sp.deriv(seg, gl.nodes[q] * s_end));
    }
    return acc * s_end;
}

}  // namespace

// ---------------------------------------------------------------------------
// MarkerCurve

MarkerCurve MarkerCurve::fromMarkers(std::vector<Complex> markers) {
    const int n = static_cast<int>(markers.size());
    if (n < kMinMarkers) {
        throw Error("MarkerCurve: need at least 16 markers, got " + std::to_string(n));
    }
    if (n > kMaxMarkers) {
        throw Error("MarkerCurve: marker count exceeds desk-scale limit 4096");
    }
    for (const Complex& m : markers) {
        if (!finite(m)) throw Error("MarkerCurve: non-finite marker coordinate");
    }
    const double area = polygon_signed_area(markers);
    if (!(area > 0.0)) {
        throw Error("MarkerCurve: signed area must be positive (counterclockwise orientation)");
    }
    // Simplicity: O(N^2) segment pairs, tolerance 1e-12 on non-adjacent pairs.
    constexpr double tol = 1e-12;
    for (int i = 0; i < n; ++i) {
        const Complex a = markers[i];
        const Complex b = markers[(i + 1) % n];
        for (int j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;  // adjacent around the seam
            const Complex c = markers[j];
            const Complex d = markers[(j + 1) % n];
            if (segments_too_close(a, b, c, d, tol)) {
                throw Error("MarkerCurve: curve is not simple (segments " + std::to_string(i) +
                            " and " + std::to_string(j) + " intersect)");
            }
        }
    }
    MarkerCurve curve;
    curve.markers_ = std::move(markers);
    curve.buildQuadratureData();
    return curve;
}

void MarkerCurve::buildQuadratureData() {
    const int n = size();
    const std::vector<Complex> d1 = spectral_derivative(markers_, 1);
    const std::vector<Complex> d2 = spectral_derivative(markers_, 2);
    dz_weights_.resize(n);
    ds_weights_.resize(n);
    tangents_.resize(n);
    curvatures_.resize(n);
    perimeter_ = 0.0;
    const double dtheta = 2.0 * kPi / n;
    for (int j = 0; j < n; ++j) {
        dz_weights_[j] = d1[j] * dtheta;
        ds_weights_[j] = std::abs(dz_weights_[j]);
        perimeter_ += ds_weights_[j];
        const double speed = std::abs(d1[j]);
        if (speed < 1e-14) {
            throw Error("MarkerCurve: degenerate parametrization (zero tangent)");
        }
        tangents_[j] = d1[j] / speed;
        curvatures_[j] = (std::conj(d1[j]) * d2[j]).imag() / (speed * speed * speed);
    }
    max_spacing_ = 0.0;
    min_spacing_ = std::numeric_limits<double>::max();
    for (int j = 0; j < n; ++j) {
        const double gap = std::abs(markers_[(j + 1) % n] - markers_[j]);
        max_spacing_ = std::max(max_spacing_, gap);
        min_spacing_ = std::min(min_spacing_, gap);
    }
}

std::vector<Complex> MarkerCurve::outwardNormals() const {
    std::vector<Complex> normals(tangents_.size());
    for (size_t j = 0; j < tangents_.size(); ++j) {
        normals[j] = Complex(0.0, -1.0) * tangents_[j];
    }
    return normals;
}

double MarkerCurve::circumradius() const {
    double r = 0.0;
    for (const Complex& m : markers_) r = std::max(r, std::abs(m));
    return r;
}

double signed_area(const MarkerCurve& curve) { return polygon_signed_area(curve.markers()); }

Complex contour_integral(const MarkerCurve& curve, std::span<const Complex> samples) {
    if (static_cast<int>(samples.size()) != curve.size()) {
        throw Error("contour_integral: expected " + std::to_string(curve.size()) +
                    " samples, got " + std::to_string(samples.size()));
    }
    Complex acc(0.0, 0.0);
    const auto& w = curve.dzWeights();
    for (size_t j = 0; j < samples.size(); ++j) acc += samples[j] * w[j];
    return acc;
}

std::vector<Complex> resample_closed_polyline(const std::vector<Complex>& points, int n) {
    std::vector<Complex> pts;
    pts.reserve(points.size());
    for (const Complex& p : points) {
        if (pts.empty() || std::abs(p - pts.back()) > 1e-12) pts.push_back(p);
    }
    if (pts.size() >= 2 && std::abs(pts.front() - pts.back()) <= 1e-12) pts.pop_back();
    if (pts.size() < 3) throw Error("resample: degenerate curve (fewer than 3 distinct points)");

    const PeriodicSpline sp = build_spline(pts);
    const int m = static_cast<int>(pts.size());
    std::vector<double> seglen(m);
    double total = 0.0;
    for (int s = 0; s < m; ++s) {
        seglen[s] = segment_arclength(sp, s, 1.0);
        total += seglen[s];
    }
    if (total < 1e-12) throw Error("resample: degenerate curve (zero length)");

    std::vector<double> cum(m + 1, 0.0);
    for (int s = 0; s < m; ++s) cum[s + 1] = cum[s] + seglen[s];

    std::vector<Complex> out(n);
    int seg = 0;
    for (int k = 0; k < n; ++k) {
        const double target = total * k / n;
        while (seg + 1 <= m && cum[seg + 1] < target) ++seg;
        if (seg >= m) seg = m - 1;
        const double want = target - cum[seg];
        // Arclength inversion within the segment by bisection on the partial
        // Gauss-Legendre arclength; 60 halvings reach machine precision.
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (segment_arclength(sp, seg, mid) < want) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        out[k] = sp.eval(seg, 0.5 * (lo + hi));
    }
    return out;
}

MarkerCurve resample(const MarkerCurve& curve, int n) {
    if (n < MarkerCurve::kMinMarkers) {
        throw Error("resample: target marker count must be at least 16");
    }
    return MarkerCurve::fromMarkers(resample_closed_polyline(curve.markers(), n));
}

double distance_to_curve(const MarkerCurve& curve, Complex z) {
    const auto& m = curve.markers();
    const int n = curve.size();
    double best = std::numeric_limits<double>::max();
    for (int i = 0; i < n; ++i) {
        best = std::min(best, point_segment_distance(z, m[i], m[(i + 1) % n]));
    }
    return best;
}

bool point_in_domain(const MarkerCurve& curve, Complex z) {
    if (distance_to_curve(curve, z) <= 1e-12) {
        throw Error("point_in_domain: point lies on the curve within tolerance 1e-12");
    }
    const auto& m = curve.markers();
    const int n = curve.size();
    // Crossing parity of a ray towards +x, half-open in y to avoid double
    // counting at vertices.
    bool inside = false;
    for (int i = 0; i < n; ++i) {
        const Complex& a = m[i];
        const Complex& b = m[(i + 1) % n];
        if ((a.imag() <= z.imag()) != (b.imag() <= z.imag())) {
            const double t = (z.imag() - a.imag()) / (b.imag() - a.imag());
            const double xc = a.real() + t * (b.real() - a.real());
            if (xc > z.real()) inside = !inside;
        }
    }
    return inside;
}

double curve_hausdorff(const MarkerCurve& a, const MarkerCurve& b) {
    double d = 0.0;
    for (const Complex& p : a.markers()) d = std::max(d, distance_to_curve(b, p));
    for (const Complex& p : b.markers()) d = std::max(d, distance_to_curve(a, p));
    return d;
}

MarkerCurve make_circle(Complex center, double radius, int n) {
    if (!(radius > 0.0)) throw Error("make_circle: radius must be positive");
    std::vector<Complex> m(n);
    for (int j = 0; j < n; ++j) {
        const double th = 2.0 * kPi * j / n;
        m[j] = center + radius * Complex(std::cos(th), std::sin(th));
    }
    return MarkerCurve::fromMarkers(std::move(m));
}

MarkerCurve make_ellipse(double a, double b, int n) {
    if (!(a > 0.0) || !(b > 0.0)) throw Error("make_ellipse: semiaxes must be positive");
    std::vector<Complex> m(n);
    for (int j = 0; j < n; ++j) {
        const double th = 2.0 * kPi * j / n;
        m[j] = Complex(a * std::cos(th), b * std::sin(th));
    }
    return MarkerCurve::fromMarkers(std::move(m));
}

// ---------------------------------------------------------------------------
// ScalarGrid

ScalarGrid::ScalarGrid(Complex origin_, double h_, int nx_, int ny_, double fill)
    : origin(origin_), h(h_), nx(nx_), ny(ny_), values(static_cast<size_t>(nx_) * ny_, fill) {
    validate("ScalarGrid");
}

void ScalarGrid::validate(const char* what) const {
    if (!(h > 0.0)) throw Error(std::string(what) + ": spacing h must be positive");
    if (nx <= 0 || ny <= 0) throw Error(std::string(what) + ": grid dimensions must be positive");
    if (values.size() != static_cast<size_t>(nx) * ny) {
        throw Error(std::string(what) + ": value count does not match nx*ny");
    }
}

double ScalarGrid::bilinear(Complex z) const {
    double fx = (z.real() - origin.real()) / h;
    double fy = (z.imag() - origin.imag()) / h;
    fx = std::clamp(fx, 0.0, static_cast<double>(nx - 1));
    fy = std::clamp(fy, 0.0, static_cast<double>(ny - 1));
    const int i = std::min(static_cast<int>(fx), nx - 2);
    const int j = std::min(static_cast<int>(fy), ny - 2);
    const double sx = fx - i;
    const double sy = fy - j;
    return at(i, j) * (1 - sx) * (1 - sy) + at(i + 1, j) * sx * (1 - sy) +
           at(i, j + 1) * (1 - sx) * sy + at(i + 1, j + 1) * sx * sy;
}

// ---------------------------------------------------------------------------
// DensityField

DensityField DensityField::constant(double c) {
    if (!(c > 0.0)) throw Error("DensityField: constant density must be positive");
    DensityField f;
    f.kind_ = Kind::Constant;
    f.c0_ = c;
    return f;
}

DensityField DensityField::affine(double c0, double c1, double c2) {
    DensityField f;
    f.kind_ = Kind::Affine;
    f.c0_ = c0;
    f.c1_ = c1;
    f.c2_ = c2;
    return f;
}

DensityField DensityField::sampled(ScalarGrid grid) {
    grid.validate("DensityField");
    for (double v : grid.values) {
        if (!(v > 0.0)) throw Error("DensityField: sampled density must be positive everywhere");
    }
    DensityField f;
    f.kind_ = Kind::Sampled;
    f.grid_ = std::move(grid);
    return f;
}

double DensityField::operator()(Complex z) const {
    switch (kind_) {
        case Kind::Constant:
            return c0_;
        case Kind::Affine:
            return std::max(kFloor, c0_ + c1_ * z.real() + c2_ * z.imag());
        case Kind::Sampled:
            return std::max(kFloor, grid_.bilinear(z));
    }
    return c0_;
}

double DensityField::minOnBox(const Box& box) const {
    if (kind_ == Kind::Constant) return c0_;
    if (kind_ == Kind::Affine) {
        double best = std::numeric_limits<double>::max();
        for (double x : {box.xmin, box.xmax}) {
            for (double y : {box.ymin, box.ymax}) {
                best = std::min(best, (*this)(Complex(x, y)));
            }
        }
        return best;
    }
    double best = std::numeric_limits<double>::max();
    for (int j = 0; j < grid_.ny; ++j) {
        for (int i = 0; i < grid_.nx; ++i) {
            if (box.contains(grid_.point(i, j))) best = std::min(best, grid_.at(i, j));
        }
    }
    return std::max(kFloor, best);
}

bool DensityField::covers(const Box& box) const {
    if (kind_ != Kind::Sampled) return true;
    const double x1 = grid_.origin.real();
    const double y1 = grid_.origin.imag();
    const double x2 = x1 + grid_.h * (grid_.nx - 1);
    const double y2 = y1 + grid_.h * (grid_.ny - 1);
    return x1 <= box.xmin && y1 <= box.ymin && x2 >= box.xmax && y2 >= box.ymax;
}

// ---------------------------------------------------------------------------
// Quadrature

QuadRule gauss_legendre(int n) {
    if (n < 1) throw Error("gauss_legendre: order must be positive");
    QuadRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    // Nodes of P_n by Newton iteration from the Chebyshev initial guess,
    // mapped from [-1, 1] to [0, 1].
    for (int i = 0; i < n; ++i) {
        double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (t * p1 - p0) / (t * t - 1.0);
            const double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        rule.nodes[i] = 0.5 * (1.0 + t);
        rule.weights[i] = 1.0 / ((1.0 - t * t) * dp * dp);
    }
    return rule;
}

// ---------------------------------------------------------------------------
// Rasterization

std::vector<uint8_t> rasterize_indicator(const MarkerCurve& curve, const ScalarGrid& grid) {
    std::vector<uint8_t> mask(static_cast<size_t>(grid.nx) * grid.ny, 0);
    const auto& m = curve.markers();
    const int n = curve.size();
    std::vector<double> xs;
    for (int j = 0; j < grid.ny; ++j) {
        const double y = grid.origin.imag() + j * grid.h;
        xs.clear();
        for (int i = 0; i < n; ++i) {
            const Complex& a = m[i];
            const Complex& b = m[(i + 1) % n];
            if ((a.imag() <= y) != (b.imag() <= y)) {
                const double t = (y - a.imag()) / (b.imag() - a.imag());
                xs.push_back(a.real() + t * (b.real() - a.real()));
            }
        }
        std::sort(xs.begin(), xs.end());
        // Inside between crossing pairs.
        size_t k = 0;
        for (int i = 0; i < grid.nx; ++i) {
            const double x = grid.origin.real() + i * grid.h;
            while (k < xs.size() && xs[k] <= x) ++k;
            if (k % 2 == 1) mask[static_cast<size_t>(j) * grid.nx + i] = 1;
        }
    }
    return mask;
}

}  // namespace hs
