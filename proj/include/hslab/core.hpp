#pragma once

// Core geometric substrate: closed marker curves with spectral contour
// quadrature, uniform scalar grids, and density fields.
//
// Conventions used throughout the library:
//   - the plane is identified with the complex numbers, z = x + iy;
//   - curves are closed, simple and positively (counterclockwise) oriented;
//   - "Lap" denotes the Wirtinger Laplacian d^2/dz dzbar, which is 1/4 of
//     the standard Laplacian.  With this normalization Lap |z|^2 = 1 and the
//     fundamental solution is (2/pi) log|z|.

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hs {

using Complex = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

/// Library-wide error type.  Messages identify the offending quantity.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// MarkerCurve

/// Closed positively-oriented Jordan curve sampled by N >= 16 markers.
///
/// Construction validates positive signed area and simplicity (no two
/// non-adjacent segments intersect, up to tolerance 1e-12).  The curve keeps
/// spectral quadrature data: dz-weights w_j such that for samples g_j of an
/// analytic integrand, sum_j g_j w_j approximates the contour integral of
/// g dz with spectral accuracy when the markers are equispaced in parameter.
class MarkerCurve {
public:
    static constexpr int kMinMarkers = 16;
    static constexpr int kMaxMarkers = 4096;

    static MarkerCurve fromMarkers(std::vector<Complex> markers);

    int size() const { return static_cast<int>(markers_.size()); }
    const std::vector<Complex>& markers() const { return markers_; }

    /// Quadrature weights for contour integrals of the form sum g_j * w_j.
    const std::vector<Complex>& dzWeights() const { return dz_weights_; }
    /// Arclength weights |w_j| for integrals against ds.
    const std::vector<double>& dsWeights() const { return ds_weights_; }
    /// Unit tangent vectors (direction of traversal).
    const std::vector<Complex>& tangents() const { return tangents_; }
    /// Outward unit normals (-i times tangent for CCW curves).
    std::vector<Complex> outwardNormals() const;
    /// Signed curvature at markers (positive for convex CCW curves).
    const std::vector<double>& curvatures() const { return curvatures_; }

    double perimeter() const { return perimeter_; }
    /// Largest gap between consecutive markers.
    double maxSpacing() const { return max_spacing_; }
    double minSpacing() const { return min_spacing_; }
    /// max_j |m_j|: radius of the circumscribed circle about the origin.
    double circumradius() const;

private:
    MarkerCurve() = default;
    void buildQuadratureData();

    std::vector<Complex> markers_;
    std::vector<Complex> dz_weights_;
    std::vector<double> ds_weights_;
    std::vector<Complex> tangents_;
    std::vector<double> curvatures_;
    double perimeter_ = 0.0;
    double max_spacing_ = 0.0;
    double min_spacing_ = 0.0;
};

/// Shoelace area of the marker polygon; positive for CCW orientation.
double signed_area(const MarkerCurve& curve);

/// Contour integral of g dz by the periodic trapezoid rule, one sample per
/// marker.  Spectrally accurate for analytic integrands on smooth curves
/// with markers equispaced in parameter.
Complex contour_integral(const MarkerCurve& curve, std::span<const Complex> samples);

/// Resample to n markers equispaced in arclength via periodic cubic
/// interpolation of the original markers.
MarkerCurve resample(const MarkerCurve& curve, int n);

/// True iff the winding number of the marker polygon about z is 1.
/// Throws if z lies on the curve within tolerance 1e-12.
bool point_in_domain(const MarkerCurve& curve, Complex z);

/// Distance from z to the marker polygon.
double distance_to_curve(const MarkerCurve& curve, Complex z);

/// One-sided Hausdorff-symmetrized distance between two marker polygons.
double curve_hausdorff(const MarkerCurve& a, const MarkerCurve& b);

// Analytic test curves, markers equispaced in the natural parameter.
MarkerCurve make_circle(Complex center, double radius, int n);
MarkerCurve make_ellipse(double a, double b, int n);

// Internal building block shared with the free-boundary extraction: resample
// a raw closed polyline (no validity requirements) and return markers
// equispaced in arclength.  The resulting markers still need fromMarkers.
std::vector<Complex> resample_closed_polyline(const std::vector<Complex>& points, int n);

// ---------------------------------------------------------------------------
// ScalarGrid

/// Uniform real-valued field.  value(i, j) lives at origin + (i*h, j*h);
/// callers that need cell-centered semantics bake the half-cell shift into
/// the origin.
struct ScalarGrid {
    Complex origin{0.0, 0.0};
    double h = 0.0;
    int nx = 0;
    int ny = 0;
    std::vector<double> values;

    ScalarGrid() = default;
    ScalarGrid(Complex origin_, double h_, int nx_, int ny_, double fill = 0.0);

    double& at(int i, int j) { return values[static_cast<size_t>(j) * nx + i]; }
    double at(int i, int j) const { return values[static_cast<size_t>(j) * nx + i]; }
    Complex point(int i, int j) const { return origin + Complex(i * h, j * h); }
    bool sameLayout(const ScalarGrid& o) const {
        return nx == o.nx && ny == o.ny && std::abs(h - o.h) < 1e-15 &&
               std::abs(origin - o.origin) < 1e-12;
    }
    /// Bilinear interpolation; clamps to the grid box.
    double bilinear(Complex z) const;
    void validate(const char* what) const;
};

/// Axis-aligned box, used for computational domains.
struct Box {
    double xmin = -1.5, xmax = 1.5, ymin = -1.5, ymax = 1.5;
    double width() const { return xmax - xmin; }
    double height() const { return ymax - ymin; }
    bool contains(Complex z) const {
        return z.real() >= xmin && z.real() <= xmax && z.imag() >= ymin && z.imag() <= ymax;
    }
};

// ---------------------------------------------------------------------------
// DensityField

/// Evaluator for the area density rho(z) = 1/kappa(z) > 0.  One of: a
/// positive constant, the affine family c0 + c1*Re z + c2*Im z clamped
/// positive, or a sampled grid with bilinear interpolation.
class DensityField {
public:
    static DensityField constant(double c);
    static DensityField affine(double c0, double c1, double c2);
    static DensityField sampled(ScalarGrid grid);

    double operator()(Complex z) const;
    bool isConstant() const { return kind_ == Kind::Constant; }
    bool isAffine() const { return kind_ == Kind::Affine; }
    double constantValue() const { return c0_; }
    double coeff0() const { return c0_; }
    double coeff1() const { return c1_; }
    double coeff2() const { return c2_; }
    /// Smallest value attained on a box (sampled on a coarse lattice for
    /// grid-backed fields; exact for constant and affine fields).
    double minOnBox(const Box& box) const;
    /// For grid-backed fields, whether the samples cover the box.
    bool covers(const Box& box) const;

    static constexpr double kFloor = 1e-6;

private:
    enum class Kind { Constant, Affine, Sampled };
    Kind kind_ = Kind::Constant;
    double c0_ = 1.0, c1_ = 0.0, c2_ = 0.0;
    ScalarGrid grid_;
};

// ---------------------------------------------------------------------------
// Quadrature

/// n-point Gauss-Legendre nodes and weights on [0, 1].
struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
QuadRule gauss_legendre(int n);

// ---------------------------------------------------------------------------
// Rasterization helpers

/// Indicator of the curve interior on the lattice of a grid: 1 where the
/// grid point lies inside, else 0.  A point is inside iff its center is
/// inside (O(h) area error by construction).  Scanline crossing parity,
/// consistent with point_in_domain for simple curves.
std::vector<uint8_t> rasterize_indicator(const MarkerCurve& curve, const ScalarGrid& grid);

}  // namespace hs
