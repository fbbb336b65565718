#include "hslab/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace hs::quad {

int QuadratureData::order() const {
    int n = 0;
    for (int m : multiplicities) n += m;
    return n;
}

void QuadratureData::validate() const {
    if (nodes.size() != multiplicities.size() || nodes.size() != coefficients.size()) {
        throw Error("QuadratureData: nodes, multiplicities and coefficients must align");
    }
    for (size_t k = 0; k < nodes.size(); ++k) {
        if (multiplicities[k] < 1) throw Error("QuadratureData: multiplicities must be >= 1");
        if (static_cast<int>(coefficients[k].size()) != multiplicities[k]) {
            throw Error("QuadratureData: coefficient row length must equal the multiplicity");
        }
        if (std::abs(coefficients[k].back()) == 0.0) {
            throw Error("QuadratureData: leading coefficient c_{k,n_k-1} must be nonzero");
        }
        for (size_t l = k + 1; l < nodes.size(); ++l) {
            if (std::abs(nodes[k] - nodes[l]) < 1e-12) {
                throw Error("QuadratureData: nodes must be distinct");
            }
        }
    }
    Complex csum(0.0, 0.0);
    for (const auto& row : coefficients) csum += row[0];
    if (std::abs(csum.imag()) > 1e-9 * std::max(1.0, std::abs(csum))) {
        throw Error("QuadratureData: sum of order-0 coefficients must be real (area)");
    }
}

namespace {
Complex ipow(Complex z, int p) {
    Complex acc(1.0, 0.0);
    for (int i = 0; i < p; ++i) acc *= z;
    return acc;
}
}  // namespace

double quad_check(const MarkerCurve& curve, const QuadratureData& qd, int K) {
    qd.validate();
    for (const Complex& node : qd.nodes) {
        if (!point_in_domain(curve, node)) {
            throw Error("quad_check: node lies outside the domain");
        }
    }
    const int n = curve.size();
    // conj(z) sampled exactly on the markers; f z_bar integrated by Stokes.
    std::vector<Complex> samples(n);
    for (int j = 0; j < n; ++j) samples[j] = std::conj(curve.markers()[j]);
    double worst = 0.0;
    for (int p = 0; p <= K; ++p) {
        if (p > 0) {
            for (int j = 0; j < n; ++j) samples[j] *= curve.markers()[j];
        }
        const Complex area_integral = Complex(0.0, -0.5) * contour_integral(curve, samples);
        Complex rhs(0.0, 0.0);
        for (size_t k = 0; k < qd.nodes.size(); ++k) {
            for (int j = 0; j < qd.multiplicities[k] && j <= p; ++j) {
                // d^j/dz^j z^p = p!/(p-j)! z^{p-j}
                double fall = 1.0;
                for (int i = 0; i < j; ++i) fall *= static_cast<double>(p - i);
                rhs += qd.coefficients[k][j] * fall * ipow(qd.nodes[k], p - j);
            }
        }
        worst = std::max(worst, std::abs(area_integral - rhs));
    }
    return worst;
}

QuadratureData quad_from_schwarz(const cauchy::SchwarzData& sd) {
    if (std::abs(sd.residue) < 1e-10) {
        throw Error("quad_from_schwarz: residue below 1e-10; not a quadrature domain of "
                    "order 1 at the origin");
    }
    QuadratureData qd;
    qd.nodes = {Complex(0.0, 0.0)};
    qd.multiplicities = {1};
    qd.coefficients = {{kPi * sd.residue}};
    qd.validate();
    return qd;
}

PolynomialMapDomain polynomial_map_curve(double a, double b, int n) {
    if (!(a > 2.0 * std::abs(b))) {
        throw Error("polynomial_map_curve: univalence requires a > 2|b|");
    }
    std::vector<Complex> markers(n);
    for (int j = 0; j < n; ++j) {
        const double th = 2.0 * kPi * j / n;
        const Complex w(std::cos(th), std::sin(th));
        markers[j] = a * w + b * w * w;
    }
    PolynomialMapDomain out{MarkerCurve::fromMarkers(std::move(markers)), {}};
    out.data.nodes = {Complex(0.0, 0.0)};
    if (b == 0.0) {
        out.data.multiplicities = {1};
        out.data.coefficients = {{Complex(kPi * a * a, 0.0)}};
    } else {
        out.data.multiplicities = {2};
        out.data.coefficients = {
            {Complex(kPi * (a * a + 2.0 * b * b), 0.0), Complex(kPi * a * a * b, 0.0)}};
    }
    out.data.validate();
    return out;
}

}  // namespace hs::quad
