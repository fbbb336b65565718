#include "hslab/cauchy.hpp"

#include <algorithm>
#include <cmath>

namespace hs::cauchy {

namespace {

// Raw trapezoid Cauchy sum without the proximity guard; plemelj_residual
// deliberately evaluates closer to the curve than the public guard allows.
Complex cauchy_sum(const MarkerCurve& curve, const std::vector<Complex>& values, Complex z) {
    const auto& m = curve.markers();
    const auto& w = curve.dzWeights();
    Complex acc(0.0, 0.0);
    for (size_t j = 0; j < values.size(); ++j) {
        acc += values[j] / (m[j] - z) * w[j];
    }
    return acc / Complex(0.0, 2.0 * kPi);
}

double curve_diameter(const MarkerCurve& curve) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const Complex& p : curve.markers()) {
        xmin = std::min(xmin, p.real());
        xmax = std::max(xmax, p.real());
        ymin = std::min(ymin, p.imag());
        ymax = std::max(ymax, p.imag());
    }
    return std::max(xmax - xmin, ymax - ymin);
}

}  // namespace

BoundaryFunction::BoundaryFunction(MarkerCurve c, std::vector<Complex> v)
    : curve(std::move(c)), values(std::move(v)) {
    if (static_cast<int>(values.size()) != curve.size()) {
        throw Error("BoundaryFunction: one value per marker required");
    }
    for (const Complex& x : values) {
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
            throw Error("BoundaryFunction: non-finite boundary value");
        }
    }
}

double BoundaryFunction::supNorm() const {
    double s = 0.0;
    for (const Complex& v : values) s = std::max(s, std::abs(v));
    return s;
}

Complex LaurentTail::eval(Complex z) const {
    Complex acc(0.0, 0.0);
    Complex zk(1.0, 0.0);
    for (const Complex& b : coeffs) {
        zk /= z;
        acc += b * zk;
    }
    return acc;
}

Complex cauchy_eval(const BoundaryFunction& bf, Complex z) {
    const double min_dist = 5.0 * bf.curve.maxSpacing();
    if (distance_to_curve(bf.curve, z) < min_dist) {
        throw Error("cauchy_eval: evaluation point closer to the curve than the minimum "
                    "allowed distance " +
                    std::to_string(min_dist));
    }
    return cauchy_sum(bf.curve, bf.values, z);
}

double plemelj_residual(const BoundaryFunction& bf, double offset) {
    const double lo = 2.0 * bf.curve.maxSpacing();
    const double hi = 0.1 * curve_diameter(bf.curve);
    if (offset < lo || offset > hi) {
        throw Error("plemelj_residual: offset " + std::to_string(offset) +
                    " outside admissible range [" + std::to_string(lo) + ", " +
                    std::to_string(hi) + "]");
    }
    const auto& m = bf.curve.markers();
    const std::vector<Complex> normals = bf.curve.outwardNormals();
    double worst = 0.0;
    for (int j = 0; j < bf.curve.size(); ++j) {
        const Complex inner = cauchy_sum(bf.curve, bf.values, m[j] - offset * normals[j]);
        const Complex outer = cauchy_sum(bf.curve, bf.values, m[j] + offset * normals[j]);
        worst = std::max(worst, std::abs(inner - bf.values[j] - outer));
    }
    return worst;
}

LaurentTail laurent_tail(const BoundaryFunction& bf, int K) {
    if (K < 1) throw Error("laurent_tail: K must be at least 1");
    LaurentTail tail;
    tail.coeffs.resize(K);
    const int n = bf.curve.size();
    std::vector<Complex> samples(n);
    // zeta^{k-1} built up incrementally across k.
    std::vector<Complex> zk(n, Complex(1.0, 0.0));
    for (int k = 1; k <= K; ++k) {
        for (int j = 0; j < n; ++j) samples[j] = bf.values[j] * zk[j];
        tail.coeffs[k - 1] =
            -contour_integral(bf.curve, samples) / Complex(0.0, 2.0 * kPi);
        for (int j = 0; j < n; ++j) zk[j] *= bf.curve.markers()[j];
    }
    return tail;
}

Complex SchwarzData::eval(Complex z) const {
    const double min_dist = 5.0 * curve.maxSpacing();
    if (distance_to_curve(curve, z) < min_dist) {
        throw Error("SchwarzData::eval: point closer to the curve than " +
                    std::to_string(min_dist));
    }
    return cauchy_sum(curve, boundary_datum, z) + residue / z;
}

SchwarzData schwarz_construct(const MarkerCurve& curve, std::vector<Complex> phi0_dz,
                              int tail_length) {
    if (!point_in_domain(curve, Complex(0.0, 0.0))) {
        throw Error("schwarz_construct: origin must lie strictly inside the curve");
    }
    BoundaryFunction bf(curve, phi0_dz);
    SchwarzData sd{curve, std::move(phi0_dz), Complex(0.0, 0.0),
                   laurent_tail(bf, std::max(2, tail_length))};
    sd.residue = -sd.tail.b(1);
    return sd;
}

double phi_extension(const SchwarzData& sd, const std::function<double(Complex)>& phi0,
                     Complex z) {
    const double min_dist = 5.0 * sd.curve.maxSpacing();
    if (point_in_domain(sd.curve, z) || distance_to_curve(sd.curve, z) < min_dist) {
        throw Error("phi_extension: point must be exterior with distance at least " +
                    std::to_string(min_dist));
    }
    const double r_omega = sd.curve.circumradius();

    // F with dF/dz = f_tilde, from the Laurent series where it converges.
    auto tail_primitive = [&](Complex w) {
        Complex acc(0.0, 0.0);
        Complex wk = 1.0 / w;  // w^{-(k-1)} for k = 2 at first use
        for (int k = 2; k <= sd.tail.order(); ++k) {
            acc -= sd.tail.b(k) * wk / static_cast<double>(k - 1);
            wk /= w;
        }
        return acc;
    };
    auto f_tilde = [&](Complex w) {
        return cauchy_sum(sd.curve, sd.boundary_datum, w) + sd.residue / w;
    };

    Complex F;
    if (std::abs(z) > 2.0 * r_omega) {
        F = tail_primitive(z);
    } else {
        // Anchor on the circle |w| = 2 R_Omega along the ray of z; the
        // radial segment stays exterior for desk-scale smooth curves.
        const Complex anchor = 2.0 * r_omega * z / std::abs(z);
        const double len = std::abs(z - anchor);
        const int n_nodes = std::max(8, static_cast<int>(std::ceil(32.0 * len)));
        const QuadRule rule = gauss_legendre(n_nodes);
        Complex path(0.0, 0.0);
        const Complex dir = z - anchor;
        for (int q = 0; q < n_nodes; ++q) {
            path += rule.weights[q] * f_tilde(anchor + rule.nodes[q] * dir);
        }
        F = tail_primitive(anchor) + path * dir;
    }
    return phi0(z) + 2.0 * F.real();
}

}  // namespace hs::cauchy
