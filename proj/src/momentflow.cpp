#include "hslab/momentflow.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace hs::momentflow {

namespace {

struct QuadCells {
    std::vector<Complex> centers;
    std::vector<double> weights;  // rho * h^2
};

QuadCells domain_cells(const MarkerCurve& curve, const DensityField& rho, double h) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const Complex& p : curve.markers()) {
        xmin = std::min(xmin, p.real());
        xmax = std::max(xmax, p.real());
        ymin = std::min(ymin, p.imag());
        ymax = std::max(ymax, p.imag());
    }
    const double margin = 2.0 * h;
    const int nx = static_cast<int>(std::ceil((xmax - xmin + 2 * margin) / h));
    const int ny = static_cast<int>(std::ceil((ymax - ymin + 2 * margin) / h));
    const ScalarGrid grid(Complex(xmin - margin + 0.5 * h, ymin - margin + 0.5 * h), h, nx, ny);
    const std::vector<uint8_t> inside = rasterize_indicator(curve, grid);
    QuadCells cells;
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            if (!inside[static_cast<size_t>(j) * nx + i]) continue;
            const Complex z = grid.point(i, j);
            cells.centers.push_back(z);
            cells.weights.push_back(rho(z) * h * h);
        }
    }
    return cells;
}

}  // namespace

NormalField::NormalField(MarkerCurve c, std::vector<double> v)
    : curve(std::move(c)), speeds(std::move(v)) {
    if (static_cast<int>(speeds.size()) != curve.size()) {
        throw Error("NormalField: one speed per marker required");
    }
    for (double s : speeds) {
        if (!std::isfinite(s)) throw Error("NormalField: non-finite speed");
    }
}

double potential_U(const MarkerCurve& curve, const DensityField& rho, Complex z,
                   double h_quad) {
    if (point_in_domain(curve, z)) {
        throw Error("potential_U: evaluation point must lie outside the domain");
    }
    if (distance_to_curve(curve, z) < 5.0 * h_quad) {
        throw Error("potential_U: evaluation point closer than 5 quadrature cells");
    }
    const QuadCells cells = domain_cells(curve, rho, h_quad);
    double acc = 0.0;
    for (size_t c = 0; c < cells.centers.size(); ++c) {
        acc += cells.weights[c] * 2.0 * std::log(std::abs(z - cells.centers[c]));
    }
    return acc;
}

std::vector<Complex> moment_coeffs(const MarkerCurve& curve, const DensityField& rho, int K,
                                   double R, double h_quad) {
    if (K < 1) throw Error("moment_coeffs: K must be at least 1");
    if (!(R > curve.circumradius())) {
        throw Error("moment_coeffs: extraction radius R must exceed the circumscribed "
                    "radius " +
                    std::to_string(curve.circumradius()));
    }
    const QuadCells cells = domain_cells(curve, rho, h_quad);
    constexpr int n_nodes = 256;
    // a_k = (1/2pi i) \oint G z^{k-1} dz discretizes to (1/n) sum_j G_j z_j^k
    // on equispaced circle nodes.
    std::vector<Complex> a(static_cast<size_t>(K), Complex(0.0, 0.0));
    for (int j = 0; j < n_nodes; ++j) {
        const double th = 2.0 * kPi * j / n_nodes;
        const Complex zj = R * Complex(std::cos(th), std::sin(th));
        Complex G(0.0, 0.0);
        for (size_t c = 0; c < cells.centers.size(); ++c) {
            G += cells.weights[c] / (zj - cells.centers[c]);
        }
        Complex zk = zj;
        for (int k = 1; k <= K; ++k) {
            a[k - 1] += G * zk;
            zk *= zj;
        }
    }
    for (Complex& ak : a) ak /= static_cast<double>(n_nodes);
    return a;
}

cauchy::BoundaryFunction g_from_field(const NormalField& nf, const DensityField& rho) {
    const int n = nf.curve.size();
    std::vector<Complex> g(n);
    for (int j = 0; j < n; ++j) {
        const Complex tau = nf.curve.tangents()[j];
        if (std::abs(tau) < 0.5) {
            throw Error("g_from_field: degenerate tangent at marker " + std::to_string(j));
        }
        g[j] = nf.speeds[j] * rho(nf.curve.markers()[j]) * std::conj(tau);
    }
    return cauchy::BoundaryFunction(nf.curve, std::move(g));
}

double MomentDerivative::maxDifference() const {
    double worst = 0.0;
    for (size_t k = 0; k < direct.size(); ++k) {
        worst = std::max(worst, std::abs(direct[k] - tail[k]));
    }
    return worst;
}

MomentDerivative moment_derivative(const NormalField& nf, const DensityField& rho, int K) {
    if (K < 0) throw Error("moment_derivative: K must be nonnegative");
    MomentDerivative out;
    out.direct.resize(static_cast<size_t>(K) + 1);
    out.tail.resize(static_cast<size_t>(K) + 1);

    // Direct transport route: d_k = \oint z^k V rho ds.
    const int n = nf.curve.size();
    std::vector<Complex> zk(n, Complex(1.0, 0.0));
    for (int k = 0; k <= K; ++k) {
        Complex acc(0.0, 0.0);
        for (int j = 0; j < n; ++j) {
            acc += zk[j] * nf.speeds[j] * rho(nf.curve.markers()[j]) *
                   nf.curve.dsWeights()[j];
            zk[j] *= nf.curve.markers()[j];
        }
        out.direct[k] = acc;
    }

    // Tail route through the Cauchy machinery: d_k = -2 pi i b_{k+1}.
    const cauchy::BoundaryFunction g = g_from_field(nf, rho);
    const cauchy::LaurentTail tail = cauchy::laurent_tail(g, K + 1);
    for (int k = 0; k <= K; ++k) {
        out.tail[k] = Complex(0.0, -2.0 * kPi) * tail.b(k + 1);
    }
    return out;
}

double injectivity_smallest_singular_value(const MarkerCurve& curve, const DensityField& rho,
                                           int M) {
    const int n = curve.size();
    const int n_modes = 2 * M + 1;
    Eigen::MatrixXd A(2 * (M + 1), n_modes);
    for (int mode = 0; mode < n_modes; ++mode) {
        std::vector<double> speeds(n);
        for (int j = 0; j < n; ++j) {
            const double th = 2.0 * kPi * j / n;
            if (mode == 0) {
                speeds[j] = 1.0;
            } else if (mode % 2 == 1) {
                speeds[j] = std::cos((mode + 1) / 2 * th);
            } else {
                speeds[j] = std::sin(mode / 2 * th);
            }
        }
        const MomentDerivative d = moment_derivative(NormalField(curve, speeds), rho, M);
        for (int k = 0; k <= M; ++k) {
            A(2 * k, mode) = d.direct[k].real();
            A(2 * k + 1, mode) = d.direct[k].imag();
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    return svd.singularValues()(svd.singularValues().size() - 1);
}

}  // namespace hs::momentflow
