#include "hslab/potentials.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace hs::potentials {

namespace {

double mollifier_shape(double s) {
    // Standard C-infinity bump on (-1, 1).
    if (std::abs(s) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - s * s));
}

// Quintic radial blend between r^2 at r = 1 and log(1 + r^2) + C at r = 2,
// matching value, slope and curvature at both ends.  C is chosen so the
// interpolant stays subharmonic: C = 3 works (verified by the unit tests).
struct PsiQuintic {
    std::array<double, 6> c{};
    PsiQuintic() {
        constexpr double C = 3.0;
        const double v2 = std::log(5.0) + C;
        const double d2 = 2.0 * 2.0 / 5.0;          // d/dr log(1+r^2) at 2
        const double s2 = 2.0 * (1.0 - 4.0) / 25.0;  // second derivative at 2
        // Conditions: p(1)=1, p'(1)=2, p''(1)=2, p(2)=v2, p'(2)=d2, p''(2)=s2.
        double A[6][7] = {};
        const double targets[6] = {1.0, 2.0, 2.0, v2, d2, s2};
        for (int row = 0; row < 6; ++row) {
            const double r = (row < 3) ? 1.0 : 2.0;
            const int deriv = row % 3;
            for (int k = 0; k < 6; ++k) {
                double coef = 1.0;
                for (int d = 0; d < deriv; ++d) coef *= (k - d);
                const int p = k - deriv;
                A[row][k] = (p < 0) ? 0.0 : coef * std::pow(r, p);
            }
            A[row][6] = targets[row];
        }
        // Gaussian elimination with partial pivoting on the 6x7 tableau.
        for (int col = 0; col < 6; ++col) {
            int piv = col;
            for (int row = col + 1; row < 6; ++row) {
                if (std::abs(A[row][col]) > std::abs(A[piv][col])) piv = row;
            }
            std::swap(A[col], A[piv]);
            for (int row = col + 1; row < 6; ++row) {
                const double fac = A[row][col] / A[col][col];
                for (int k = col; k < 7; ++k) A[row][k] -= fac * A[col][k];
            }
        }
        for (int row = 5; row >= 0; --row) {
            double acc = A[row][6];
            for (int k = row + 1; k < 6; ++k) acc -= A[row][k] * c[k];
            c[row] = acc / A[row][row];
        }
    }
    double eval(double r) const {
        double acc = 0.0;
        for (int k = 5; k >= 0; --k) acc = acc * r + c[k];
        return acc;
    }
};

const PsiQuintic& psi_quintic() {
    static const PsiQuintic q;
    return q;
}

}  // namespace

double psi_reference(Complex z) {
    const double r = std::abs(z);
    if (r <= 1.0) return r * r;
    if (r >= 2.0) return std::log(1.0 + r * r) + 3.0;
    return psi_quintic().eval(r);
}

BumpFunction::BumpFunction(double half_width) : a_(half_width) {
    if (!(a_ > 0.0)) throw Error("BumpFunction: half-width must be positive");
    const QuadRule rule = gauss_legendre(64);
    nodes_.resize(64);
    weights_.resize(64);
    double raw = 0.0;
    for (int q = 0; q < 64; ++q) {
        nodes_[q] = -a_ + 2.0 * a_ * rule.nodes[q];
        const double fv = mollifier_shape(nodes_[q] / a_) / a_;
        weights_[q] = 2.0 * a_ * rule.weights[q] * fv;
        raw += weights_[q];
    }
    // Normalize so the quadrature mass is exactly one; the continuum integral
    // then differs from one only by the Gauss-Legendre error on the bump.
    norm_ = 1.0 / raw;
    for (double& w : weights_) w *= norm_;
    sup_ = norm_ * mollifier_shape(0.0) / a_;
}

double BumpFunction::operator()(double lambda) const {
    return norm_ * mollifier_shape(lambda / a_) / a_;
}

double reg_max_point(double alpha, double beta, const BumpFunction& f) {
    const double gap = alpha - beta;
    const double a = f.halfWidth();
    if (gap >= a) return alpha;
    if (gap <= -a) return beta;
    double acc = 0.0;
    const auto& nodes = f.nodes();
    const auto& weights = f.weights();
    for (size_t q = 0; q < nodes.size(); ++q) {
        acc += weights[q] * std::max(alpha, beta + nodes[q]);
    }
    return acc;
}

ScalarGrid reg_max(const ScalarGrid& alpha, const ScalarGrid& beta, const BumpFunction& f) {
    if (!alpha.sameLayout(beta)) throw Error("reg_max: grids must share layout");
    ScalarGrid out(alpha.origin, alpha.h, alpha.nx, alpha.ny);
    for (size_t i = 0; i < out.values.size(); ++i) {
        out.values[i] = reg_max_point(alpha.values[i], beta.values[i], f);
    }
    return out;
}

C2Norms discrete_c2_norms(const ScalarGrid& g) {
    C2Norms n;
    const double h = g.h;
    for (int j = 1; j + 1 < g.ny; ++j) {
        for (int i = 1; i + 1 < g.nx; ++i) {
            const double v = g.at(i, j);
            n.c0 = std::max(n.c0, std::abs(v));
            const double dx = (g.at(i + 1, j) - g.at(i - 1, j)) / (2 * h);
            const double dy = (g.at(i, j + 1) - g.at(i, j - 1)) / (2 * h);
            n.c1 = std::max(n.c1, std::max(std::abs(dx), std::abs(dy)));
            const double dxx = (g.at(i + 1, j) - 2 * v + g.at(i - 1, j)) / (h * h);
            const double dyy = (g.at(i, j + 1) - 2 * v + g.at(i, j - 1)) / (h * h);
            const double dxy = (g.at(i + 1, j + 1) - g.at(i + 1, j - 1) - g.at(i - 1, j + 1) +
                                g.at(i - 1, j - 1)) /
                               (4 * h * h);
            n.c2 = std::max({n.c2, std::abs(dxx), std::abs(dyy), std::abs(dxy)});
        }
    }
    return n;
}

RegMaxBoundCheck reg_max_bound_check(const ScalarGrid& alpha, const ScalarGrid& beta,
                                     const BumpFunction& f) {
    const ScalarGrid u = reg_max(alpha, beta, f);
    ScalarGrid diff_ua(alpha.origin, alpha.h, alpha.nx, alpha.ny);
    ScalarGrid diff_ab(alpha.origin, alpha.h, alpha.nx, alpha.ny);
    for (size_t i = 0; i < u.values.size(); ++i) {
        diff_ua.values[i] = u.values[i] - alpha.values[i];
        diff_ab.values[i] = alpha.values[i] - beta.values[i];
    }
    const C2Norms lhs = discrete_c2_norms(diff_ua);
    const C2Norms ab = discrete_c2_norms(diff_ab);
    RegMaxBoundCheck out;
    out.lhs = lhs.norm();
    out.rhs = f.halfWidth() + ab.norm() + ab.c1 * ab.c1 * f.supNorm();
    out.holds = out.lhs <= 1.1 * out.rhs;
    return out;
}

GlueResult glue_potential(const std::function<double(Complex)>& phi, double eps) {
    if (!(eps > 0.0)) throw Error("glue_potential: eps must be positive");
    auto g = [&](Complex z) { return phi(z) - std::norm(z); };

    // C with |g(z)| <= C |z|^2 on the unit ball, estimated on a polar lattice
    // away from the origin where the ratio degenerates to 0/0.
    double C = 0.0;
    for (int ir = 1; ir <= 20; ++ir) {
        const double r = 0.05 * ir;
        for (int it = 0; it < 32; ++it) {
            const double th = 2.0 * kPi * it / 32;
            const Complex z = r * Complex(std::cos(th), std::sin(th));
            C = std::max(C, std::abs(g(z)) / (r * r));
        }
    }

    // Discrete C2 norm of g on B_R via finite differences of the evaluator.
    auto g_c2_on_ball = [&](double R) {
        const int n = 41;
        const double h = 2.2 * R / (n - 1);
        ScalarGrid gg(Complex(-1.1 * R, -1.1 * R), h, n, n);
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) gg.at(i, j) = g(gg.point(i, j));
        }
        return discrete_c2_norms(gg).norm();
    };

    GlueResult out;
    out.delta1 = eps / 50.0;
    double R = 0.19;
    bool found = false;
    while (R > 1e-9) {
        if (g_c2_on_ball(R) <= eps / 100.0 && C * R <= eps / 100.0) {
            found = true;
            break;
        }
        R *= 0.85;
    }
    if (!found) {
        throw Error("glue_potential: no admissible gluing radius R for this eps "
                    "(eps too large relative to the cubic remainder of phi)");
    }
    out.R = R;
    out.delta2 = out.delta1 * R * R / 2.0;
    out.a = out.delta1 * R * R / 8.0;
    const BumpFunction bump(out.a);

    auto beta = [&](Complex z) { return (1.0 - out.delta1) * phi(z) + out.delta2; };
    auto phi_eps = [&](Complex z) {
        if (std::abs(z) > R) return psi_reference(z);
        return reg_max_point(psi_reference(z), beta(z), bump);
    };

    // Fine lattice resolving the ball B_R.
    {
        const int n = 161;
        const double h = 2.4 * R / (n - 1);
        out.local_grid = ScalarGrid(Complex(-1.2 * R, -1.2 * R), h, n, n);
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) {
                out.local_grid.at(i, j) = phi_eps(out.local_grid.point(i, j));
            }
        }
    }
    // Global lattice covering the unit disc and a margin beyond it.
    {
        const int n = 121;
        const double h = 2.4 / (n - 1);
        out.global_grid = ScalarGrid(Complex(-1.2, -1.2), h, n, n);
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) {
                out.global_grid.at(i, j) = phi_eps(out.global_grid.point(i, j));
            }
        }
    }

    // Conclusion (1): largest lattice radius on which phi_eps equals the
    // scaled copy bitwise (the exact branch of the regularized maximum).
    {
        double r_ok = 0.0;
        bool blocked = false;
        const int steps = 64;
        for (int s = 1; s <= steps && !blocked; ++s) {
            const double r = R * s / steps;
            for (int it = 0; it < 64; ++it) {
                const double th = 2.0 * kPi * it / 64;
                const Complex z = r * Complex(std::cos(th), std::sin(th));
                if (phi_eps(z) != beta(z)) {
                    blocked = true;
                    break;
                }
            }
            if (!blocked) r_ok = r;
        }
        out.r = r_ok;
        out.scaled_copy_near_origin = r_ok >= 0.1 * R;
    }

    // Conclusion (2): phi_eps == psi outside the unit disc (bitwise by
    // construction; validated on the global lattice).
    {
        bool ok = true;
        for (int j = 0; j < out.global_grid.ny && ok; ++j) {
            for (int i = 0; i < out.global_grid.nx; ++i) {
                const Complex z = out.global_grid.point(i, j);
                if (std::abs(z) > 1.0 && out.global_grid.at(i, j) != psi_reference(z)) {
                    ok = false;
                    break;
                }
            }
        }
        out.equals_psi_outside = ok;
    }

    // Conclusion (3): discrete C2 distance to psi.  The difference is
    // supported in B_R, so the fine lattice sees all of it.
    {
        ScalarGrid diff = out.local_grid;
        for (int j = 0; j < diff.ny; ++j) {
            for (int i = 0; i < diff.nx; ++i) {
                diff.at(i, j) -= psi_reference(diff.point(i, j));
            }
        }
        out.c2_distance_to_psi = discrete_c2_norms(diff).norm();
        out.c2_close = out.c2_distance_to_psi < eps;
    }

    // Discrete subharmonicity on both lattices.
    {
        auto subharmonic = [](const ScalarGrid& grid) {
            for (int j = 1; j + 1 < grid.ny; ++j) {
                for (int i = 1; i + 1 < grid.nx; ++i) {
                    const double lap = grid.at(i + 1, j) + grid.at(i - 1, j) +
                                       grid.at(i, j + 1) + grid.at(i, j - 1) -
                                       4.0 * grid.at(i, j);
                    if (!(lap > 0.0)) return false;
                }
            }
            return true;
        };
        out.subharmonic = subharmonic(out.local_grid) && subharmonic(out.global_grid);
    }
    return out;
}

}  // namespace hs::potentials
