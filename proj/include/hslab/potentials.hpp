#pragma once

// Regularized maximum of two potentials and the subharmonic gluing
// construction that deforms a model potential into a rotation-invariant one
// away from the origin while keeping a scaled copy of the input near it.

#include <functional>

#include "hslab/core.hpp"

namespace hs::potentials {

/// Smooth even bump supported in (-a, a), nonnegative, with unit integral
/// under the 64-node Gauss-Legendre rule used by reg_max (so the equality
/// clauses of the regularized maximum are exact).  Sup norm <= 2/a.
class BumpFunction {
public:
    explicit BumpFunction(double half_width);

    double halfWidth() const { return a_; }
    double supNorm() const { return sup_; }
    double operator()(double lambda) const;

    /// Nodes/weights of the normalized quadrature sum_q w_q f(l_q) = 1.
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }

private:
    double a_;
    double norm_;
    double sup_;
    std::vector<double> nodes_;    // lambda values in (-a, a)
    std::vector<double> weights_;  // quadrature weights including f values
};

/// u(z) = int max{alpha(z), beta(z) + lambda} f(lambda) d lambda, evaluated
/// pointwise: exact branch when |alpha - beta| >= a, 64-node Gauss-Legendre
/// otherwise.
double reg_max_point(double alpha, double beta, const BumpFunction& f);
ScalarGrid reg_max(const ScalarGrid& alpha, const ScalarGrid& beta, const BumpFunction& f);

/// Discrete C0/C1/C2 norm data on the grid interior (centered first
/// differences, all second-difference stencils).
struct C2Norms {
    double c0 = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double norm() const { return std::max(c0, std::max(c1, c2)); }
};
C2Norms discrete_c2_norms(const ScalarGrid& g);

/// Both sides of the bound  ||u - alpha||_C2 <= a + ||alpha - beta||_C2 +
/// ||d alpha - d beta||_C0^2 ||f||_C0,  evaluated discretely.
struct RegMaxBoundCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;  // lhs <= 1.1 * rhs (discretization allowance)
};
RegMaxBoundCheck reg_max_bound_check(const ScalarGrid& alpha, const ScalarGrid& beta,
                                     const BumpFunction& f);

/// Gluing construction.  Input: phi with phi(z) = |z|^2 + g(z), g = O(|z|^3),
/// and a closeness target eps.  Output potential equals a scaled copy
/// (1 - delta1) phi + delta2 of the input on a ball B_r, equals the
/// rotation-invariant psi outside B_R, and is eps-close to psi in the
/// discrete C2 norm.  The constants follow the repaired recipe
///   delta1 = eps/50,  delta2 = delta1 R^2 / 2,  a = delta1 R^2 / 8,
/// with R chosen so that ||g||_{C2(B_R)} <= eps/100 and C R <= eps/100
/// (C = sup |g|/|z|^2 on the unit ball); these margins make all three
/// conclusions hold simultaneously.
struct GlueResult {
    double R = 0.0;
    double delta1 = 0.0;
    double delta2 = 0.0;
    double a = 0.0;
    double r = 0.0;  // radius of the ball where phi_eps == (1-delta1) phi + delta2
    bool scaled_copy_near_origin = false;   // conclusion (1)
    bool equals_psi_outside = false;        // conclusion (2)
    double c2_distance_to_psi = 0.0;        // measured for conclusion (3)
    bool c2_close = false;                  // conclusion (3)
    bool subharmonic = false;               // discrete Lap phi_eps > 0
    ScalarGrid global_grid;  // phi_eps sampled on the global box
    ScalarGrid local_grid;   // phi_eps sampled on the fine box around B_R
};

GlueResult glue_potential(const std::function<double(Complex)>& phi, double eps);

/// The rotation-invariant reference potential: |z|^2 on the unit disc,
/// radial quintic interpolation on 1 <= |z| <= 2, log(1 + |z|^2) + const
/// beyond.
double psi_reference(Complex z);

}  // namespace hs::potentials
