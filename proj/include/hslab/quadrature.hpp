#pragma once

// Quadrature domains for Lebesgue measure: residual checks of the quadrature
// identity on monomials, extraction of order-1 data from Schwarz residues,
// and exact test domains as polynomial images of the unit disc.

#include "hslab/cauchy.hpp"
#include "hslab/core.hpp"

namespace hs::quad {

/// Nodes a_k with multiplicities n_k and coefficients c_kj, 0 <= j < n_k,
/// realizing int_Omega f dA = sum_k sum_j c_kj f^(j)(a_k) for integrable
/// holomorphic f.  Order = sum of multiplicities.
struct QuadratureData {
    std::vector<Complex> nodes;
    std::vector<int> multiplicities;
    std::vector<std::vector<Complex>> coefficients;  // coefficients[k][j] = c_kj

    int order() const;
    void validate() const;
};

/// Max over monomials f = z^j, j = 0..K, of the identity residual
/// |int_Omega f dA - sum c_kj f^(j)(a_k)|, with the area integral computed
/// by the Stokes boundary route -(i/2) \oint f(z) conj(z) dz using exact
/// conjugate samples at the markers.
double quad_check(const MarkerCurve& curve, const QuadratureData& qd, int K);

/// Order-1 data at the origin from a Schwarz function with a simple pole
/// there: node 0, c_0 = pi * residue.  Requires the model potential
/// phi_0 = |z|^2 (Lebesgue measure) and |residue| >= 1e-10.
QuadratureData quad_from_schwarz(const cauchy::SchwarzData& sd);

/// Image of the unit circle under w -> a w + b w^2 (univalent for
/// a > 2|b| >= 0), together with its exact quadrature data: node 0 with
/// multiplicity 2, c_00 = pi (a^2 + 2 b^2), c_01 = pi a^2 b; the derivative
/// term drops out when b = 0.
struct PolynomialMapDomain {
    MarkerCurve curve;
    QuadratureData data;
};
PolynomialMapDomain polynomial_map_curve(double a, double b, int n);

}  // namespace hs::quad
