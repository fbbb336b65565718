#pragma once

// Cauchy transforms on marker curves, the Sokhotski-Plemelj splitting, the
// Laurent tail of the exterior part at infinity, and the construction of a
// Schwarz-type function with a single simple pole at the origin.
//
// Normalization used everywhere: C[g](z) := (1/2pi i) \oint g(zeta)/(zeta-z)
// d zeta, so the boundary jump reads C_+ = g + C_-.

#include <functional>

#include "hslab/core.hpp"

namespace hs::cauchy {

/// Complex boundary data sampled at the markers of a curve.
struct BoundaryFunction {
    MarkerCurve curve;
    std::vector<Complex> values;

    BoundaryFunction(MarkerCurve c, std::vector<Complex> v);
    double supNorm() const;
};

/// Coefficients b_1..b_K of the exterior part C_-[g](z) = sum_k b_k z^-k.
struct LaurentTail {
    std::vector<Complex> coeffs;  // coeffs[k-1] = b_k

    Complex b(int k) const { return coeffs.at(static_cast<size_t>(k) - 1); }
    int order() const { return static_cast<int>(coeffs.size()); }
    /// Evaluate the truncated tail sum at z.
    Complex eval(Complex z) const;
};

/// C[g](z) by the spectral trapezoid rule.  Defines f_+ for z inside the
/// curve and f_- outside.  Requires dist(z, curve) >= 5 * max marker spacing.
Complex cauchy_eval(const BoundaryFunction& bf, Complex z);

/// Maximum over markers m of |C(m - eps n) - g(m) - C(m + eps n)| with n the
/// outward normal; O(eps) for smooth data.  eps must lie in
/// [2 * spacing, 0.1 * diameter].
double plemelj_residual(const BoundaryFunction& bf, double offset);

/// b_k = -(1/2pi i) \oint g(zeta) zeta^{k-1} d zeta for k = 1..K.
LaurentTail laurent_tail(const BoundaryFunction& bf, int K);

/// Result of the Schwarz construction: S(z) = C[g](z) + residue / z is
/// holomorphic on the interior punctured at the origin and matches the
/// z-derivative of the extended potential on the boundary.
struct SchwarzData {
    MarkerCurve curve;
    std::vector<Complex> boundary_datum;  // samples of d(phi_0)/dz at markers
    Complex residue;                      // coefficient of 1/z in S, equals -b_1
    LaurentTail tail;                     // b_1..b_K of the exterior part

    /// Interior evaluation of S; same proximity requirement as cauchy_eval.
    Complex eval(Complex z) const;
};

/// Build SchwarzData from boundary samples of d(phi_0)/dz.  The origin must
/// lie strictly inside the curve.  Default tail length K = 20.
SchwarzData schwarz_construct(const MarkerCurve& curve, std::vector<Complex> phi0_dz,
                              int tail_length = 20);

/// Extended potential phi(z) = phi_0(z) + h(z) at an exterior point, where
/// h = 2 Re F and F is the z-primitive of the residue-free exterior part
/// f_tilde = C_-[g] - (-residue)/z.  Uses the Laurent series for
/// |z| > 2 R_Omega and Gauss-Legendre path integration from the anchor
/// circle otherwise.
double phi_extension(const SchwarzData& sd, const std::function<double(Complex)>& phi0,
                     Complex z);

}  // namespace hs::cauchy
