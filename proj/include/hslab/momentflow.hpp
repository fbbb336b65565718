#pragma once

// Inverse-potential machinery: logarithmic domain potentials, moment
// coefficients read off the Cauchy transform of the domain, and the two
// routes for the first variation of moments under a normal vector field.

#include "hslab/cauchy.hpp"
#include "hslab/core.hpp"

namespace hs::momentflow {

/// Signed normal speed sampled at markers; positive points outward.
struct NormalField {
    MarkerCurve curve;
    std::vector<double> speeds;

    NormalField(MarkerCurve c, std::vector<double> v);
};

/// U(z) = int_Omega log|z - w|^2 rho(w) dA(w) by grid quadrature over cells
/// inside the curve (internal cell size h_quad).  z must be exterior with
/// dist >= 5 h_quad.
double potential_U(const MarkerCurve& curve, const DensityField& rho, Complex z,
                   double h_quad = 1.0 / 256.0);

/// Coefficients a_k = (1/2pi i) \oint_{|z|=R} G(z) z^{k-1} dz, k = 1..K,
/// where G is the Cauchy transform of rho restricted to the domain,
/// evaluated at 256 circle nodes by grid quadrature.  a_k = M_{k-1} + O(h).
std::vector<Complex> moment_coeffs(const MarkerCurve& curve, const DensityField& rho, int K,
                                   double R, double h_quad = 1.0 / 256.0);

/// The one-form density g with g dz = V rho ds along the curve:
/// g(m) = V(m) rho(m) conj(tangent(m)).
cauchy::BoundaryFunction g_from_field(const NormalField& nf, const DensityField& rho);

/// First variation of moments along the field, by two routes:
///   direct[k] = \oint z^k V rho ds       (transport theorem)
///   tail[k]   = -2 pi i b_{k+1}          (Laurent tail of g_from_field)
/// for k = 0..K.
struct MomentDerivative {
    std::vector<Complex> direct;
    std::vector<Complex> tail;
    double maxDifference() const;
};
MomentDerivative moment_derivative(const NormalField& nf, const DensityField& rho, int K);

/// Smallest singular value of the (2M+2) x (2M+1) real matrix mapping the
/// Fourier modes {1, cos, sin, ..., cos M, sin M} of the normal speed on the
/// given curve to the derivative vectors (d_0..d_M).
double injectivity_smallest_singular_value(const MarkerCurve& curve, const DensityField& rho,
                                           int M);

}  // namespace hs::momentflow
