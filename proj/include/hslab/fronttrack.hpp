#pragma once

// Classical front tracking: the pressure is the Green function of the
// evolving domain with a unit source at the origin (p = -(1/2pi) log|z| + h,
// h harmonic with h = (1/2pi) log|z| on the boundary, so p vanishes there),
// solved by a double-layer Nystrom discretization on the markers; markers
// advance with normal speed kappa (-dp/dn).

#include "hslab/core.hpp"
#include "hslab/moments.hpp"

namespace hs::fronttrack {

/// Green-function pressure of the current domain.
class PressureSolution {
public:
    /// Outward normal derivative at each marker (all negative: outward flux).
    const std::vector<double>& dpdn() const { return dpdn_; }
    /// Total boundary flux \oint (-dp/dn) ds; equals 1 up to quadrature.
    double flux() const { return flux_; }
    /// Interior pressure evaluation (markers' quadrature resolution limits
    /// accuracy within ~2 spacings of the boundary).
    double evalInterior(Complex z) const;

private:
    friend PressureSolution green_pressure(const MarkerCurve& curve);
    explicit PressureSolution(MarkerCurve curve) : curve_(std::move(curve)) {}

    MarkerCurve curve_;
    std::vector<double> density_;  // double-layer density at markers
    std::vector<double> dpdn_;
    double flux_ = 0.0;
};

PressureSolution green_pressure(const MarkerCurve& curve);

/// One explicit Euler step: markers move by dt * kappa * (-dp/dn) along the
/// outward normal, with kappa = 1/rho, then the curve is resampled to its
/// original marker count.  Enforces the step cap
/// dt * max|kappa dp/dn| <= 0.5 * spacing.  Negative dt (backward flow)
/// must be enabled explicitly and is ill-posed for non-analytic boundaries.
/// A precomputed pressure solution for this curve may be supplied.
MarkerCurve advance(const MarkerCurve& curve, const DensityField& rho, double dt,
                    bool allow_backward = false, const PressureSolution* pressure = nullptr);

struct ClassicalRunOptions {
    int moment_K = 4;
    int frame_stride = 1;   // keep every k-th step as a frame
    bool allow_backward = false;
    double moment_h = 1.0 / 256.0;  // grid fallback for sampled densities
};

struct ClassicalFrame {
    double t = 0.0;
    MarkerCurve boundary;
};

struct ClassicalRunResult {
    std::vector<ClassicalFrame> frames;
    moments::MomentSeries series;
    double min_flux = 0.0;  // extremes of the per-step flux normalization
    double max_flux = 0.0;
};

/// Explicit Euler time stepping with per-step resampling; areas must be
/// strictly increasing (forward time).  Frame moments use the exact
/// potential derivative for constant and affine densities and grid
/// quadrature otherwise.
ClassicalRunResult run_classical(const MarkerCurve& omega0, const DensityField& rho, double T,
                                 double dt, const ClassicalRunOptions& options = {});

/// Boundary samples of d(phi_0)/dz for a density with exact polynomial
/// potential: constant rho -> rho conj(z); affine rho = c0 + c1 x + c2 y ->
/// c0 conj(z) + beta z conj(z) + conj(beta) conj(z)^2 / 2 ... (the closed
/// form with Lap phi_0 = rho).  Throws for sampled densities.
std::vector<Complex> exact_potential_dz(const MarkerCurve& curve, const DensityField& rho);

/// Whether exact_potential_dz is available for this density.
bool has_exact_potential(const DensityField& rho);

}  // namespace hs::fronttrack
