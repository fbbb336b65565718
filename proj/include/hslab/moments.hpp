#pragma once

// Complex moments M_k = int_Omega z^k rho dA by area and boundary
// quadrature, the logarithmic potential with Lap phi_0 = rho, and the
// conservation drift monitor.
//
// With the Wirtinger Laplacian convention (Lap = d^2/dz dzbar) the model
// potential |z|^2 has Lap |z|^2 = 1 and the boundary route
// M_k = -(i/2) \oint z^k (d phi_0/dz) dz holds exactly whenever
// Lap phi_0 = rho on the closed domain.

#include "hslab/core.hpp"

namespace hs::moments {

/// Time-indexed vectors of complex moments M_0..M_K.
struct MomentSeries {
    std::vector<double> times;
    std::vector<std::vector<Complex>> values;  // values[t][k] = M_k

    void validate() const;
};

/// Midpoint-rule moments over cells whose centers lie inside the curve, on
/// an internal cell-centered grid covering the curve with margin 10h.
std::vector<Complex> moments_grid(const MarkerCurve& curve, const DensityField& rho, int K,
                                  double h);

/// Boundary route: M_k = -(i/2) \oint z^k (d phi_0/dz) dz with the
/// derivative samples given at markers.  Spectrally accurate.
std::vector<Complex> moments_boundary(const MarkerCurve& curve,
                                      std::span<const Complex> phi0_dz, int K);

/// Logarithmic potential of rho sampled on the grid:
/// phi_0(z) = sum_cells (2/pi) log|z - w| rho(w) h^2, with the singular cell
/// replaced by the equal-area-disc potential (smooth C^1 kernel).  Satisfies
/// the discrete Wirtinger Laplacian residual |Lap_h phi_0 - rho| <= 0.05 rho
/// away from the box edge.
ScalarGrid newtonian_potential(const DensityField& rho, const ScalarGrid& grid);

/// Pointwise z-derivative of the same potential sum; usable on and off the
/// source lattice (the near-cell kernel is the equal-area-disc model).
Complex newtonian_potential_dz(const DensityField& rho, const ScalarGrid& grid, Complex z);

/// Drift diagnostics: entry k = 0 measures |M_0(t) - M_0(t_0) - (t - t_0)|
/// (unit injection clock), entries k >= 1 measure |M_k(t) - M_k(t_0)|; each
/// maximized over the series.
std::vector<double> richardson_drift(const MomentSeries& series);

}  // namespace hs::moments
