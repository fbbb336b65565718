#pragma once

// Weak Hele-Shaw flow as a grid obstacle problem solved by projected SOR.
//
// Continuum problem (Wirtinger Laplacian):  -Lap u - f >= 0, u >= 0,
// (-Lap u - f) u = 0 with source f = rho (chi_{Omega_0} - 1) + t delta_0.
// The injection Dirac is realized exactly on the lattice as t Lap_h N with
// N = (2/pi) log|z|, so the discrete solution carries the logarithmic
// profile without discretization error from the point source; this is
// algebraically identical to the classical log-splitting u = w - t N with
// smooth obstacle data for w.  Cell-centered grids keep the origin off the
// lattice.

#include <optional>

#include "hslab/cauchy.hpp"
#include "hslab/core.hpp"
#include "hslab/moments.hpp"

namespace hs::obstacle {

/// Grid obstacle problem with injection mass t at the origin.
struct ObstacleProblem {
    ScalarGrid ftilde;         // bounded source part rho (chi_{Omega_0} - 1)
    double t = 0.0;            // injected mass
    double lower_bound = 0.0;  // pointwise constraint u >= lower_bound

    void validate() const;
};

/// Converged PSOR solution.
struct WeakSolution {
    ScalarGrid u;
    std::vector<uint8_t> coincidence;  // 1 where u sits on the obstacle
    int iterations = 0;
    double last_update = 0.0;
    std::optional<MarkerCurve> boundary;  // filled by weak_flow
};

/// Discrete Dirac: Lap_h applied to N = (2/pi) log|z| on interior cells;
/// sums to 1 + O(h^2) times the cell area.
std::vector<double> discrete_dirac(const ScalarGrid& grid);

/// Projected SOR with fixed red-black ordering.  omega in (1, 2); converged
/// when the max update of a sweep drops below tol.  Throws a non-convergence
/// error carrying the last update when maxiter is exceeded.  warm optionally
/// seeds the iteration (must be feasible).
WeakSolution psor_solve(const ObstacleProblem& p, double omega, double tol, int maxiter,
                        const ScalarGrid* warm = nullptr);

/// Pointwise complementarity residual min(u - lb, -Lap_h u - f) with the
/// discrete source f = ftilde + t * dirac_h; min/max over interior cells.
struct ComplementarityRange {
    double lo = 0.0;
    double hi = 0.0;
};
ComplementarityRange complementarity_range(const ObstacleProblem& p, const ScalarGrid& u);

/// Marching-squares extraction of the level set {field = level}: largest
/// closed loop, counterclockwise, resampled to n_markers.  The returned
/// curve is pushed outward by sqrt(level / (2 rho)) along the normal to
/// remove the first-order threshold bias of the quadratic free-boundary
/// profile.
MarkerCurve extract_free_boundary(const ScalarGrid& u, const DensityField& rho, double level,
                                  int n_markers);

struct WeakFlowOptions {
    double omega = 0.0;  // 0: near-optimal SOR factor for the grid
    double tol = 1e-10;
    int maxiter = 200000;
    int n_markers = 256;
    int moment_K = 4;
    double moment_h = 0.0;  // 0: half the solver cell size
    double threshold = 0.0;  // 0: h^2
};

struct WeakFrame {
    double t = 0.0;
    std::optional<MarkerCurve> boundary;  // empty only for t = 0 empty start
    ScalarGrid u;
    double mass_balance_error = 0.0;  // |rho-mass growth - t|
};

struct WeakFlowResult {
    std::vector<WeakFrame> frames;
    moments::MomentSeries series;
    Box box;
    double h = 0.0;
};

/// Weak Hele-Shaw flow at the listed times (nonnegative, increasing).
/// Mass balance per frame measures the rho-mass of the residual-derived
/// domain coverage against the injected mass t; the free boundary must stay
/// 10 cells clear of the box edge.
WeakFlowResult weak_flow(const std::optional<MarkerCurve>& omega0, const DensityField& rho,
                         const std::vector<double>& t_list, double h, const Box& box,
                         const WeakFlowOptions& options = {});

/// Weak Schwarz reconstruction on the solver grid:
///   S_t = (dphi/dz - du/dz) - chi_{Omega_0} (dphi/dz - S_0),
/// derivatives by centered differences.  Valid where the formula is
/// computable: interior cells of the positivity set, excluding cells where
/// the S_0 evaluator is unreliable (near the initial boundary).
struct WeakSchwarzField {
    Complex origin;
    double h = 0.0;
    int nx = 0;
    int ny = 0;
    std::vector<Complex> values;
    std::vector<uint8_t> valid;

    Complex point(int i, int j) const { return origin + Complex(i * h, j * h); }
    /// Bilinear interpolation using only valid cells; throws if the four
    /// surrounding cells are not all valid.
    Complex sample(Complex z) const;
};

WeakSchwarzField weak_schwarz(const WeakSolution& ws, const ScalarGrid& phi,
                              const cauchy::SchwarzData& s0, const MarkerCurve& omega0);

}  // namespace hs::obstacle
