#include "hslab/fronttrack.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace hs::fronttrack {

namespace {

// Double-layer kernel (1/2pi) n_zeta . (zeta - z) / |zeta - z|^2; its
// coincidence limit is curvature / (4 pi).
double dlp_kernel(Complex z, Complex zeta, Complex normal) {
    const Complex d = zeta - z;
    const double r2 = std::norm(d);
    return (normal.real() * d.real() + normal.imag() * d.imag()) / (2.0 * kPi * r2);
}

}  // namespace

double PressureSolution::evalInterior(Complex z) const {
    const auto& m = curve_.markers();
    const std::vector<Complex> normals = curve_.outwardNormals();
    const auto& ds = curve_.dsWeights();
    double acc = 0.0;
    for (int k = 0; k < curve_.size(); ++k) {
        acc += dlp_kernel(z, m[k], normals[k]) * density_[k] * ds[k];
    }
    return -std::log(std::abs(z)) / (2.0 * kPi) + acc;
}

PressureSolution green_pressure(const MarkerCurve& curve) {
    if (!point_in_domain(curve, Complex(0.0, 0.0))) {
        throw Error("green_pressure: origin (the injection point) must lie inside the curve");
    }
    if (distance_to_curve(curve, Complex(0.0, 0.0)) < 10.0 * curve.maxSpacing()) {
        throw Error("green_pressure: origin closer than 10 marker spacings to the boundary");
    }
    const int n = curve.size();
    const auto& m = curve.markers();
    const std::vector<Complex> normals = curve.outwardNormals();
    const auto& ds = curve.dsWeights();

    // Interior Dirichlet problem for h with data (1/2pi) log|z| via the
    // double-layer representation: (1/2) mu + K mu = g.
    Eigen::MatrixXd A(n, n);
    Eigen::VectorXd rhs(n);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            double kernel;
            if (j == k) {
                kernel = curve.curvatures()[k] / (4.0 * kPi);
            } else {
                kernel = dlp_kernel(m[j], m[k], normals[k]);
            }
            A(j, k) = kernel * ds[k];
        }
        A(j, j) += 0.5;
        rhs(j) = std::log(std::abs(m[j])) / (2.0 * kPi);
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    const double rcond = lu.rcond();
    if (!(rcond > 1e-8)) {
        throw Error("green_pressure: Nystrom system ill-conditioned (rcond " +
                    std::to_string(rcond) + ")");
    }
    const Eigen::VectorXd mu = lu.solve(rhs);

    PressureSolution sol(curve);
    sol.density_.assign(mu.data(), mu.data() + n);

    // dp/dn by the second-order one-sided formula on interior offsets
    // {eps, 2 eps}, using p = 0 at the marker itself.
    const double eps = 2.0 * curve.maxSpacing();
    sol.dpdn_.resize(n);
    sol.flux_ = 0.0;
    for (int j = 0; j < n; ++j) {
        const double q1 = sol.evalInterior(m[j] - eps * normals[j]);
        const double q2 = sol.evalInterior(m[j] - 2.0 * eps * normals[j]);
        const double dpdn = (q2 - 4.0 * q1) / (2.0 * eps);
        if (!(dpdn < 0.0)) {
            throw Error("green_pressure: nonnegative boundary flux at marker " +
                        std::to_string(j) + " (maximum principle violated numerically)");
        }
        sol.dpdn_[j] = dpdn;
        sol.flux_ -= dpdn * ds[j];
    }
    return sol;
}

MarkerCurve advance(const MarkerCurve& curve, const DensityField& rho, double dt,
                    bool allow_backward, const PressureSolution* pressure_in) {
    if (dt < 0.0 && !allow_backward) {
        throw Error("advance: backward time stepping must be enabled explicitly "
                    "(ill-posed unless the boundary is analytic)");
    }
    if (dt == 0.0) return curve;
    std::optional<PressureSolution> local;
    if (pressure_in == nullptr) {
        local.emplace(green_pressure(curve));
        pressure_in = &*local;
    }
    const PressureSolution& pressure = *pressure_in;
    const int n = curve.size();
    const auto& m = curve.markers();
    const std::vector<Complex> normals = curve.outwardNormals();

    double max_speed = 0.0;
    std::vector<double> speed(n);
    for (int j = 0; j < n; ++j) {
        const double kappa = 1.0 / rho(m[j]);
        speed[j] = kappa * (-pressure.dpdn()[j]);
        max_speed = std::max(max_speed, std::abs(speed[j]));
    }
    if (std::abs(dt) * max_speed > 0.5 * curve.minSpacing()) {
        throw Error("advance: step violates the marker cap dt*max|kappa dp/dn| <= "
                    "0.5*spacing; reduce dt");
    }
    std::vector<Complex> moved(n);
    for (int j = 0; j < n; ++j) moved[j] = m[j] + dt * speed[j] * normals[j];
    try {
        return resample(MarkerCurve::fromMarkers(std::move(moved)), n);
    } catch (const Error& e) {
        throw Error(std::string("advance: self-intersection after step (") + e.what() + ")");
    }
}

std::vector<Complex> exact_potential_dz(const MarkerCurve& curve, const DensityField& rho) {
    const int n = curve.size();
    std::vector<Complex> out(n);
    if (rho.isConstant()) {
        for (int j = 0; j < n; ++j) out[j] = rho.coeff0() * std::conj(curve.markers()[j]);
        return out;
    }
    if (rho.isAffine()) {
        // phi_0 = c0 |z|^2 + (beta z^2 zbar + conj(beta) z zbar^2)/2 with
        // beta = (c1 - i c2)/2 satisfies Lap phi_0 = c0 + c1 x + c2 y.
        const Complex beta(0.5 * rho.coeff1(), -0.5 * rho.coeff2());
        for (int j = 0; j < n; ++j) {
            const Complex z = curve.markers()[j];
            const Complex zb = std::conj(z);
            out[j] = rho.coeff0() * zb + beta * z * zb + std::conj(beta) * zb * zb * 0.5;
        }
        return out;
    }
    throw Error("exact_potential_dz: no closed-form potential for sampled densities");
}

bool has_exact_potential(const DensityField& rho) { return rho.isConstant() || rho.isAffine(); }

ClassicalRunResult run_classical(const MarkerCurve& omega0, const DensityField& rho, double T,
                                 double dt, const ClassicalRunOptions& options) {
    if (!(dt > 0.0) && !options.allow_backward) {
        throw Error("run_classical: dt must be positive for forward runs");
    }
    if (dt == 0.0) throw Error("run_classical: dt must be nonzero");
    const int steps = static_cast<int>(std::lround(T / dt));
    if (steps < 1 || std::abs(steps * dt - T) > 1e-9 * std::max(1.0, std::abs(T))) {
        throw Error("run_classical: T must be a positive integer multiple of dt");
    }

    ClassicalRunResult result;
    result.min_flux = 1e300;
    result.max_flux = -1e300;

    // Moments per frame: exact boundary route when the potential has a
    // closed form, grid quadrature otherwise.
    const bool exact = has_exact_potential(rho);
    auto frame_moments = [&](const MarkerCurve& c) {
        if (exact) {
            return moments::moments_boundary(c, exact_potential_dz(c, rho), options.moment_K);
        }
        return moments::moments_grid(c, rho, options.moment_K, options.moment_h);
    };
    auto push_frame = [&](double t, const MarkerCurve& c) {
        result.frames.push_back({t, c});
        result.series.times.push_back(t);
        result.series.values.push_back(frame_moments(c));
    };

    MarkerCurve current = omega0;
    push_frame(0.0, current);
    double prev_area = signed_area(current);
    for (int s = 1; s <= steps; ++s) {
        const PressureSolution pressure = green_pressure(current);
        result.min_flux = std::min(result.min_flux, pressure.flux());
        result.max_flux = std::max(result.max_flux, pressure.flux());
        current = advance(current, rho, dt, options.allow_backward, &pressure);
        const double area = signed_area(current);
        if (dt > 0.0 && !(area > prev_area)) {
            throw Error("run_classical: areas failed to increase at step " + std::to_string(s));
        }
        prev_area = area;
        if (s % options.frame_stride == 0 || s == steps) {
            push_frame(s * dt, current);
        }
    }
    return result;
}

}  // namespace hs::fronttrack
