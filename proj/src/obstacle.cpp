#include "hslab/obstacle.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace hs::obstacle {

namespace {

double injection_profile(Complex z) { return (2.0 / kPi) * std::log(std::abs(z)); }

bool origin_on_lattice(const ScalarGrid& g) {
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            if (std::abs(g.point(i, j)) < 0.25 * g.h) return true;
        }
    }
    return false;
}

}  // namespace

void ObstacleProblem::validate() const {
    ftilde.validate("ObstacleProblem");
    if (!(t >= 0.0)) throw Error("ObstacleProblem: injection mass t must be nonnegative");
    const double x0 = ftilde.origin.real();
    const double y0 = ftilde.origin.imag();
    const double x1 = x0 + ftilde.h * (ftilde.nx - 1);
    const double y1 = y0 + ftilde.h * (ftilde.ny - 1);
    if (!(x0 < 0.0 && 0.0 < x1 && y0 < 0.0 && 0.0 < y1)) {
        throw Error("ObstacleProblem: origin must lie strictly inside the grid box");
    }
    if (t > 0.0 && origin_on_lattice(ftilde)) {
        throw Error("ObstacleProblem: a cell center coincides with the injection point; "
                    "use a cell-centered grid with even cell counts");
    }
}

std::vector<double> discrete_dirac(const ScalarGrid& grid) {
    const int nx = grid.nx, ny = grid.ny;
    std::vector<double> delta(static_cast<size_t>(nx) * ny, 0.0);
    std::vector<double> nvals(static_cast<size_t>(nx) * ny);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            nvals[static_cast<size_t>(j) * nx + i] = injection_profile(grid.point(i, j));
        }
    }
    const double inv = 1.0 / (4.0 * grid.h * grid.h);
    for (int j = 1; j + 1 < ny; ++j) {
        for (int i = 1; i + 1 < nx; ++i) {
            const size_t c = static_cast<size_t>(j) * nx + i;
            delta[c] = (nvals[c + 1] + nvals[c - 1] + nvals[c + nx] + nvals[c - nx] -
                        4.0 * nvals[c]) *
                       inv;
        }
    }
    return delta;
}

WeakSolution psor_solve(const ObstacleProblem& p, double omega, double tol, int maxiter,
                        const ScalarGrid* warm) {
    p.validate();
    if (!(omega > 1.0 && omega < 2.0)) {
        throw Error("psor_solve: omega must lie in (1, 2)");
    }
    const int nx = p.ftilde.nx, ny = p.ftilde.ny;
    if (nx < 64 || ny < 64) throw Error("psor_solve: grid must be at least 64x64");
    const double h = p.ftilde.h;
    const double h2 = h * h;

    // Discrete source f = ftilde + t * dirac_h.
    std::vector<double> f = discrete_dirac(p.ftilde);
    for (size_t c = 0; c < f.size(); ++c) f[c] = p.ftilde.values[c] + p.t * f[c];

    WeakSolution ws;
    ws.u = ScalarGrid(p.ftilde.origin, h, nx, ny, 0.0);
    if (warm != nullptr) {
        if (!warm->sameLayout(ws.u)) throw Error("psor_solve: warm start layout mismatch");
        ws.u.values = warm->values;
    } else if (p.lower_bound > 0.0) {
        std::fill(ws.u.values.begin(), ws.u.values.end(), p.lower_bound);
    }
    std::vector<double>& u = ws.u.values;

    // Red-black projected SOR; the outer ring is a fixed zero Dirichlet
    // boundary (the coincidence set is exterior for well-sized boxes).
    int iter = 0;
    double max_update = 0.0;
    for (iter = 1; iter <= maxiter; ++iter) {
        max_update = 0.0;
        for (int color = 0; color < 2; ++color) {
            for (int j = 1; j + 1 < ny; ++j) {
                const size_t row = static_cast<size_t>(j) * nx;
                int i = 1 + ((j + 1 + color) % 2);
                for (; i + 1 <= nx - 1; i += 2) {
                    const size_t c = row + i;
                    const double gs =
                        0.25 * (u[c + 1] + u[c - 1] + u[c + nx] + u[c - nx] + 4.0 * h2 * f[c]);
                    double unew = u[c] + omega * (gs - u[c]);
                    if (unew < p.lower_bound) unew = p.lower_bound;
                    const double change = std::abs(unew - u[c]);
                    if (change > max_update) max_update = change;
                    u[c] = unew;
                }
            }
        }
        if (max_update <= tol) break;
    }
    if (max_update > tol) {
        throw Error("psor_solve: no convergence after " + std::to_string(maxiter) +
                    " sweeps (last max update " + std::to_string(max_update) + ")");
    }
    ws.iterations = iter;
    ws.last_update = max_update;
    ws.coincidence.assign(u.size(), 0);
    for (size_t c = 0; c < u.size(); ++c) {
        if (u[c] <= p.lower_bound + 1e-14) ws.coincidence[c] = 1;
    }
    return ws;
}

ComplementarityRange complementarity_range(const ObstacleProblem& p, const ScalarGrid& u) {
    const int nx = p.ftilde.nx, ny = p.ftilde.ny;
    std::vector<double> f = discrete_dirac(p.ftilde);
    for (size_t c = 0; c < f.size(); ++c) f[c] = p.ftilde.values[c] + p.t * f[c];
    const double inv = 1.0 / (4.0 * p.ftilde.h * p.ftilde.h);
    ComplementarityRange range{1e300, -1e300};
    for (int j = 1; j + 1 < ny; ++j) {
        for (int i = 1; i + 1 < nx; ++i) {
            const size_t c = static_cast<size_t>(j) * nx + i;
            const double lap = (u.values[c + 1] + u.values[c - 1] + u.values[c + nx] +
                                u.values[c - nx] - 4.0 * u.values[c]) *
                               inv;
            const double res = -lap - f[c];
            const double m = std::min(u.values[c] - p.lower_bound, res);
            range.lo = std::min(range.lo, m);
            range.hi = std::max(range.hi, m);
        }
    }
    return range;
}

// ---------------------------------------------------------------------------
// Marching squares

namespace {

struct EdgeKey {
    int i, j, axis;  // axis 0: between (i,j)-(i+1,j); axis 1: (i,j)-(i,j+1)
    bool operator<(const EdgeKey& o) const {
        if (i != o.i) return i < o.i;
        if (j != o.j) return j < o.j;
        return axis < o.axis;
    }
};

Complex edge_point(const ScalarGrid& g, const EdgeKey& e, double level) {
    const double va = g.at(e.i, e.j);
    const double vb = (e.axis == 0) ? g.at(e.i + 1, e.j) : g.at(e.i, e.j + 1);
    double s = (level - va) / (vb - va);
    s = std::clamp(s, 0.0, 1.0);
    const Complex a = g.point(e.i, e.j);
    const Complex b = (e.axis == 0) ? g.point(e.i + 1, e.j) : g.point(e.i, e.j + 1);
    return a + s * (b - a);
}

std::vector<std::vector<Complex>> marching_squares_loops(const ScalarGrid& g, double level) {
    // Per dual cell, connect the crossed edges; ambiguous saddles resolved by
    // the cell-average value.
    std::map<EdgeKey, std::vector<EdgeKey>> adjacency;
    auto link = [&](const EdgeKey& a, const EdgeKey& b) {
        adjacency[a].push_back(b);
        adjacency[b].push_back(a);
    };
    for (int j = 0; j + 1 < g.ny; ++j) {
        for (int i = 0; i + 1 < g.nx; ++i) {
            const double v00 = g.at(i, j);
            const double v10 = g.at(i + 1, j);
            const double v11 = g.at(i + 1, j + 1);
            const double v01 = g.at(i, j + 1);
            int mask = 0;
            if (v00 > level) mask |= 1;
            if (v10 > level) mask |= 2;
            if (v11 > level) mask |= 4;
            if (v01 > level) mask |= 8;
            if (mask == 0 || mask == 15) continue;
            const EdgeKey bottom{i, j, 0};
            const EdgeKey right{i + 1, j, 1};
            const EdgeKey top{i, j + 1, 0};
            const EdgeKey left{i, j, 1};
            switch (mask) {
                case 1: case 14: link(left, bottom); break;
                case 2: case 13: link(bottom, right); break;
                case 4: case 11: link(right, top); break;
                case 8: case 7: link(top, left); break;
                case 3: case 12: link(left, right); break;
                case 6: case 9: link(bottom, top); break;
                case 5: case 10: {
                    const bool center_above = 0.25 * (v00 + v10 + v11 + v01) > level;
                    const bool corners_above = (mask == 5);
                    if (corners_above == center_above) {
                        link(left, bottom);
                        link(right, top);
                    } else {
                        link(left, top);
                        link(bottom, right);
                    }
                    break;
                }
                default: break;
            }
        }
    }
    auto same = [](const EdgeKey& a, const EdgeKey& b) {
        return a.i == b.i && a.j == b.j && a.axis == b.axis;
    };
    std::vector<std::vector<Complex>> loops;
    std::map<EdgeKey, bool> used;
    for (const auto& [start, start_nbrs] : adjacency) {
        if (used[start] || start_nbrs.size() != 2) continue;
        std::vector<Complex> loop;
        EdgeKey prev = start;
        EdgeKey cur = start;
        bool closed = false;
        while (true) {
            used[cur] = true;
            loop.push_back(edge_point(g, cur, level));
            const auto it = adjacency.find(cur);
            if (it == adjacency.end() || it->second.size() != 2) break;  // open chain
            EdgeKey next = it->second[0];
            if (loop.size() > 1 && same(next, prev)) next = it->second[1];
            prev = cur;
            cur = next;
            if (same(cur, start)) {
                closed = true;
                break;
            }
            if (used[cur]) break;
        }
        if (closed && loop.size() >= 8) loops.push_back(std::move(loop));
    }
    return loops;
}

}  // namespace

MarkerCurve extract_free_boundary(const ScalarGrid& u, const DensityField& rho, double level,
                                  int n_markers) {
    auto loops = marching_squares_loops(u, level);
    if (loops.empty()) {
        throw Error("extract_free_boundary: no closed level curve found");
    }
    auto loop_area = [](const std::vector<Complex>& pts) {
        double a2 = 0.0;
        for (size_t i = 0; i < pts.size(); ++i) {
            const Complex& p = pts[i];
            const Complex& q = pts[(i + 1) % pts.size()];
            a2 += p.real() * q.imag() - q.real() * p.imag();
        }
        return 0.5 * a2;
    };
    size_t best = 0;
    double best_area = 0.0;
    for (size_t l = 0; l < loops.size(); ++l) {
        const double a = std::abs(loop_area(loops[l]));
        if (a > best_area) {
            best_area = a;
            best = l;
        }
    }
    std::vector<Complex> raw = std::move(loops[best]);
    if (loop_area(raw) < 0.0) std::reverse(raw.begin(), raw.end());

    std::vector<Complex> markers = resample_closed_polyline(raw, n_markers);
    MarkerCurve level_curve = MarkerCurve::fromMarkers(std::move(markers));

    // Remove the threshold bias: near the free boundary u grows
    // quadratically, u = 2 rho d^2, so the level-c curve sits
    // sqrt(c / (2 rho)) inside the true boundary.
    const std::vector<Complex> normals = level_curve.outwardNormals();
    std::vector<Complex> pushed(level_curve.size());
    for (int j = 0; j < level_curve.size(); ++j) {
        const Complex m = level_curve.markers()[j];
        const double shift = std::sqrt(level / (2.0 * rho(m)));
        pushed[j] = m + shift * normals[j];
    }
    return MarkerCurve::fromMarkers(std::move(pushed));
}

// ---------------------------------------------------------------------------
// Weak flow

WeakFlowResult weak_flow(const std::optional<MarkerCurve>& omega0, const DensityField& rho,
                         const std::vector<double>& t_list, double h, const Box& box,
                         const WeakFlowOptions& options) {
    if (t_list.empty()) throw Error("weak_flow: empty time list");
    for (size_t i = 0; i < t_list.size(); ++i) {
        if (!(t_list[i] >= 0.0)) throw Error("weak_flow: times must be nonnegative");
        if (i > 0 && !(t_list[i] > t_list[i - 1])) {
            throw Error("weak_flow: times must be increasing");
        }
    }
    if (!(h > 0.0)) throw Error("weak_flow: h must be positive");
    if (!rho.covers(box)) {
        throw Error("weak_flow: sampled density does not cover the computational box");
    }

    const int nx = static_cast<int>(std::lround(box.width() / h));
    const int ny = static_cast<int>(std::lround(box.height() / h));
    const ScalarGrid geometry(Complex(box.xmin + 0.5 * h, box.ymin + 0.5 * h), h, nx, ny);

    std::vector<uint8_t> chi0(static_cast<size_t>(nx) * ny, 0);
    if (omega0.has_value()) chi0 = rasterize_indicator(*omega0, geometry);

    ObstacleProblem problem;
    problem.ftilde = geometry;
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const size_t c = static_cast<size_t>(j) * nx + i;
            const double r = rho(geometry.point(i, j));
            problem.ftilde.values[c] = r * (chi0[c] ? 0.0 : -1.0);
        }
    }
    const std::vector<double> dirac = discrete_dirac(geometry);

    const double omega =
        options.omega > 0.0 ? options.omega : 2.0 / (1.0 + std::sin(kPi / std::max(nx, ny)));
    const double threshold = options.threshold > 0.0 ? options.threshold : h * h;
    const double h_mom = options.moment_h > 0.0 ? options.moment_h : 0.5 * h;

    WeakFlowResult result;
    result.box = box;
    result.h = h;

    ScalarGrid prev_u = geometry;  // zeros
    const double inv = 1.0 / (4.0 * h * h);
    for (double t : t_list) {
        problem.t = t;
        WeakSolution ws = psor_solve(problem, omega, options.tol, options.maxiter, &prev_u);

        // Support must stay clear of the box edge.
        const int guard = 10;
        for (int j = 0; j < ny; ++j) {
            for (int i = 0; i < nx; ++i) {
                if (j >= guard && j < ny - guard && i >= guard && i < nx - guard) continue;
                if (ws.u.values[static_cast<size_t>(j) * nx + i] > threshold) {
                    throw Error("weak_flow: free boundary within 10 cells of the box edge "
                                "(box too small)");
                }
            }
        }

        // rho-mass balance from the residual-derived coverage
        // chi = 1 - residual/rho on interior cells (fractional at the free
        // boundary); growth must equal the injected mass.
        double mass = 0.0;
        for (int j = 1; j + 1 < ny; ++j) {
            for (int i = 1; i + 1 < nx; ++i) {
                const size_t c = static_cast<size_t>(j) * nx + i;
                const auto& u = ws.u.values;
                const double lap =
                    (u[c + 1] + u[c - 1] + u[c + nx] + u[c - nx] - 4.0 * u[c]) * inv;
                const double res = -lap - problem.ftilde.values[c] - t * dirac[c];
                const double rc = rho(geometry.point(i, j));
                const double chi = std::clamp(1.0 - res / rc, 0.0, 1.0);
                mass += rc * (chi - (chi0[c] ? 1.0 : 0.0)) * h * h;
            }
        }

        WeakFrame frame;
        frame.t = t;
        frame.mass_balance_error = std::abs(mass - t);
        if (t == 0.0 && omega0.has_value()) {
            frame.boundary = resample(*omega0, options.n_markers);
        } else if (t > 0.0) {
            frame.boundary = extract_free_boundary(ws.u, rho, threshold, options.n_markers);
        }
        frame.u = ws.u;
        prev_u = ws.u;

        std::vector<Complex> mk(static_cast<size_t>(options.moment_K) + 1, Complex(0, 0));
        if (frame.boundary.has_value()) {
            mk = moments::moments_grid(*frame.boundary, rho, options.moment_K, h_mom);
        }
        result.series.times.push_back(t);
        result.series.values.push_back(std::move(mk));
        result.frames.push_back(std::move(frame));
    }
    return result;
}

// ---------------------------------------------------------------------------
// Weak Schwarz reconstruction

Complex WeakSchwarzField::sample(Complex z) const {
    const double fx = (z.real() - origin.real()) / h;
    const double fy = (z.imag() - origin.imag()) / h;
    const int i = static_cast<int>(std::floor(fx));
    const int j = static_cast<int>(std::floor(fy));
    if (i < 0 || j < 0 || i + 1 >= nx || j + 1 >= ny) {
        throw Error("WeakSchwarzField::sample: point outside the field");
    }
    for (int dj = 0; dj <= 1; ++dj) {
        for (int di = 0; di <= 1; ++di) {
            if (!valid[static_cast<size_t>(j + dj) * nx + (i + di)]) {
                throw Error("WeakSchwarzField::sample: surrounding cells not all valid");
            }
        }
    }
    const double sx = fx - i;
    const double sy = fy - j;
    const auto v = [&](int ii, int jj) { return values[static_cast<size_t>(jj) * nx + ii]; };
    return v(i, j) * ((1 - sx) * (1 - sy)) + v(i + 1, j) * (sx * (1 - sy)) +
           v(i, j + 1) * ((1 - sx) * sy) + v(i + 1, j + 1) * (sx * sy);
}

WeakSchwarzField weak_schwarz(const WeakSolution& ws, const ScalarGrid& phi,
                              const cauchy::SchwarzData& s0, const MarkerCurve& omega0) {
    if (!phi.sameLayout(ws.u)) throw Error("weak_schwarz: phi and u grids must match");
    const int nx = ws.u.nx, ny = ws.u.ny;
    const double h = ws.u.h;

    WeakSchwarzField field;
    field.origin = ws.u.origin;
    field.h = h;
    field.nx = nx;
    field.ny = ny;
    field.values.assign(static_cast<size_t>(nx) * ny, Complex(0.0, 0.0));
    field.valid.assign(static_cast<size_t>(nx) * ny, 0);

    const std::vector<uint8_t> chi0 = rasterize_indicator(omega0, ws.u);
    const double s0_guard = 5.0 * s0.curve.maxSpacing();

    auto dz = [&](const ScalarGrid& g, int i, int j) {
        const double gx = (g.at(i + 1, j) - g.at(i - 1, j)) / (2 * h);
        const double gy = (g.at(i, j + 1) - g.at(i, j - 1)) / (2 * h);
        return Complex(0.5 * gx, -0.5 * gy);
    };

    for (int j = 1; j + 1 < ny; ++j) {
        for (int i = 1; i + 1 < nx; ++i) {
            const size_t c = static_cast<size_t>(j) * nx + i;
            if (ws.coincidence.empty() ? ws.u.at(i, j) <= 0.0 : ws.coincidence[c]) continue;
            const Complex z = ws.u.point(i, j);
            const Complex phi_z = dz(phi, i, j);
            const Complex u_z = dz(ws.u, i, j);
            Complex st = phi_z - u_z;
            if (chi0[c]) {
                if (distance_to_curve(s0.curve, z) < s0_guard || std::abs(z) < 2 * h) continue;
                st -= phi_z - s0.eval(z);
            }
            field.values[c] = st;
            field.valid[c] = 1;
        }
    }
    return field;
}

}  // namespace hs::obstacle
