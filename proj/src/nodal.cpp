#include "darboux/nodal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>

#include "darboux/reduction.hpp"

namespace darboux {

namespace {

// Cell edges, keyed so neighboring cells agree: horizontal edge (i,j) joins
// nodes (i,j)-(i+1,j); vertical edge (i,j) joins (i,j)-(i,j+1).
struct EdgeKey {
    bool horizontal;
    int i, j;

    bool operator<(const EdgeKey& o) const {
        if (horizontal != o.horizontal) return horizontal < o.horizontal;
        if (i != o.i) return i < o.i;
        return j < o.j;
    }
};

} // namespace

ZeroCurveSet scan_zero_curves(const FieldSampler& field, const GridSpec& grid,
                              std::string which) {
    grid.validate();
    ZeroCurveSet out;
    out.which = std::move(which);
    out.grid = grid;

    const int nx = grid.total_u();
    const int ny = grid.total_v();
    std::vector<double> f(static_cast<std::size_t>(nx) * ny);
    auto value = [&](int i, int j) -> double& { return f[static_cast<std::size_t>(j) * nx + i]; };

    double scale = 0.0;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            value(i, j) = field(grid.u_at(i), grid.v_at(j));
            scale = std::max(scale, std::abs(value(i, j)));
        }

    if (scale < 1e-300) {
        out.identically_zero = true;
        return out;
    }

    // Tie-break: nodes within 1e-12 of zero (relative to the field scale)
    // count as positive so marching squares always sees a two-way sign.
    const double tie_tol = 1e-12 * scale;
    auto positive = [&](int i, int j) { return value(i, j) > -tie_tol; };

    auto crossing = [&](int i0, int j0, int i1, int j1) -> std::array<double, 2> {
        const double fa = value(i0, j0), fb = value(i1, j1);
        double t = fa / (fa - fb);
        t = std::clamp(t, 0.0, 1.0);
        return {grid.u_at(i0) + t * (grid.u_at(i1) - grid.u_at(i0)),
                grid.v_at(j0) + t * (grid.v_at(j1) - grid.v_at(j0))};
    };

    std::map<EdgeKey, std::array<double, 2>> vertices;
    std::map<EdgeKey, std::vector<EdgeKey>> links;

    auto vertex_of = [&](const EdgeKey& e) {
        if (!vertices.count(e)) {
            if (e.horizontal) vertices[e] = crossing(e.i, e.j, e.i + 1, e.j);
            else vertices[e] = crossing(e.i, e.j, e.i, e.j + 1);
        }
    };

    auto add_segment = [&](const EdgeKey& a, const EdgeKey& b) {
        vertex_of(a);
        vertex_of(b);
        links[a].push_back(b);
        links[b].push_back(a);
    };

    for (int j = 0; j + 1 < ny; ++j) {
        for (int i = 0; i + 1 < nx; ++i) {
            const int sw = positive(i, j) ? 1 : 0;
            const int se = positive(i + 1, j) ? 2 : 0;
            const int ne = positive(i + 1, j + 1) ? 4 : 0;
            const int nw = positive(i, j + 1) ? 8 : 0;
            const int code = sw | se | ne | nw;
            if (code == 0 || code == 15) continue;

            const EdgeKey south{true, i, j};
            const EdgeKey north{true, i, j + 1};
            const EdgeKey west{false, i, j};
            const EdgeKey east{false, i + 1, j};

            switch (code) {
                case 1: add_segment(west, south); break;
                case 2: add_segment(south, east); break;
                case 3: add_segment(west, east); break;
                case 4: add_segment(east, north); break;
                case 6: add_segment(south, north); break;
                case 7: add_segment(west, north); break;
                case 8: add_segment(north, west); break;
                case 9: add_segment(south, north); break;
                case 11: add_segment(east, north); break;
                case 12: add_segment(east, west); break;
                case 13: add_segment(south, east); break;
                case 14: add_segment(west, south); break;
                case 5:
                case 10: {
                    // Saddle: resolve by the cell-center sample.
                    const double center = field((grid.u_at(i) + grid.u_at(i + 1)) / 2.0,
                                                (grid.v_at(j) + grid.v_at(j + 1)) / 2.0);
                    const bool center_positive = center > -tie_tol;
                    const bool join_sw_ne = (code == 5) ? center_positive : !center_positive;
                    if (join_sw_ne) {
                        add_segment(south, east);
                        add_segment(north, west);
                    } else {
                        add_segment(west, south);
                        add_segment(east, north);
                    }
                    break;
                }
                default: break;
            }
        }
    }

    // Stitch segments into chains: open paths first, remaining cycles after.
    std::map<EdgeKey, bool> used;
    auto walk = [&](const EdgeKey& start) {
        std::vector<std::array<double, 2>> chain;
        EdgeKey current = start;
        used[current] = true;
        chain.push_back(vertices[current]);
        for (;;) {
            const auto& neighbors = links[current];
            bool advanced = false;
            for (const auto& next : neighbors) {
                if (!used[next]) {
                    used[next] = true;
                    chain.push_back(vertices[next]);
                    current = next;
                    advanced = true;
                    break;
                }
            }
            if (!advanced) break;
        }
        return chain;
    };

    for (const auto& [edge, neighbors] : links)
        if (neighbors.size() == 1 && !used[edge]) out.polylines.push_back(walk(edge));
    for (const auto& [edge, neighbors] : links)
        if (!used[edge]) out.polylines.push_back(walk(edge));

    // Point-like zero sets: a deep local minimum of |f| with no sign change
    // in its neighborhood.  "Deep" is calibrated against the quadratic
    // behavior |f| ~ curvature * h^2 near an interior zero; the raw second
    // differences below carry that h^2 factor already.
    for (int j = 1; j + 1 < ny; ++j) {
        for (int i = 1; i + 1 < nx; ++i) {
            const double fc = std::abs(value(i, j));
            bool local_min = true;
            bool sign_change = false;
            const bool center_sign = positive(i, j);
            for (int dj = -1; dj <= 1 && local_min; ++dj)
                for (int di = -1; di <= 1; ++di) {
                    if (di == 0 && dj == 0) continue;
                    if (std::abs(value(i + di, j + dj)) < fc) {
                        local_min = false;
                        break;
                    }
                    if (positive(i + di, j + dj) != center_sign) sign_change = true;
                }
            if (!local_min || sign_change) continue;
            const double fuu = value(i + 1, j) - 2.0 * value(i, j) + value(i - 1, j);
            const double fvv = value(i, j + 1) - 2.0 * value(i, j) + value(i, j - 1);
            const double quad = 2.0 * (std::abs(fuu) + std::abs(fvv));
            if (fc <= quad && fc < 0.01 * scale)
                out.isolated_zero_suspects.push_back({grid.u_at(i), grid.v_at(j)});
        }
    }
    return out;
}

FieldSampler frame_field_sampler(const SurfaceDef& def, const std::string& which,
                                 double iso_tol) {
    if (which == "n1" || which == "n2") {
        const int idx = (which == "n1") ? 0 : 1;
        return [def, idx, iso_tol](double u, double v) {
            return frame(chart_jets(def, u, v), iso_tol).n[idx].value();
        };
    }
    if (which == "d") {
        return [def, iso_tol](double u, double v) {
            return reduce(frame(chart_jets(def, u, v), iso_tol)).d.value();
        };
    }
    throw PreconditionError("unknown frame field '" + which + "' (expected n1, n2, or d)");
}

void write_curves_csv(const std::string& path, const ZeroCurveSet& curves) {
    std::ofstream out(path);
    if (!out) throw NumericalError("cannot open '" + path + "' for writing");
    out << "curve_id,u,v\n";
    char buf[64];
    for (std::size_t id = 0; id < curves.polylines.size(); ++id) {
        for (const auto& vertex : curves.polylines[id]) {
            std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", id, vertex[0], vertex[1]);
            out << buf;
        }
    }
}

} // namespace darboux
