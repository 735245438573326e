#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "darboux/frame.hpp"
#include "darboux/grid.hpp"

namespace darboux {

using FieldSampler = std::function<double(double u, double v)>;

// Zero-level curves of a scalar field, extracted by marching squares with
// linear interpolation along cell edges.  Ambiguous saddle cells are resolved
// by the sign of a cell-center sample.  A node with |f| below 1e-12 times the
// field scale counts as positive so every node has a two-way sign.
struct ZeroCurveSet {
    std::string which;
    GridSpec grid;
    // Chains of (u, v) vertices; closed loops do not repeat the first vertex.
    std::vector<std::vector<std::array<double, 2>>> polylines;
    // Cells with a deep local minimum of |f| but no sign change: point-like
    // zero sets show up here instead of as curves.
    std::vector<std::array<double, 2>> isolated_zero_suspects;
    bool identically_zero = false;

    std::size_t vertex_count() const {
        std::size_t n = 0;
        for (const auto& line : polylines) n += line.size();
        return n;
    }
};

ZeroCurveSet scan_zero_curves(const FieldSampler& field, const GridSpec& grid,
                              std::string which);

// Samplers of the fields whose zero sets bound where interior extrema of a
// rotation-field component can occur: n1, n2, and the elimination
// determinant d.  `which` is one of "n1", "n2", "d".
FieldSampler frame_field_sampler(const SurfaceDef& def, const std::string& which,
                                 double iso_tol = default_iso_tol);

// CSV dump: header "curve_id,u,v".
void write_curves_csv(const std::string& path, const ZeroCurveSet& curves);

} // namespace darboux
