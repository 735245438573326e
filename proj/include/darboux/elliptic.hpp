#pragma once

#include <functional>

#include <Eigen/Sparse>

#include "darboux/grid.hpp"
#include "darboux/reduction.hpp"
#include "darboux/surface.hpp"

namespace darboux {

struct PdeCoefficients {
    double a_uu = 0.0, a_uv = 0.0, a_vv = 0.0;
    double b_u = 0.0, b_v = 0.0;
};

using CoefficientSampler = std::function<PdeCoefficients(double u, double v)>;

// Coefficients of the diagonal-principal second-order equation assembled from
// the chart at (u, v), with the overall sign chosen so a_uu > 0.  Throws when
// the point is inadmissible.
CoefficientSampler diag_pde_sampler(const SurfaceDef& def, double iso_tol = default_iso_tol);

// Five-point discretization of
//   a_uu y_uu + a_vv y_vv + b_u y_u + b_v y_v = 0   (a_uv must vanish)
// on interior nodes, Dirichlet ring.  Second derivatives use central
// differences; the first-order terms use central differences at nodes where
// both cell Peclet numbers |b_u| hu / (2 a_uu) and |b_v| hv / (2 a_vv) are
// < 1, directional one-sided differences otherwise.  Either choice keeps the
// (negated) system an M-matrix: positive diagonal, nonpositive off-diagonal
// entries, weak row diagonal dominance that is strict next to the boundary.
struct DiscreteSystem {
    GridSpec spec;
    Eigen::SparseMatrix<double> matrix; // nu*nv unknowns, row-major node order
    struct NodeStencil {
        double diag, west, east, south, north; // negated-equation coefficients
        bool upwind_u, upwind_v;
    };
    std::vector<NodeStencil> stencils;

    int unknowns() const { return spec.nu * spec.nv; }
    int upwind_node_count() const;
};

// Throws PreconditionError when any node is not elliptic (a_uu*a_vv <= 0, with
// the failing node in the message) or the sampler itself refuses a node.
DiscreteSystem discretize(const CoefficientSampler& coeffs, const GridSpec& spec);

// Full pipeline for a chart: validates that the rectangle lies strictly
// inside the surface domain and touches no excluded line, then discretizes
// the diagonal-principal equation.
DiscreteSystem discretize_elliptic(const SurfaceDef& def, const GridSpec& spec,
                                   double iso_tol = default_iso_tol);

// Sparse direct solve at relative residual < 1e-10.  The solve works on the
// offset from a boundary reference value, so constant boundary data
// reproduces the constant exactly.
GridField solve_dirichlet(const DiscreteSystem& system, const GridField& boundary);

struct MaxPrincipleReport {
    double interior_max = 0.0, boundary_max = 0.0;
    double interior_min = 0.0, boundary_min = 0.0;
    double margin_max = 0.0; // boundary_max - interior_max
    double margin_min = 0.0; // interior_min - boundary_min
    double margin = 0.0;     // min of the two
    int argmax_iu = 0, argmax_iv = 0;
    int argmin_iu = 0, argmin_iv = 0;
    bool pass = false; // margin >= -1e-10
};

MaxPrincipleReport check_max_principle(const GridField& field);

// Discrete residual of the full equation (a_uv term included, by the cross
// central difference) at interior nodes; ring entries are NaN.
GridField grid_residual(const CoefficientSampler& coeffs, const GridField& field);

} // namespace darboux
