#pragma once

#include "darboux/frame.hpp"

namespace darboux {

// Coefficient matrix of the four pointwise linear relations a rotation field's
// first derivatives satisfy, in the unknown order
// (y1u, y2u, y3u, y1v, y2v, y3v):
//   row 1: (y_u, n) = 0
//   row 2: (y_v, n) = 0
//   row 3: (y_u, x_u) + (y_v, x_v) = 0
//   row 4: h12 (y_u, x_u) + h22 (y_u, x_v) - h11 (y_v, x_u) - h12 (y_v, x_v) = 0
// Rows 1-3 are the classical system; row 4 is the extra curvature relation.
struct DarbouxMatrix {
    Eigen::Matrix<double, 4, 6> m;
    double u = 0.0, v = 0.0;
};

DarbouxMatrix assemble(const FrameData& f);

// Compatibility mode for golden determinant tests: rescales rows to the
// closed-form presentation published for the built-in charts ("reduction by
// nonzero factors").  Defined only for the presets.
DarbouxMatrix paper_scaled(const DarbouxMatrix& m, const FrameData& f, ChartPreset preset);

// Count of singular values above rel_tol times the largest one.
int numerical_rank(const DarbouxMatrix& m, double rel_tol = 1e-9);

// Determinant of the 4x4 matrix left after removing columns drop_i and
// drop_j (1-based, drop_i < drop_j).
double minor_det(const DarbouxMatrix& m, int drop_i, int drop_j);

// Pointwise residuals of the first-order relations for a candidate
// derivative block (y_u, y_v).
struct FirstOrderResiduals {
    Eigen::Vector3d compat; // y_u x x_v - y_v x x_u
    double normal_u = 0.0;  // (y_u, n)
    double normal_v = 0.0;  // (y_v, n)
    double trace = 0.0;     // (y_u, x_u) + (y_v, x_v)
    double curvature = 0.0; // row-4 combination

    double max_abs() const;
    double max_abs_classical() const; // compat rows and rows 1-3 only
};

FirstOrderResiduals first_order_residuals(const Eigen::Vector3d& yu, const Eigen::Vector3d& yv,
                                          const FrameData& f);
FirstOrderResiduals first_order_residuals(const FieldJet& y, const FrameData& f);

// 3x6 coefficient matrix of the componentwise compatibility system
// y_u x x_v = y_v x x_u in the same unknown order as DarbouxMatrix.
Eigen::Matrix<double, 3, 6> compat_matrix(const FrameData& f);

// Pointwise rotation field of a bending field: the least-squares solution y
// of the six equations z_u = y x x_u, z_v = y x x_v.  The defect norm is ~0
// exactly when z is a genuine bending field at the point.
struct BendingSolve {
    Eigen::Vector3d y;
    double residual;
};

BendingSolve field_from_bending(const FieldJet& z, const SurfaceJet& s);

// The three scalars (z_u,x_u), (z_u,x_v)+(z_v,x_u), (z_v,x_v); all zero for
// an infinitesimal bending.
std::array<double, 3> bending_residual(const FieldJet& z, const SurfaceJet& s);

} // namespace darboux
