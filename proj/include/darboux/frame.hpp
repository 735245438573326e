#pragma once

#include <Eigen/Dense>

#include "darboux/surface.hpp"

namespace darboux {

using JetVec3 = std::array<Jet3, 3>;

inline Jet3 dot(const JetVec3& a, const JetVec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline JetVec3 cross(const JetVec3& a, const JetVec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline Eigen::Vector3d values(const JetVec3& a) {
    return {a[0].value(), a[1].value(), a[2].value()};
}
inline Eigen::Vector3d values_du(const JetVec3& a) { return {a[0].du(), a[1].du(), a[2].du()}; }
inline Eigen::Vector3d values_dv(const JetVec3& a) { return {a[0].dv(), a[1].dv(), a[2].dv()}; }

inline JetVec3 components(const SurfaceJet& s) { return {s.x1, s.x2, s.x3}; }
inline JetVec3 components(const FieldJet& f) { return {f.f1, f.f2, f.f3}; }

struct IsothermalCheck {
    double lambda;
    double residual; // max(|E - G|, |F|) / lambda
};

// lambda = (x_u, x_u); the caller judges the residual against a tolerance.
IsothermalCheck isothermal_check(const SurfaceJet& s);

// Pointwise metric/normal/curvature data of an isothermal chart, kept as
// jets so first derivatives of every entry are available exactly.
// Accuracy by construction from degree-3 chart jets: lambda and n are exact
// through degree 2, the h_ij through degree 1 (value + gradient).
struct FrameData {
    SurfaceJet chart;
    JetVec3 xu, xv;   // first-derivative jets of the chart
    Jet3 lambda;
    JetVec3 n;        // unit normal: (x_u x x_v) / |x_u x x_v|
    Jet3 h11, h12, h22;
    double iso_residual = 0.0;

    Eigen::Vector3d xu_value() const { return values(xu); }
    Eigen::Vector3d xv_value() const { return values(xv); }
    Eigen::Vector3d n_value() const { return values(n); }
};

inline constexpr double default_iso_tol = 1e-8;

// Throws PreconditionError for a non-isothermal chart (residual above tol),
// a degenerate chart (lambda <= 0), or a vanishing normal.
FrameData frame(const SurfaceJet& s, double iso_tol = default_iso_tol);

// Max absolute residual over the nine scalar identities
//   lambda*n = x_u x x_v,   x_u = x_v x n,   x_v = n x x_u.
double cross_identity_residual(const FrameData& f);

// Max residual of n_u + lambda^-1 (h11 x_u + h12 x_v) and
// n_v + lambda^-1 (h12 x_u + h22 x_v).
double weingarten_residual(const FrameData& f);

} // namespace darboux
