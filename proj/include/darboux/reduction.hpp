#pragma once

#include "darboux/frame.hpp"

namespace darboux {

// Scalars of the elimination step that expresses the tangential derivative
// block (y1u, y2u, y1v, y2v) through (y3u, y3v).  Values and first
// derivatives are valid; higher jet coefficients are truncation garbage.
//   d     = h11 x3v^2 - 2 h12 x3u x3v + h22 x3u^2   (elimination determinant)
//   omega = lambda n3^2 + x3u^2 + x3v^2             (> 0 everywhere)
//   p[i], q[i]: column determinants, so that d_i = p[i] y3u + q[i] y3v.
struct ReductionData {
    double u = 0.0, v = 0.0;
    Jet3 d;
    Jet3 omega;
    std::array<Jet3, 4> p, q;
};

// Closed-form route.
ReductionData reduce(const FrameData& f);

// Independent route: d, p_i, q_i as cofactor expansions of the 4x4
// elimination matrix over jet arithmetic (omega keeps its closed form).
ReductionData reduce_via_determinants(const FrameData& f);

// The 4x4 elimination matrix in the unknown order (y1u, y2u, y1v, y2v).
Eigen::Matrix4d elimination_matrix(const FrameData& f);

// Right-hand side is linear in (y3u, y3v): Z = zp*y3u + zq*y3v.
void elimination_rhs(const FrameData& f, Eigen::Vector4d& zp, Eigen::Vector4d& zq);

// |det D - d| with the closed-form d.
double cross_check_d_as_det(const FrameData& f);

// Hypotheses of the second-order reduction: n1, n2 and d bounded away from
// zero.  Thresholds: |n1|,|n2| > 1e-6 and |d| > 1e-8 (|h11|+|h12|+|h22|) lambda.
struct Admissibility {
    double n1 = 0.0, n2 = 0.0, d = 0.0;
    double d_floor = 0.0;
    bool n1_ok = false, n2_ok = false, d_ok = false;

    bool ok() const { return n1_ok && n2_ok && d_ok; }
    std::string describe() const;
};

Admissibility admissibility(const FrameData& f, const ReductionData& rd);

struct TangentGradients {
    double y1u = 0.0, y2u = 0.0, y1v = 0.0, y2v = 0.0;
};

// Cramer form (d1/d, d2/d, d3/d, d4/d); throws PreconditionError when the
// hypotheses fail at the point.
TangentGradients cramer_solve(const FrameData& f, const ReductionData& rd, double y3u, double y3v);

// Generic dense solve of the same 4x4 system; cross-check route.
TangentGradients dense_solve(const FrameData& f, double y3u, double y3v);

enum class PdeClass { elliptic, hyperbolic, parabolic, degenerate };
const char* to_string(PdeClass c);

// Which of the two second-order equations for y3 this is: the one whose
// principal part is diagonal (h22 d_uu + h11 d_vv) or the mixed one (h12 d_uv).
enum class PdeForm { principal_diag, principal_mixed };

// a_uu y3uu + a_uv y3uv + a_vv y3vv + b_u y3u + b_v y3v = 0, with the five
// coefficients divided by the largest-magnitude principal coefficient
// whenever that is meaningfully nonzero.
struct SecondOrderPDE {
    double a_uu = 0.0, a_uv = 0.0, a_vv = 0.0;
    double b_u = 0.0, b_v = 0.0;
    PdeClass cls = PdeClass::degenerate;
    PdeForm form = PdeForm::principal_diag;

    double residual(double y3u, double y3v, double y3uu, double y3uv, double y3vv) const {
        return a_uu * y3uu + a_uv * y3uv + a_vv * y3vv + b_u * y3u + b_v * y3v;
    }
    double residual(const Jet3& y3) const {
        return residual(y3.du(), y3.dv(), y3.duu(), y3.duv(), y3.dvv());
    }
};

// principal_floor is an absolute threshold below which the principal part
// counts as vanished (callers pass a curvature-scaled floor).
PdeClass classify(double a_uu, double a_uv, double a_vv, double b_u, double b_v,
                  double principal_floor = 0.0);

struct PdePair {
    SecondOrderPDE diag;  // h22 y3uu + h11 y3vv + rho1 y3u + rho2 y3v = 0
    SecondOrderPDE mixed; // h12 y3uv + rho3 y3u + rho4 y3v = 0
    std::array<double, 4> r{};   // intermediate first-order coefficients
    std::array<double, 4> rho{}; // rho1..rho4
};

// Throws PreconditionError when the hypotheses fail; never clamps.
PdePair assemble_pdes(const FrameData& f, const ReductionData& rd);

// Unnormalized second-order relation read directly off the two
// cross-differentiations of the elimination identities.  Both derivations
// (columns 1/3 divided by -n2 and columns 2/4 divided by n1) reduce to one
// and the same equation,
//   omega h22 y3uu - 2 lambda h12 y3uv + omega h11 y3vv + r1 y3u + r2 y3v = 0,
// their first-order coefficient pairs coinciding (r1 = r3, r2 = r4).  The
// split pair from assemble_pdes carries the mixed term with the opposite
// sign convention; the two presentations agree on every field with
// h12 * y3uv = 0, which covers all built-in golden cases.  Reports flag the
// distinction on charts where h12 does not vanish.
struct RawReducedEquation {
    double a_uu = 0.0, a_uv = 0.0, a_vv = 0.0;
    double b_u = 0.0, b_v = 0.0;

    double residual(double y3u, double y3v, double y3uu, double y3uv, double y3vv) const {
        return a_uu * y3uu + a_uv * y3uv + a_vv * y3vv + b_u * y3u + b_v * y3v;
    }
};

RawReducedEquation reduced_equation(const FrameData& f, const ReductionData& rd);

} // namespace darboux
