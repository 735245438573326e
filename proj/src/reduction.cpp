#include "darboux/reduction.hpp"

#include <cmath>

namespace darboux {

namespace {

using JetMat4 = std::array<std::array<Jet3, 4>, 4>;
using JetVec4 = std::array<Jet3, 4>;

Jet3 det3(const Jet3& a00, const Jet3& a01, const Jet3& a02,
          const Jet3& a10, const Jet3& a11, const Jet3& a12,
          const Jet3& a20, const Jet3& a21, const Jet3& a22) {
    return a00 * (a11 * a22 - a12 * a21) - a01 * (a10 * a22 - a12 * a20) +
           a02 * (a10 * a21 - a11 * a20);
}

Jet3 det4(const JetMat4& m) {
    Jet3 out = m[0][0] * det3(m[1][1], m[1][2], m[1][3],
                              m[2][1], m[2][2], m[2][3],
                              m[3][1], m[3][2], m[3][3]);
    out = out - m[0][1] * det3(m[1][0], m[1][2], m[1][3],
                               m[2][0], m[2][2], m[2][3],
                               m[3][0], m[3][2], m[3][3]);
    out = out + m[0][2] * det3(m[1][0], m[1][1], m[1][3],
                               m[2][0], m[2][1], m[2][3],
                               m[3][0], m[3][1], m[3][3]);
    out = out - m[0][3] * det3(m[1][0], m[1][1], m[1][2],
                               m[2][0], m[2][1], m[2][2],
                               m[3][0], m[3][1], m[3][2]);
    return out;
}

JetMat4 elimination_matrix_jets(const FrameData& f) {
    const Jet3 zero = Jet3::constant(0.0, f.chart.x1.base_u(), f.chart.x1.base_v());
    const Jet3& n1 = f.n[0];
    const Jet3& n2 = f.n[1];
    const Jet3& x1u = f.xu[0];
    const Jet3& x2u = f.xu[1];
    const Jet3& x1v = f.xv[0];
    const Jet3& x2v = f.xv[1];
    JetMat4 m;
    m[0] = {n1, n2, zero, zero};
    m[1] = {zero, zero, n1, n2};
    m[2] = {x1u, x2u, x1v, x2v};
    m[3] = {f.h12 * x1u + f.h22 * x1v, f.h12 * x2u + f.h22 * x2v,
            -(f.h11 * x1u + f.h12 * x1v), -(f.h11 * x2u + f.h12 * x2v)};
    return m;
}

void elimination_rhs_jets(const FrameData& f, JetVec4& zp, JetVec4& zq) {
    const Jet3 zero = Jet3::constant(0.0, f.chart.x1.base_u(), f.chart.x1.base_v());
    const Jet3& n3 = f.n[2];
    const Jet3& x3u = f.xu[2];
    const Jet3& x3v = f.xv[2];
    zp = {-n3, zero, -x3u, -(f.h12 * x3u + f.h22 * x3v)};
    zq = {zero, -n3, -x3v, f.h11 * x3u + f.h12 * x3v};
}

Jet3 omega_jet(const FrameData& f) {
    const Jet3& n3 = f.n[2];
    const Jet3& x3u = f.xu[2];
    const Jet3& x3v = f.xv[2];
    return f.lambda * n3 * n3 + x3u * x3u + x3v * x3v;
}

} // namespace

ReductionData reduce(const FrameData& f) {
    const Jet3& n1 = f.n[0];
    const Jet3& n2 = f.n[1];
    const Jet3& x1u = f.xu[0];
    const Jet3& x2u = f.xu[1];
    const Jet3& x3u = f.xu[2];
    const Jet3& x1v = f.xv[0];
    const Jet3& x2v = f.xv[1];
    const Jet3& x3v = f.xv[2];
    const Jet3& h11 = f.h11;
    const Jet3& h12 = f.h12;
    const Jet3& h22 = f.h22;

    ReductionData rd;
    rd.u = f.chart.x1.base_u();
    rd.v = f.chart.x1.base_v();
    rd.d = h11 * x3v * x3v - 2.0 * h12 * x3u * x3v + h22 * x3u * x3u;
    rd.omega = omega_jet(f);

    const Jet3& w = rd.omega;
    rd.p[0] = h11 * x1v * x3v - 2.0 * h12 * x1v * x3u + h22 * x1u * x3u;
    rd.q[0] = h11 * n2 * w;
    rd.p[1] = h11 * x2v * x3v - 2.0 * h12 * x2v * x3u + h22 * x2u * x3u;
    rd.q[1] = -(h11 * n1 * w);
    rd.p[2] = -(h22 * n2 * w);
    rd.q[2] = h11 * x1v * x3v - 2.0 * h12 * x1u * x3v + h22 * x1u * x3u;
    rd.p[3] = h22 * n1 * w;
    rd.q[3] = h11 * x2v * x3v - 2.0 * h12 * x2u * x3v + h22 * x2u * x3u;
    return rd;
}

ReductionData reduce_via_determinants(const FrameData& f) {
    const JetMat4 m = elimination_matrix_jets(f);
    JetVec4 zp, zq;
    elimination_rhs_jets(f, zp, zq);

    ReductionData rd;
    rd.u = f.chart.x1.base_u();
    rd.v = f.chart.x1.base_v();
    rd.d = det4(m);
    rd.omega = omega_jet(f);
    for (int i = 0; i < 4; ++i) {
        JetMat4 mp = m, mq = m;
        for (int row = 0; row < 4; ++row) {
            mp[row][i] = zp[row];
            mq[row][i] = zq[row];
        }
        rd.p[i] = det4(mp);
        rd.q[i] = det4(mq);
    }
    return rd;
}

Eigen::Matrix4d elimination_matrix(const FrameData& f) {
    const JetMat4 m = elimination_matrix_jets(f);
    Eigen::Matrix4d out;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) out(r, c) = m[r][c].value();
    return out;
}

void elimination_rhs(const FrameData& f, Eigen::Vector4d& zp, Eigen::Vector4d& zq) {
    JetVec4 jp, jq;
    elimination_rhs_jets(f, jp, jq);
    for (int r = 0; r < 4; ++r) {
        zp(r) = jp[r].value();
        zq(r) = jq[r].value();
    }
}

double cross_check_d_as_det(const FrameData& f) {
    const double d_closed = reduce(f).d.value();
    const double d_det = elimination_matrix(f).determinant();
    return std::abs(d_det - d_closed);
}

std::string Admissibility::describe() const {
    std::string out;
    if (!n1_ok) out += "n1 = " + std::to_string(n1) + " too close to zero; ";
    if (!n2_ok) out += "n2 = " + std::to_string(n2) + " too close to zero; ";
    if (!d_ok)
        out += "|d| = " + std::to_string(std::abs(d)) + " below floor " + std::to_string(d_floor);
    if (out.empty()) out = "admissible";
    return out;
}

Admissibility admissibility(const FrameData& f, const ReductionData& rd) {
    Admissibility a;
    a.n1 = f.n[0].value();
    a.n2 = f.n[1].value();
    a.d = rd.d.value();
    a.d_floor = 1e-8 * (std::abs(f.h11.value()) + std::abs(f.h12.value()) +
                        std::abs(f.h22.value())) * f.lambda.value();
    a.n1_ok = std::abs(a.n1) > 1e-6;
    a.n2_ok = std::abs(a.n2) > 1e-6;
    a.d_ok = std::abs(a.d) > a.d_floor;
    return a;
}

TangentGradients cramer_solve(const FrameData& f, const ReductionData& rd, double y3u,
                              double y3v) {
    const Admissibility adm = admissibility(f, rd);
    if (!adm.ok()) throw PreconditionError("reduction hypotheses fail: " + adm.describe());
    const double d = rd.d.value();
    TangentGradients x;
    x.y1u = (rd.p[0].value() * y3u + rd.q[0].value() * y3v) / d;
    x.y2u = (rd.p[1].value() * y3u + rd.q[1].value() * y3v) / d;
    x.y1v = (rd.p[2].value() * y3u + rd.q[2].value() * y3v) / d;
    x.y2v = (rd.p[3].value() * y3u + rd.q[3].value() * y3v) / d;
    return x;
}

TangentGradients dense_solve(const FrameData& f, double y3u, double y3v) {
    const Eigen::Matrix4d m = elimination_matrix(f);
    Eigen::Vector4d zp, zq;
    elimination_rhs(f, zp, zq);
    const Eigen::Vector4d rhs = zp * y3u + zq * y3v;
    const Eigen::Vector4d x = m.colPivHouseholderQr().solve(rhs);
    return {x(0), x(1), x(2), x(3)};
}

const char* to_string(PdeClass c) {
    switch (c) {
        case PdeClass::elliptic: return "elliptic";
        case PdeClass::hyperbolic: return "hyperbolic";
        case PdeClass::parabolic: return "parabolic";
        case PdeClass::degenerate: return "degenerate";
    }
    return "?";
}

PdeClass classify(double a_uu, double a_uv, double a_vv, double b_u, double b_v,
                  double principal_floor) {
    const double principal = std::max({std::abs(a_uu), std::abs(a_uv), std::abs(a_vv)});
    const double scale = std::max({principal, std::abs(b_u), std::abs(b_v)});
    if (scale == 0.0 || principal <= std::max(principal_floor, 1e-10 * scale))
        return PdeClass::degenerate;
    // Scale-free discriminant.
    const double auu = a_uu / principal, auv = a_uv / principal, avv = a_vv / principal;
    const double disc = auv * auv - 4.0 * auu * avv;
    if (disc > 1e-10) return PdeClass::hyperbolic;
    if (disc < -1e-10) return PdeClass::elliptic;
    return PdeClass::parabolic;
}

namespace {

SecondOrderPDE make_pde(double a_uu, double a_uv, double a_vv, double b_u, double b_v,
                        PdeForm form, double principal_floor) {
    SecondOrderPDE pde;
    pde.form = form;
    pde.cls = classify(a_uu, a_uv, a_vv, b_u, b_v, principal_floor);
    double divisor = 1.0;
    if (pde.cls != PdeClass::degenerate) {
        divisor = a_uu;
        if (std::abs(a_uv) > std::abs(divisor)) divisor = a_uv;
        if (std::abs(a_vv) > std::abs(divisor)) divisor = a_vv;
    }
    pde.a_uu = a_uu / divisor;
    pde.a_uv = a_uv / divisor;
    pde.a_vv = a_vv / divisor;
    pde.b_u = b_u / divisor;
    pde.b_v = b_v / divisor;
    return pde;
}

} // namespace

PdePair assemble_pdes(const FrameData& f, const ReductionData& rd) {
    const Admissibility adm = admissibility(f, rd);
    if (!adm.ok()) throw PreconditionError("reduction hypotheses fail: " + adm.describe());

    const double n1 = adm.n1, n2 = adm.n2, d = adm.d;
    const double du = rd.d.du(), dv = rd.d.dv();
    const double p1 = rd.p[0].value(), p2 = rd.p[1].value(), p3 = rd.p[2].value(),
                 p4 = rd.p[3].value();
    const double q1 = rd.q[0].value(), q2 = rd.q[1].value(), q3 = rd.q[2].value(),
                 q4 = rd.q[3].value();

    PdePair out;
    out.r[0] = (rd.p[0].dv() - rd.p[2].du()) / n2 + (p3 * du - p1 * dv) / (n2 * d);
    out.r[1] = (rd.q[0].dv() - rd.q[2].du()) / n2 + (q3 * du - q1 * dv) / (n2 * d);
    out.r[2] = (rd.p[3].du() - rd.p[1].dv()) / n1 + (p2 * dv - p4 * du) / (n1 * d);
    out.r[3] = (rd.q[3].du() - rd.q[1].dv()) / n1 + (q2 * dv - q4 * du) / (n1 * d);

    const double omega = rd.omega.value();
    const double lambda = f.lambda.value();
    out.rho[0] = (out.r[0] + out.r[2]) / (2.0 * omega);
    out.rho[1] = (out.r[1] + out.r[3]) / (2.0 * omega);
    out.rho[2] = (out.r[0] - out.r[2]) / (4.0 * lambda);
    out.rho[3] = (out.r[1] - out.r[3]) / (4.0 * lambda);

    // Principal parts count as vanished below a curvature-scaled floor.
    const double h_scale = std::abs(f.h11.value()) + std::abs(f.h12.value()) +
                           std::abs(f.h22.value());
    const double floor = 1e-10 * h_scale;
    out.diag = make_pde(f.h22.value(), 0.0, f.h11.value(), out.rho[0], out.rho[1],
                        PdeForm::principal_diag, floor);
    out.mixed = make_pde(0.0, f.h12.value(), 0.0, out.rho[2], out.rho[3],
                         PdeForm::principal_mixed, floor);
    return out;
}

RawReducedEquation reduced_equation(const FrameData& f, const ReductionData& rd) {
    const Admissibility adm = admissibility(f, rd);
    if (!adm.ok()) throw PreconditionError("reduction hypotheses fail: " + adm.describe());

    const double n2 = adm.n2, d = adm.d;
    const double du = rd.d.du(), dv = rd.d.dv();
    const double p1 = rd.p[0].value(), p3 = rd.p[2].value();
    const double q1 = rd.q[0].value(), q3 = rd.q[2].value();

    RawReducedEquation eq;
    eq.a_uu = rd.omega.value() * f.h22.value();
    eq.a_uv = -2.0 * f.lambda.value() * f.h12.value();
    eq.a_vv = rd.omega.value() * f.h11.value();
    eq.b_u = (rd.p[0].dv() - rd.p[2].du()) / n2 + (p3 * du - p1 * dv) / (n2 * d);
    eq.b_v = (rd.q[0].dv() - rd.q[2].du()) / n2 + (q3 * du - q1 * dv) / (n2 * d);
    return eq;
}

} // namespace darboux
