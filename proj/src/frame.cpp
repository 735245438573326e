#include "darboux/frame.hpp"

#include <algorithm>
#include <cmath>

namespace darboux {

namespace {

JetVec3 partials_u(const SurfaceJet& s) {
    return {partial_u(s.x1), partial_u(s.x2), partial_u(s.x3)};
}

JetVec3 partials_v(const SurfaceJet& s) {
    return {partial_v(s.x1), partial_v(s.x2), partial_v(s.x3)};
}

} // namespace

IsothermalCheck isothermal_check(const SurfaceJet& s) {
    const JetVec3 xu = partials_u(s);
    const JetVec3 xv = partials_v(s);
    const double e = values(xu).squaredNorm();
    const double g = values(xv).squaredNorm();
    const double f = values(xu).dot(values(xv));
    if (!(e > 0.0)) throw PreconditionError("degenerate chart: lambda <= 0");
    const double residual = std::max(std::abs(e - g), std::abs(f)) / e;
    return {e, residual};
}

FrameData frame(const SurfaceJet& s, double iso_tol) {
    const IsothermalCheck iso = isothermal_check(s);
    if (!(iso.residual <= iso_tol))
        throw PreconditionError("chart is not isothermal: residual " +
                                std::to_string(iso.residual) + " exceeds tolerance");

    FrameData f;
    f.chart = s;
    f.xu = partials_u(s);
    f.xv = partials_v(s);
    f.iso_residual = iso.residual;
    f.lambda = dot(f.xu, f.xu);

    // Normal from the cross product, renormalized at jet level so |n| = 1
    // holds even when the chart is only approximately isothermal.
    const JetVec3 c = cross(f.xu, f.xv);
    const Jet3 norm2 = dot(c, c);
    if (!(norm2.value() > 0.0) || !std::isfinite(norm2.value()))
        throw PreconditionError("vanishing normal: x_u x x_v = 0");
    const Jet3 inv_norm = reciprocal(sqrt(norm2));
    f.n = {c[0] * inv_norm, c[1] * inv_norm, c[2] * inv_norm};

    const JetVec3 xuu = {partial_u(f.xu[0]), partial_u(f.xu[1]), partial_u(f.xu[2])};
    const JetVec3 xuv = {partial_v(f.xu[0]), partial_v(f.xu[1]), partial_v(f.xu[2])};
    const JetVec3 xvv = {partial_v(f.xv[0]), partial_v(f.xv[1]), partial_v(f.xv[2])};
    f.h11 = dot(xuu, f.n);
    f.h12 = dot(xuv, f.n);
    f.h22 = dot(xvv, f.n);
    return f;
}

double cross_identity_residual(const FrameData& f) {
    const Eigen::Vector3d xu = f.xu_value();
    const Eigen::Vector3d xv = f.xv_value();
    const Eigen::Vector3d n = f.n_value();
    const double lambda = f.lambda.value();

    const Eigen::Vector3d r1 = lambda * n - xu.cross(xv);
    const Eigen::Vector3d r2 = xu - xv.cross(n);
    const Eigen::Vector3d r3 = xv - n.cross(xu);
    return std::max({r1.cwiseAbs().maxCoeff(), r2.cwiseAbs().maxCoeff(), r3.cwiseAbs().maxCoeff()});
}

double weingarten_residual(const FrameData& f) {
    const Eigen::Vector3d xu = f.xu_value();
    const Eigen::Vector3d xv = f.xv_value();
    const double inv_lambda = 1.0 / f.lambda.value();

    const Eigen::Vector3d nu = values_du(f.n);
    const Eigen::Vector3d nv = values_dv(f.n);
    const Eigen::Vector3d r1 = nu + inv_lambda * (f.h11.value() * xu + f.h12.value() * xv);
    const Eigen::Vector3d r2 = nv + inv_lambda * (f.h12.value() * xu + f.h22.value() * xv);
    return std::max(r1.cwiseAbs().maxCoeff(), r2.cwiseAbs().maxCoeff());
}

} // namespace darboux
