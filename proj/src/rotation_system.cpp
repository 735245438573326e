#include "darboux/rotation_system.hpp"

#include <algorithm>
#include <cmath>

namespace darboux {

DarbouxMatrix assemble(const FrameData& f) {
    const Eigen::Vector3d n = f.n_value();
    const Eigen::Vector3d xu = f.xu_value();
    const Eigen::Vector3d xv = f.xv_value();
    const double h11 = f.h11.value(), h12 = f.h12.value(), h22 = f.h22.value();

    DarbouxMatrix d;
    d.u = f.chart.x1.base_u();
    d.v = f.chart.x1.base_v();
    d.m.setZero();
    for (int k = 0; k < 3; ++k) {
        d.m(0, k) = n(k);
        d.m(1, k + 3) = n(k);
        d.m(2, k) = xu(k);
        d.m(2, k + 3) = xv(k);
        d.m(3, k) = h12 * xu(k) + h22 * xv(k);
        d.m(3, k + 3) = -(h11 * xu(k) + h12 * xv(k));
    }
    return d;
}

DarbouxMatrix paper_scaled(const DarbouxMatrix& m, const FrameData& f, ChartPreset preset) {
    double scale[4] = {1.0, 1.0, 1.0, 1.0};
    switch (preset) {
        case ChartPreset::plane:
            break;
        case ChartPreset::sphere_stereo: {
            const double w = m.u * m.u + m.v * m.v + 1.0;
            scale[0] = scale[1] = -w;
            scale[2] = w * w / 2.0;
            scale[3] = w * w * w * w / 8.0;
            break;
        }
        case ChartPreset::helicoid_catenoid: {
            const double cv = std::cosh(f.chart.x1.base_v());
            scale[0] = scale[1] = cv;
            break;
        }
        case ChartPreset::custom:
            throw PreconditionError("paper scaling is defined only for the built-in presets");
    }
    DarbouxMatrix out = m;
    for (int r = 0; r < 4; ++r) out.m.row(r) *= scale[r];
    return out;
}

int numerical_rank(const DarbouxMatrix& m, double rel_tol) {
    Eigen::JacobiSVD<Eigen::Matrix<double, 4, 6>> svd(m.m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    int rank = 0;
    for (int k = 0; k < sv.size(); ++k)
        if (sv(k) > rel_tol * sv(0)) ++rank;
    return rank;
}

double minor_det(const DarbouxMatrix& m, int drop_i, int drop_j) {
    if (!(1 <= drop_i && drop_i < drop_j && drop_j <= 6))
        throw PreconditionError("minor_det expects 1 <= i < j <= 6");
    Eigen::Matrix4d sub;
    int col = 0;
    for (int c = 0; c < 6; ++c) {
        if (c == drop_i - 1 || c == drop_j - 1) continue;
        sub.col(col++) = m.m.col(c);
    }
    return sub.determinant();
}

double FirstOrderResiduals::max_abs() const {
    return std::max(max_abs_classical(), std::abs(curvature));
}

double FirstOrderResiduals::max_abs_classical() const {
    return std::max({compat.cwiseAbs().maxCoeff(), std::abs(normal_u), std::abs(normal_v),
                     std::abs(trace)});
}

FirstOrderResiduals first_order_residuals(const Eigen::Vector3d& yu, const Eigen::Vector3d& yv,
                                          const FrameData& f) {
    const Eigen::Vector3d n = f.n_value();
    const Eigen::Vector3d xu = f.xu_value();
    const Eigen::Vector3d xv = f.xv_value();
    const double h11 = f.h11.value(), h12 = f.h12.value(), h22 = f.h22.value();

    FirstOrderResiduals r;
    r.compat = yu.cross(xv) - yv.cross(xu);
    r.normal_u = yu.dot(n);
    r.normal_v = yv.dot(n);
    r.trace = yu.dot(xu) + yv.dot(xv);
    r.curvature = h12 * yu.dot(xu) + h22 * yu.dot(xv) - h11 * yv.dot(xu) - h12 * yv.dot(xv);
    return r;
}

FirstOrderResiduals first_order_residuals(const FieldJet& y, const FrameData& f) {
    if (!same_base(y.f1, f.chart.x1))
        throw PreconditionError("field jet and surface jet have different base points");
    const JetVec3 yc = components(y);
    return first_order_residuals(values_du(yc), values_dv(yc), f);
}

Eigen::Matrix<double, 3, 6> compat_matrix(const FrameData& f) {
    const Eigen::Vector3d xu = f.xu_value();
    const Eigen::Vector3d xv = f.xv_value();
    Eigen::Matrix<double, 3, 6> m;
    // Componentwise form of y_u x x_v - y_v x x_u = 0.
    m << 0.0, xv(2), -xv(1), 0.0, -xu(2), xu(1),
         -xv(2), 0.0, xv(0), xu(2), 0.0, -xu(0),
         xv(1), -xv(0), 0.0, -xu(1), xu(0), 0.0;
    return m;
}

BendingSolve field_from_bending(const FieldJet& z, const SurfaceJet& s) {
    if (!same_base(z.f1, s.x1))
        throw PreconditionError("field jet and surface jet have different base points");
    const JetVec3 xc = components(s);
    const JetVec3 xu = {partial_u(xc[0]), partial_u(xc[1]), partial_u(xc[2])};
    const JetVec3 xv = {partial_v(xc[0]), partial_v(xc[1]), partial_v(xc[2])};
    const Eigen::Vector3d a = values(xu);
    const Eigen::Vector3d b = values(xv);
    if (a.cross(b).squaredNorm() <= 0.0)
        throw PreconditionError("x_u and x_v are linearly dependent at the point");

    // y x a = [a]_x^T y componentwise.
    auto cross_rows = [](const Eigen::Vector3d& w) {
        Eigen::Matrix3d m;
        m << 0.0, w(2), -w(1),
             -w(2), 0.0, w(0),
             w(1), -w(0), 0.0;
        return m;
    };

    const JetVec3 zc = components(z);
    Eigen::Matrix<double, 6, 3> lhs;
    lhs.topRows<3>() = cross_rows(a);
    lhs.bottomRows<3>() = cross_rows(b);
    Eigen::Matrix<double, 6, 1> rhs;
    rhs.head<3>() = values_du(zc);
    rhs.tail<3>() = values_dv(zc);

    BendingSolve out;
    out.y = lhs.colPivHouseholderQr().solve(rhs);
    out.residual = (lhs * out.y - rhs).norm();
    return out;
}

std::array<double, 3> bending_residual(const FieldJet& z, const SurfaceJet& s) {
    if (!same_base(z.f1, s.x1))
        throw PreconditionError("field jet and surface jet have different base points");
    const JetVec3 xc = components(s);
    const Eigen::Vector3d xu = {xc[0].du(), xc[1].du(), xc[2].du()};
    const Eigen::Vector3d xv = {xc[0].dv(), xc[1].dv(), xc[2].dv()};
    const JetVec3 zc = components(z);
    const Eigen::Vector3d zu = values_du(zc);
    const Eigen::Vector3d zv = values_dv(zc);
    return {zu.dot(xu), zu.dot(xv) + zv.dot(xu), zv.dot(xv)};
}

} // namespace darboux
