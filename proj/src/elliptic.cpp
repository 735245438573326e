#include "darboux/elliptic.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/SparseLU>

namespace darboux {

namespace {

std::string at_point(double u, double v) {
    std::ostringstream os;
    os << "at (u, v) = (" << u << ", " << v << ")";
    return os.str();
}

} // namespace

CoefficientSampler diag_pde_sampler(const SurfaceDef& def, double iso_tol) {
    return [def, iso_tol](double u, double v) -> PdeCoefficients {
        const FrameData f = frame(chart_jets(def, u, v), iso_tol);
        const PdePair pair = assemble_pdes(f, reduce(f));
        PdeCoefficients c{pair.diag.a_uu, pair.diag.a_uv, pair.diag.a_vv, pair.diag.b_u,
                          pair.diag.b_v};
        if (c.a_uu < 0.0) {
            c.a_uu = -c.a_uu;
            c.a_uv = -c.a_uv;
            c.a_vv = -c.a_vv;
            c.b_u = -c.b_u;
            c.b_v = -c.b_v;
        }
        return c;
    };
}

int DiscreteSystem::upwind_node_count() const {
    int count = 0;
    for (const auto& s : stencils)
        if (s.upwind_u || s.upwind_v) ++count;
    return count;
}

DiscreteSystem discretize(const CoefficientSampler& coeffs, const GridSpec& spec) {
    spec.validate();
    const double hu = spec.hu(), hv = spec.hv();

    DiscreteSystem sys;
    sys.spec = spec;
    sys.stencils.resize(static_cast<std::size_t>(spec.nu) * spec.nv);

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(sys.stencils.size() * 5);

    for (int iv = 1; iv <= spec.nv; ++iv) {
        for (int iu = 1; iu <= spec.nu; ++iu) {
            const double u = spec.u_at(iu), v = spec.v_at(iv);
            PdeCoefficients c;
            try {
                c = coeffs(u, v);
            } catch (const PreconditionError& e) {
                throw PreconditionError(std::string(e.what()) + " " + at_point(u, v));
            }
            if (c.a_uu < 0.0 && c.a_vv < 0.0) {
                c = {-c.a_uu, -c.a_uv, -c.a_vv, -c.b_u, -c.b_v};
            }
            const double scale =
                std::max({std::abs(c.a_uu), std::abs(c.a_vv), std::abs(c.a_uv)});
            if (std::abs(c.a_uv) > 1e-12 * scale)
                throw PreconditionError("mixed-derivative coefficient is nonzero " +
                                        at_point(u, v));
            if (!(c.a_uu * c.a_vv > 0.0))
                throw PreconditionError("equation is not elliptic (a_uu*a_vv <= 0) " +
                                        at_point(u, v));

            const double cu = c.a_uu / (hu * hu);
            const double cv = c.a_vv / (hv * hv);
            const double pe_u = std::abs(c.b_u) * hu / (2.0 * c.a_uu);
            const double pe_v = std::abs(c.b_v) * hv / (2.0 * c.a_vv);

            DiscreteSystem::NodeStencil st{};
            st.upwind_u = !(pe_u < 1.0);
            st.upwind_v = !(pe_v < 1.0);
            if (st.upwind_u) {
                st.east = -cu - std::max(c.b_u, 0.0) / hu;
                st.west = -cu - std::max(-c.b_u, 0.0) / hu;
                st.diag = 2.0 * cu + std::abs(c.b_u) / hu;
            } else {
                st.east = -cu - c.b_u / (2.0 * hu);
                st.west = -cu + c.b_u / (2.0 * hu);
                st.diag = 2.0 * cu;
            }
            if (st.upwind_v) {
                st.north = -cv - std::max(c.b_v, 0.0) / hv;
                st.south = -cv - std::max(-c.b_v, 0.0) / hv;
                st.diag += 2.0 * cv + std::abs(c.b_v) / hv;
            } else {
                st.north = -cv - c.b_v / (2.0 * hv);
                st.south = -cv + c.b_v / (2.0 * hv);
                st.diag += 2.0 * cv;
            }

            // M-matrix structure must hold by construction; a violation here
            // is a bug, not data-dependent behavior.
            if (!(st.diag > 0.0) || st.east > 0.0 || st.west > 0.0 || st.north > 0.0 ||
                st.south > 0.0)
                throw NumericalError("stencil lost the M-matrix structure " + at_point(u, v));

            const int k = (iv - 1) * spec.nu + (iu - 1);
            sys.stencils[k] = st;
            triplets.emplace_back(k, k, st.diag);
            if (iu > 1) triplets.emplace_back(k, k - 1, st.west);
            if (iu < spec.nu) triplets.emplace_back(k, k + 1, st.east);
            if (iv > 1) triplets.emplace_back(k, k - spec.nu, st.south);
            if (iv < spec.nv) triplets.emplace_back(k, k + spec.nu, st.north);
        }
    }

    sys.matrix.resize(sys.unknowns(), sys.unknowns());
    sys.matrix.setFromTriplets(triplets.begin(), triplets.end());
    return sys;
}

DiscreteSystem discretize_elliptic(const SurfaceDef& def, const GridSpec& spec, double iso_tol) {
    spec.validate();
    if (!(spec.u0 > def.u_min && spec.u1 < def.u_max && spec.v0 > def.v_min &&
          spec.v1 < def.v_max))
        throw PreconditionError("grid rectangle is not strictly inside the surface domain");
    for (const auto& line : def.excluded_lines) {
        const double lo = (line.axis == 'u') ? spec.u0 : spec.v0;
        const double hi = (line.axis == 'u') ? spec.u1 : spec.v1;
        if (line.value >= lo && line.value <= hi)
            throw PreconditionError(std::string("grid rectangle crosses the excluded line ") +
                                    line.axis + " = " + std::to_string(line.value));
    }
    return discretize(diag_pde_sampler(def, iso_tol), spec);
}

GridField solve_dirichlet(const DiscreteSystem& system, const GridField& boundary) {
    const GridSpec& spec = system.spec;
    if (boundary.spec.total_u() != spec.total_u() || boundary.spec.total_v() != spec.total_v())
        throw PreconditionError("boundary field does not match the system grid");
    for (int iv = 0; iv < spec.total_v(); ++iv)
        for (int iu = 0; iu < spec.total_u(); ++iu)
            if (boundary.is_boundary(iu, iv) && !std::isfinite(boundary.at(iu, iv)))
                throw PreconditionError("boundary ring contains non-finite values");

    // Solving for the offset from a boundary reference value keeps constant
    // data exact: the right-hand side is then identically zero and so is the
    // solved offset.
    const double ref = boundary.at(0, 0);

    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(system.unknowns());
    for (int iv = 1; iv <= spec.nv; ++iv) {
        for (int iu = 1; iu <= spec.nu; ++iu) {
            const int k = (iv - 1) * spec.nu + (iu - 1);
            const auto& st = system.stencils[k];
            if (iu == 1) rhs(k) -= st.west * (boundary.at(0, iv) - ref);
            if (iu == spec.nu) rhs(k) -= st.east * (boundary.at(spec.nu + 1, iv) - ref);
            if (iv == 1) rhs(k) -= st.south * (boundary.at(iu, 0) - ref);
            if (iv == spec.nv) rhs(k) -= st.north * (boundary.at(iu, spec.nv + 1) - ref);
        }
    }

    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(system.matrix);
    if (lu.info() != Eigen::Success)
        throw NumericalError("sparse factorization failed (matrix singular or ill-conditioned)");
    const Eigen::VectorXd w = lu.solve(rhs);

    const double rhs_norm = rhs.lpNorm<Eigen::Infinity>();
    const double res_norm = (system.matrix * w - rhs).lpNorm<Eigen::Infinity>();
    if (rhs_norm > 0.0 && !(res_norm <= 1e-10 * rhs_norm))
        throw NumericalError("linear solve residual " + std::to_string(res_norm / rhs_norm) +
                             " exceeds 1e-10");

    GridField out = boundary;
    out.spec = spec;
    for (int iv = 1; iv <= spec.nv; ++iv)
        for (int iu = 1; iu <= spec.nu; ++iu)
            out.at(iu, iv) = ref + w((iv - 1) * spec.nu + (iu - 1));
    return out;
}

MaxPrincipleReport check_max_principle(const GridField& field) {
    const GridSpec& spec = field.spec;
    MaxPrincipleReport rep;
    rep.interior_max = -std::numeric_limits<double>::infinity();
    rep.interior_min = std::numeric_limits<double>::infinity();
    rep.boundary_max = -std::numeric_limits<double>::infinity();
    rep.boundary_min = std::numeric_limits<double>::infinity();

    for (int iv = 0; iv < spec.total_v(); ++iv) {
        for (int iu = 0; iu < spec.total_u(); ++iu) {
            const double value = field.at(iu, iv);
            if (field.is_boundary(iu, iv)) {
                rep.boundary_max = std::max(rep.boundary_max, value);
                rep.boundary_min = std::min(rep.boundary_min, value);
            } else {
                if (value > rep.interior_max) {
                    rep.interior_max = value;
                    rep.argmax_iu = iu;
                    rep.argmax_iv = iv;
                }
                if (value < rep.interior_min) {
                    rep.interior_min = value;
                    rep.argmin_iu = iu;
                    rep.argmin_iv = iv;
                }
            }
        }
    }
    rep.margin_max = rep.boundary_max - rep.interior_max;
    rep.margin_min = rep.interior_min - rep.boundary_min;
    rep.margin = std::min(rep.margin_max, rep.margin_min);
    rep.pass = rep.margin >= -1e-10;
    return rep;
}

GridField grid_residual(const CoefficientSampler& coeffs, const GridField& field) {
    const GridSpec& spec = field.spec;
    spec.validate();
    const double hu = spec.hu(), hv = spec.hv();

    GridField out = GridField::zeros(spec);
    for (double& value : out.values) value = std::numeric_limits<double>::quiet_NaN();

    for (int iv = 1; iv <= spec.nv; ++iv) {
        for (int iu = 1; iu <= spec.nu; ++iu) {
            const PdeCoefficients c = coeffs(spec.u_at(iu), spec.v_at(iv));
            const double y = field.at(iu, iv);
            const double yu = (field.at(iu + 1, iv) - field.at(iu - 1, iv)) / (2.0 * hu);
            const double yv = (field.at(iu, iv + 1) - field.at(iu, iv - 1)) / (2.0 * hv);
            const double yuu = (field.at(iu + 1, iv) - 2.0 * y + field.at(iu - 1, iv)) / (hu * hu);
            const double yvv = (field.at(iu, iv + 1) - 2.0 * y + field.at(iu, iv - 1)) / (hv * hv);
            const double yuv = (field.at(iu + 1, iv + 1) - field.at(iu + 1, iv - 1) -
                                field.at(iu - 1, iv + 1) + field.at(iu - 1, iv - 1)) /
                               (4.0 * hu * hv);
            out.at(iu, iv) =
                c.a_uu * yuu + c.a_uv * yuv + c.a_vv * yvv + c.b_u * yu + c.b_v * yv;
        }
    }
    return out;
}

} // namespace darboux
