#include <doctest.h>

#include <cmath>
#include <random>

#include "darboux/elliptic.hpp"

using namespace darboux;

namespace {

GridField boundary_from(const GridSpec& spec, const std::function<double(double, double)>& g) {
    GridField f = GridField::zeros(spec);
    for (int iv = 0; iv < spec.total_v(); ++iv)
        for (int iu = 0; iu < spec.total_u(); ++iu)
            if (f.is_boundary(iu, iv)) f.at(iu, iv) = g(spec.u_at(iu), spec.v_at(iv));
    return f;
}

CoefficientSampler laplace() {
    return [](double, double) { return PdeCoefficients{1.0, 0.0, 1.0, 0.0, 0.0}; };
}

double interior_error_vs(const GridField& solved,
                         const std::function<double(double, double)>& exact) {
    double err = 0.0;
    const GridSpec& spec = solved.spec;
    for (int iv = 1; iv <= spec.nv; ++iv)
        for (int iu = 1; iu <= spec.nu; ++iu)
            err = std::max(err,
                           std::abs(solved.at(iu, iv) - exact(spec.u_at(iu), spec.v_at(iv))));
    return err;
}

} // namespace

TEST_CASE("grid spec validation") {
    GridSpec bad{0.0, 0.0, 0.0, 1.0, 4, 4};
    CHECK_THROWS_AS(bad.validate(), PreconditionError);
    GridSpec small{0.0, 1.0, 0.0, 1.0, 2, 4};
    CHECK_THROWS_AS(small.validate(), PreconditionError);
    GridSpec ok{0.0, 1.0, 0.0, 2.0, 4, 9};
    ok.validate();
    CHECK(ok.hu() == doctest::Approx(0.2));
    CHECK(ok.hv() == doctest::Approx(0.2));
    CHECK(ok.u_at(0) == 0.0);
    CHECK(ok.u_at(5) == doctest::Approx(1.0));
}

TEST_CASE("sphere rectangle discretizes with the M-matrix structure") {
    const SurfaceDef sphere = make_preset("sphere-stereo");
    const GridSpec spec{0.5, 1.5, 0.5, 1.5, 32, 32};
    const DiscreteSystem sys = discretize_elliptic(sphere, spec);
    CHECK(sys.unknowns() == 32 * 32);

    for (const auto& st : sys.stencils) {
        CHECK(st.diag > 0.0);
        CHECK(st.west <= 0.0);
        CHECK(st.east <= 0.0);
        CHECK(st.south <= 0.0);
        CHECK(st.north <= 0.0);
        // Weak row diagonal dominance (equality when every neighbor is an
        // unknown; boundary-adjacent rows are strictly dominant).
        const double offsum = st.west + st.east + st.south + st.north;
        CHECK(st.diag + offsum >= -1e-12 * st.diag);
    }

    // The assembled sparse matrix mirrors the stencils.
    for (int k = 0; k < sys.matrix.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(sys.matrix, k); it; ++it) {
            if (it.row() == it.col()) CHECK(it.value() > 0.0);
            else CHECK(it.value() <= 0.0);
        }
}

TEST_CASE("refusals: hyperbolic, inadmissible, domain and excluded lines") {
    SurfaceDef heli = make_preset("helicoid-catenoid");
    heli.params["t"] = M_PI / 4.0;
    const GridSpec inside_quadrant{0.8, 1.4, -0.5, 0.5, 8, 8};
    CHECK_THROWS_WITH_AS(discretize_elliptic(heli, inside_quadrant, 1e-8),
                         doctest::Contains("not elliptic"), PreconditionError);

    const SurfaceDef plane = make_preset("plane");
    CHECK_THROWS_WITH_AS(discretize_elliptic(plane, inside_quadrant, 1e-8),
                         doctest::Contains("hypotheses fail"), PreconditionError);

    const SurfaceDef sphere = make_preset("sphere-stereo");
    const GridSpec outside{3.0, 5.0, 0.5, 1.5, 8, 8};
    CHECK_THROWS_WITH_AS(discretize_elliptic(sphere, outside, 1e-8),
                         doctest::Contains("not strictly inside"), PreconditionError);
    const GridSpec crossing{-0.5, 1.5, 0.5, 1.5, 8, 8}; // crosses u = 0
    CHECK_THROWS_WITH_AS(discretize_elliptic(sphere, crossing, 1e-8),
                         doctest::Contains("excluded line"), PreconditionError);
}

TEST_CASE("constant boundary reproduces the constant exactly") {
    const SurfaceDef sphere = make_preset("sphere-stereo");
    const GridSpec spec{0.5, 1.5, 0.5, 1.5, 16, 16};
    const DiscreteSystem sys = discretize_elliptic(sphere, spec);
    const GridField boundary = boundary_from(spec, [](double, double) { return 3.75; });
    const GridField solved = solve_dirichlet(sys, boundary);
    for (int iv = 1; iv <= spec.nv; ++iv)
        for (int iu = 1; iu <= spec.nu; ++iu) CHECK(solved.at(iu, iv) == 3.75);

    const MaxPrincipleReport rep = check_max_principle(solved);
    CHECK(rep.pass);
    CHECK(rep.margin == 0.0);
}

TEST_CASE("five-point stencil reproduces linear boundary data exactly") {
    const GridSpec spec{0.0, 1.0, 0.0, 1.0, 24, 24};
    const DiscreteSystem sys = discretize(laplace(), spec);
    const GridField boundary = boundary_from(spec, [](double u, double) { return u; });
    const GridField solved = solve_dirichlet(sys, boundary);
    CHECK(interior_error_vs(solved, [](double u, double) { return u; }) < 1e-12);
}

TEST_CASE("second-order convergence on a harmonic solution") {
    auto exact = [](double u, double v) { return std::exp(u) * std::cos(v); };
    auto error_at = [&](int n) {
        const GridSpec spec{0.0, 1.0, 0.0, 1.0, n, n};
        const GridField boundary = boundary_from(spec, exact);
        return interior_error_vs(solve_dirichlet(discretize(laplace(), spec), boundary), exact);
    };
    const double e16 = error_at(16);
    const double e32 = error_at(32);
    const double ratio = e16 / e32;
    // h shrinks by 33/17 per refinement; expect ~(33/17)^2 = 3.77.
    CHECK(ratio > 3.0);
    CHECK(ratio < 5.0);
}

TEST_CASE("upwind fallback engages for convection-dominated coefficients") {
    const CoefficientSampler convective = [](double, double) {
        return PdeCoefficients{1.0, 0.0, 1.0, 300.0, -250.0};
    };
    const GridSpec spec{0.0, 1.0, 0.0, 1.0, 8, 8}; // hu = 1/9: peclet >> 1
    const DiscreteSystem sys = discretize(convective, spec);
    CHECK(sys.upwind_node_count() == sys.unknowns());
    for (const auto& st : sys.stencils) {
        CHECK(st.east <= 0.0);
        CHECK(st.west <= 0.0);
        CHECK(st.north <= 0.0);
        CHECK(st.south <= 0.0);
    }
    // The maximum principle still holds.
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    const double a = amp(rng), b = amp(rng);
    const GridField boundary = boundary_from(
        spec, [&](double u, double v) { return a * std::sin(3 * u) + b * std::cos(2 * v); });
    CHECK(check_max_principle(solve_dirichlet(sys, boundary)).pass);
}

TEST_CASE("seeded random boundary data always satisfies the discrete maximum principle") {
    const SurfaceDef sphere = make_preset("sphere-stereo");
    const GridSpec spec{0.5, 1.5, 0.5, 1.5, 24, 24};
    const DiscreteSystem sys = discretize_elliptic(sphere, spec);
    for (unsigned seed = 0; seed < 10; ++seed) {
        std::mt19937 rng(seed);
        std::uniform_real_distribution<double> amp(-2.0, 2.0);
        std::uniform_real_distribution<double> freq(0.5, 4.0);
        const double a1 = amp(rng), a2 = amp(rng), w1 = freq(rng), w2 = freq(rng);
        const GridField boundary = boundary_from(spec, [&](double u, double v) {
            return a1 * std::sin(w1 * u + 0.3) + a2 * std::cos(w2 * v - 0.7);
        });
        const GridField solved = solve_dirichlet(sys, boundary);
        const MaxPrincipleReport rep = check_max_principle(solved);
        CHECK(rep.pass);
        CHECK(rep.margin >= -1e-10);
        CHECK(rep.boundary_max >= rep.interior_max - 1e-10);
        CHECK(rep.boundary_min <= rep.interior_min + 1e-10);
    }
}

TEST_CASE("the checker is not vacuous: an interior bump fails") {
    const GridSpec spec{0.0, 1.0, 0.0, 1.0, 9, 9};
    GridField bump = GridField::zeros(spec);
    bump.at(5, 5) = 1.0;
    const MaxPrincipleReport rep = check_max_principle(bump);
    CHECK_FALSE(rep.pass);
    CHECK(rep.interior_max == 1.0);
    CHECK(rep.boundary_max == 0.0);
    CHECK(rep.argmax_iu == 5);
    CHECK(rep.argmax_iv == 5);
}

TEST_CASE("grid residuals") {
    const GridSpec spec{0.0, 1.0, 0.0, 1.0, 12, 12};

    // Constant field: zero residual for any sampler without zeroth-order term.
    GridField constant = GridField::zeros(spec);
    for (double& x : constant.values) x = 2.5;
    const GridField r0 = grid_residual(laplace(), constant);
    for (int iv = 1; iv <= spec.nv; ++iv)
        for (int iu = 1; iu <= spec.nu; ++iu) CHECK(r0.at(iu, iv) == 0.0);
    CHECK(std::isnan(r0.at(0, 0)));

    // u*v under the pure mixed-derivative equation: residual identically 1.
    const CoefficientSampler mixed_only = [](double, double) {
        return PdeCoefficients{0.0, 1.0, 0.0, 0.0, 0.0};
    };
    GridField uv = GridField::zeros(spec);
    for (int iv = 0; iv < spec.total_v(); ++iv)
        for (int iu = 0; iu < spec.total_u(); ++iu)
            uv.at(iu, iv) = spec.u_at(iu) * spec.v_at(iv);
    const GridField r1 = grid_residual(mixed_only, uv);
    for (int iv = 1; iv <= spec.nv; ++iv)
        for (int iu = 1; iu <= spec.nu; ++iu)
            CHECK(r1.at(iu, iv) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("solver rejects mismatched or non-finite boundary data") {
    const GridSpec spec{0.0, 1.0, 0.0, 1.0, 8, 8};
    const DiscreteSystem sys = discretize(laplace(), spec);

    GridField wrong = GridField::zeros(GridSpec{0.0, 1.0, 0.0, 1.0, 4, 4});
    CHECK_THROWS_AS(solve_dirichlet(sys, wrong), PreconditionError);

    GridField nan_ring = GridField::zeros(spec);
    nan_ring.at(0, 3) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(solve_dirichlet(sys, nan_ring), PreconditionError);
}
