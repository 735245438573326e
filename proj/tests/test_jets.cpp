#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "darboux/jet.hpp"

using darboux::Jet3;
using darboux::PreconditionError;

namespace {

// Moves a polynomial sum a_ij u^i v^j to a new base point by binomial
// expansion: independent oracle for jet coefficients of polynomials.
double recentered_coeff(const double (&a)[4][4], double u0, double v0, int i, int j) {
    auto binom = [](int n, int k) -> double {
        double r = 1.0;
        for (int x = 0; x < k; ++x) r = r * (n - x) / (x + 1);
        return r;
    };
    double c = 0.0;
    for (int p = i; p <= 3; ++p)
        for (int q = j; q + p <= 3; ++q)
            c += a[p][q] * binom(p, i) * binom(q, j) * std::pow(u0, p - i) * std::pow(v0, q - j);
    return c;
}

Jet3 polynomial_jet(const double (&a)[4][4], double u0, double v0) {
    const Jet3 u = Jet3::variable_u(u0, v0);
    const Jet3 v = Jet3::variable_v(u0, v0);
    Jet3 sum = Jet3::constant(0.0, u0, v0);
    for (int p = 0; p <= 3; ++p)
        for (int q = 0; q + p <= 3; ++q)
            sum = sum + a[p][q] * pow_int(u, p) * pow_int(v, q);
    return sum;
}

// Richardson-extrapolated central differences.
double fd1(const std::function<double(double)>& f, double x, double h) {
    auto d = [&](double s) { return (f(x + s) - f(x - s)) / (2.0 * s); };
    return (4.0 * d(h / 2.0) - d(h)) / 3.0;
}

double fd2(const std::function<double(double)>& f, double x, double h) {
    auto d = [&](double s) { return (f(x + s) - 2.0 * f(x) + f(x - s)) / (s * s); };
    return (4.0 * d(h / 2.0) - d(h)) / 3.0;
}

} // namespace

TEST_CASE("variable seeds") {
    const Jet3 u = Jet3::variable_u(2.0, 3.0);
    CHECK(u.value() == 2.0);
    CHECK(u.coeff(1, 0) == 1.0);
    CHECK(u.coeff(0, 1) == 0.0);
    CHECK(u.coeff(2, 0) == 0.0);

    const Jet3 v = Jet3::variable_v(2.0, 3.0);
    CHECK(v.value() == 3.0);
    CHECK(v.coeff(0, 1) == 1.0);
    CHECK(v.coeff(1, 0) == 0.0);

    const Jet3 u0 = Jet3::variable_u(0.0, 0.0);
    CHECK(u0.value() == 0.0);
    CHECK(u0.coeff(1, 0) == 1.0);
}

TEST_CASE("product rule on seeds") {
    const Jet3 p = Jet3::variable_u(2.0, 3.0) * Jet3::variable_v(2.0, 3.0);
    CHECK(p.value() == 6.0);
    CHECK(p.coeff(1, 0) == 3.0);
    CHECK(p.coeff(0, 1) == 2.0);
    CHECK(p.coeff(1, 1) == 1.0);
    CHECK(p.coeff(2, 0) == 0.0);
    CHECK(p.coeff(0, 3) == 0.0);
}

TEST_CASE("division roundtrip and errors") {
    const Jet3 u = Jet3::variable_u(1.5, -0.5);
    const Jet3 j = u * u + 2.0 * u + 3.0;
    const Jet3 one = j / j;
    CHECK(one.value() == doctest::Approx(1.0).epsilon(1e-15));
    for (int k = 1; k < Jet3::coeff_count; ++k)
        CHECK(std::abs(one.coeff_at(k)) < 1e-14);

    const Jet3 zero_const = Jet3::variable_u(0.0, 0.0); // c00 = 0
    CHECK_THROWS_AS(j / zero_const, PreconditionError);

    const Jet3 other_base = Jet3::variable_u(1.0, 1.0);
    CHECK_THROWS_AS(u + other_base, PreconditionError);
}

TEST_CASE("add of seeds") {
    const Jet3 s = Jet3::variable_u(1.0, 1.0) + Jet3::variable_v(1.0, 1.0);
    CHECK(s.value() == 2.0);
    CHECK(s.coeff(1, 0) == 1.0);
    CHECK(s.coeff(0, 1) == 1.0);
}

TEST_CASE("taylor coefficients of elementary functions") {
    const Jet3 su = sin(Jet3::variable_u(0.0, 0.0));
    CHECK(su.value() == 0.0);
    CHECK(su.coeff(1, 0) == 1.0);
    CHECK(su.coeff(2, 0) == 0.0);
    CHECK(su.coeff(3, 0) == doctest::Approx(-1.0 / 6.0));

    const Jet3 cv = cosh(Jet3::variable_v(0.0, 0.0));
    CHECK(cv.value() == 1.0);
    CHECK(cv.coeff(0, 1) == 0.0);
    CHECK(cv.coeff(0, 2) == doctest::Approx(0.5));

    const Jet3 e = exp(Jet3::constant(0.0, 1.0, 2.0));
    CHECK(e.value() == 1.0);
    for (int k = 1; k < Jet3::coeff_count; ++k) CHECK(e.coeff_at(k) == 0.0);
}

TEST_CASE("domain violations") {
    const Jet3 neg = Jet3::constant(-1.0, 0.0, 0.0);
    CHECK_THROWS_AS(sqrt(neg), PreconditionError);
    CHECK_THROWS_AS(log(neg), PreconditionError);
    CHECK_THROWS_AS(pow(neg, 0.5), PreconditionError);
}

TEST_CASE("random polynomials match exact recentered coefficients") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    std::uniform_real_distribution<double> point(-1.5, 1.5);
    for (int trial = 0; trial < 50; ++trial) {
        double a[4][4] = {};
        for (int p = 0; p <= 3; ++p)
            for (int q = 0; q + p <= 3; ++q) a[p][q] = coeff(rng);
        const double u0 = point(rng), v0 = point(rng);
        const Jet3 jet = polynomial_jet(a, u0, v0);
        for (int i = 0; i <= 3; ++i)
            for (int j = 0; j + i <= 3; ++j) {
                const double expected = recentered_coeff(a, u0, v0, i, j);
                CHECK(jet.coeff(i, j) == doctest::Approx(expected).epsilon(1e-12).scale(1.0));
            }
    }
}

TEST_CASE("jet derivatives agree with finite differences of smooth expressions") {
    // A few compositions over the full unary set.
    auto expr = [](double u, double v) {
        return std::exp(std::sin(u) + 0.3 * v * v) / (2.0 + std::cos(v)) +
               std::atan(u * v) * std::sqrt(2.0 + std::sinh(u)) + std::log(3.0 + std::cosh(v));
    };
    auto jet_of = [](double u0, double v0) {
        const Jet3 u = Jet3::variable_u(u0, v0);
        const Jet3 v = Jet3::variable_v(u0, v0);
        return exp(sin(u) + 0.3 * v * v) / (2.0 + cos(v)) +
               atan(u * v) * sqrt(2.0 + sinh(u)) + log(3.0 + cosh(v));
    };

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> point(-1.0, 1.0);
    const double h = 1e-4;
    for (int trial = 0; trial < 25; ++trial) {
        const double u0 = point(rng), v0 = point(rng);
        const Jet3 j = jet_of(u0, v0);
        CHECK(j.value() == doctest::Approx(expr(u0, v0)).epsilon(1e-14));

        auto along_u = [&](double u) { return expr(u, v0); };
        auto along_v = [&](double v) { return expr(u0, v); };
        CHECK(std::abs(j.du() - fd1(along_u, u0, h)) < 1e-6);
        CHECK(std::abs(j.dv() - fd1(along_v, v0, h)) < 1e-6);
        CHECK(std::abs(j.duu() - fd2(along_u, u0, h)) < 1e-6);
        CHECK(std::abs(j.dvv() - fd2(along_v, v0, h)) < 1e-6);

        auto mixed = [&](double s) { return expr(u0 + s, v0 + s); };
        // f(u0+s, v0+s)'' = f_uu + 2 f_uv + f_vv.
        const double duv_fd = (fd2(mixed, 0.0, h) - j.duu() - j.dvv()) / 2.0;
        CHECK(std::abs(j.duv() - duv_fd) < 1e-6);
    }
}

TEST_CASE("algebraic laws") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    auto random_jet = [&](double u0, double v0, bool positive) {
        const Jet3 u = Jet3::variable_u(u0, v0);
        const Jet3 v = Jet3::variable_v(u0, v0);
        Jet3 j = coeff(rng) + coeff(rng) * u + coeff(rng) * v + coeff(rng) * u * v +
                 coeff(rng) * u * u + coeff(rng) * v * v * u;
        if (positive && j.value() <= 0.5) j = j + (1.0 - j.value());
        return j;
    };

    for (int trial = 0; trial < 40; ++trial) {
        const double u0 = coeff(rng), v0 = coeff(rng);
        const Jet3 a = random_jet(u0, v0, false);
        const Jet3 b = random_jet(u0, v0, false);
        const Jet3 c = random_jet(u0, v0, true);

        const Jet3 ab = a * b, ba = b * a;
        const Jet3 sum1 = a + b, sum2 = b + a;
        for (int k = 0; k < Jet3::coeff_count; ++k) {
            CHECK(ab.coeff_at(k) == doctest::Approx(ba.coeff_at(k)).epsilon(1e-14).scale(1.0));
            CHECK(sum1.coeff_at(k) == sum2.coeff_at(k));
        }

        const Jet3 round = (a * c) / c;
        for (int k = 0; k < Jet3::coeff_count; ++k)
            CHECK(round.coeff_at(k) == doctest::Approx(a.coeff_at(k)).epsilon(1e-10).scale(1.0));

        // Product rule read off the gradient coefficients.
        CHECK(ab.du() == doctest::Approx(a.du() * b.value() + a.value() * b.du()).epsilon(1e-13).scale(1.0));
        CHECK(ab.dv() == doctest::Approx(a.dv() * b.value() + a.value() * b.dv()).epsilon(1e-13).scale(1.0));
    }
}

TEST_CASE("partial derivative jets shift coefficients") {
    const Jet3 u = Jet3::variable_u(0.7, -0.3);
    const Jet3 v = Jet3::variable_v(0.7, -0.3);
    const Jet3 f = u * u * v + 2.0 * v * v * v; // f_u = 2uv, f_v = u^2 + 6v^2
    const Jet3 fu = partial_u(f);
    const Jet3 fv = partial_v(f);
    CHECK(fu.value() == doctest::Approx(2.0 * 0.7 * -0.3));
    CHECK(fu.du() == doctest::Approx(2.0 * -0.3));
    CHECK(fu.dv() == doctest::Approx(2.0 * 0.7));
    CHECK(fv.value() == doctest::Approx(0.7 * 0.7 + 6.0 * 0.09));
    CHECK(fv.dv() == doctest::Approx(12.0 * -0.3));
}
