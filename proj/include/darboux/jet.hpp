#pragma once

#include <array>
#include <cmath>
#include <ostream>

#include "darboux/errors.hpp"

namespace darboux {

// Truncated bivariate Taylor expansion of total degree <= 3 at a fixed base
// point (u0, v0).  Coefficient c(i,j) stores d^{i+j}f / du^i dv^j divided by
// i!*j!, so the jet *is* the Taylor polynomial.  All arithmetic closes within
// degree 3; higher-order terms are dropped, never stored.
class Jet3 {
public:
    static constexpr int coeff_count = 10;

    Jet3() = default;

    static Jet3 constant(double value, double u0, double v0) {
        Jet3 j(u0, v0);
        j.c_[0] = value;
        return j;
    }

    static Jet3 variable_u(double u0, double v0) {
        Jet3 j(u0, v0);
        j.c_[0] = u0;
        j.c_[index(1, 0)] = 1.0;
        return j;
    }

    static Jet3 variable_v(double u0, double v0) {
        Jet3 j(u0, v0);
        j.c_[0] = v0;
        j.c_[index(0, 1)] = 1.0;
        return j;
    }

    double base_u() const { return u0_; }
    double base_v() const { return v0_; }

    // Graded-lexicographic layout: (0,0) | (1,0) (0,1) | (2,0) (1,1) (0,2) |
    // (3,0) (2,1) (1,2) (0,3).
    static constexpr int index(int i, int j) {
        constexpr int block[4] = {0, 1, 3, 6};
        return block[i + j] + j;
    }

    double coeff(int i, int j) const { return c_[index(i, j)]; }
    double coeff_at(int k) const { return c_[k]; }

    // Derivatives (Taylor coefficients rescaled by factorials).
    double value() const { return c_[0]; }
    double du() const { return c_[1]; }
    double dv() const { return c_[2]; }
    double duu() const { return 2.0 * c_[3]; }
    double duv() const { return c_[4]; }
    double dvv() const { return 2.0 * c_[5]; }

    friend Jet3 operator+(const Jet3& a) { return a; }

    friend Jet3 operator-(const Jet3& a) {
        Jet3 r(a.u0_, a.v0_);
        for (int k = 0; k < coeff_count; ++k) r.c_[k] = -a.c_[k];
        return r;
    }

    friend Jet3 operator+(const Jet3& a, const Jet3& b) {
        check_base(a, b);
        Jet3 r(a.u0_, a.v0_);
        for (int k = 0; k < coeff_count; ++k) r.c_[k] = a.c_[k] + b.c_[k];
        return r;
    }

    friend Jet3 operator-(const Jet3& a, const Jet3& b) {
        check_base(a, b);
        Jet3 r(a.u0_, a.v0_);
        for (int k = 0; k < coeff_count; ++k) r.c_[k] = a.c_[k] - b.c_[k];
        return r;
    }

    friend Jet3 operator*(const Jet3& a, const Jet3& b) {
        check_base(a, b);
        Jet3 r(a.u0_, a.v0_);
        for (int p = 0; p < coeff_count; ++p) {
            if (a.c_[p] == 0.0) continue;
            for (int q = 0; q < coeff_count; ++q) {
                const int i = i_of[p] + i_of[q];
                const int j = j_of[p] + j_of[q];
                if (i + j <= 3) r.c_[index(i, j)] += a.c_[p] * b.c_[q];
            }
        }
        return r;
    }

    friend Jet3 operator/(const Jet3& a, const Jet3& b) {
        check_base(a, b);
        return a * reciprocal(b);
    }

    friend Jet3 operator+(const Jet3& a, double s) {
        Jet3 r = a;
        r.c_[0] += s;
        return r;
    }
    friend Jet3 operator+(double s, const Jet3& a) { return a + s; }
    friend Jet3 operator-(const Jet3& a, double s) { return a + (-s); }
    friend Jet3 operator-(double s, const Jet3& a) { return (-a) + s; }

    friend Jet3 operator*(const Jet3& a, double s) {
        Jet3 r(a.u0_, a.v0_);
        for (int k = 0; k < coeff_count; ++k) r.c_[k] = a.c_[k] * s;
        return r;
    }
    friend Jet3 operator*(double s, const Jet3& a) { return a * s; }
    friend Jet3 operator/(const Jet3& a, double s) { return a * (1.0 / s); }
    friend Jet3 operator/(double s, const Jet3& a) { return reciprocal(a) * s; }

    // Partial derivative as a jet.  The cubic coefficients of the result are
    // unknowable from a degree-3 jet and stay zero, so the result is exact
    // only through total degree 2.
    friend Jet3 partial_u(const Jet3& a) {
        Jet3 r(a.u0_, a.v0_);
        for (int p = 0; p < coeff_count; ++p) {
            const int i = i_of[p], j = j_of[p];
            if (i + j <= 2) r.c_[p] = (i + 1) * a.c_[index(i + 1, j)];
        }
        return r;
    }

    friend Jet3 partial_v(const Jet3& a) {
        Jet3 r(a.u0_, a.v0_);
        for (int p = 0; p < coeff_count; ++p) {
            const int i = i_of[p], j = j_of[p];
            if (i + j <= 2) r.c_[p] = (j + 1) * a.c_[index(i, j + 1)];
        }
        return r;
    }

    // f(jet) for univariate f: compose the cubic Taylor polynomial of f at
    // the jet's constant term with the zero-constant part of the jet.
    // fk = f^(k)(c00) / k!.
    static Jet3 compose(const Jet3& a, double f0, double f1, double f2, double f3) {
        Jet3 w = a;
        w.c_[0] = 0.0;
        Jet3 r = w * f3;
        r.c_[0] += f2;
        r = r * w;
        r.c_[0] += f1;
        r = r * w;
        r.c_[0] += f0;
        return r;
    }

    friend Jet3 sin(const Jet3& a) {
        const double s = std::sin(a.c_[0]), c = std::cos(a.c_[0]);
        return compose(a, s, c, -s / 2.0, -c / 6.0);
    }

    friend Jet3 cos(const Jet3& a) {
        const double s = std::sin(a.c_[0]), c = std::cos(a.c_[0]);
        return compose(a, c, -s, -c / 2.0, s / 6.0);
    }

    friend Jet3 sinh(const Jet3& a) {
        const double s = std::sinh(a.c_[0]), c = std::cosh(a.c_[0]);
        return compose(a, s, c, s / 2.0, c / 6.0);
    }

    friend Jet3 cosh(const Jet3& a) {
        const double s = std::sinh(a.c_[0]), c = std::cosh(a.c_[0]);
        return compose(a, c, s, c / 2.0, s / 6.0);
    }

    friend Jet3 exp(const Jet3& a) {
        const double e = std::exp(a.c_[0]);
        return compose(a, e, e, e / 2.0, e / 6.0);
    }

    friend Jet3 sqrt(const Jet3& a) {
        const double c = a.c_[0];
        if (!(c > 0.0)) throw PreconditionError("sqrt of jet requires positive constant term");
        const double s = std::sqrt(c);
        return compose(a, s, 0.5 / s, -1.0 / (8.0 * s * c), 1.0 / (16.0 * s * c * c));
    }

    friend Jet3 log(const Jet3& a) {
        const double c = a.c_[0];
        if (!(c > 0.0)) throw PreconditionError("log of jet requires positive constant term");
        return compose(a, std::log(c), 1.0 / c, -1.0 / (2.0 * c * c), 1.0 / (3.0 * c * c * c));
    }

    friend Jet3 atan(const Jet3& a) {
        const double c = a.c_[0];
        const double w = 1.0 + c * c;
        return compose(a, std::atan(c), 1.0 / w, -c / (w * w),
                       (3.0 * c * c - 1.0) / (3.0 * w * w * w));
    }

    // Real exponent; needs a positive base.
    friend Jet3 pow(const Jet3& a, double r) {
        const double c = a.c_[0];
        if (!(c > 0.0))
            throw PreconditionError("pow with real exponent requires positive constant term");
        const double f0 = std::pow(c, r);
        const double f1 = r * std::pow(c, r - 1.0);
        const double f2 = r * (r - 1.0) * std::pow(c, r - 2.0) / 2.0;
        const double f3 = r * (r - 1.0) * (r - 2.0) * std::pow(c, r - 3.0) / 6.0;
        return compose(a, f0, f1, f2, f3);
    }

    // Integer exponent via repeated products; valid for any base value
    // (negative exponents need a nonzero constant term).
    friend Jet3 pow_int(const Jet3& a, long n) {
        if (n < 0) return reciprocal(pow_int(a, -n));
        Jet3 r = Jet3::constant(1.0, a.u0_, a.v0_);
        Jet3 b = a;
        unsigned long e = static_cast<unsigned long>(n);
        while (e > 0) {
            if (e & 1UL) r = r * b;
            b = b * b;
            e >>= 1UL;
        }
        return r;
    }

    friend Jet3 reciprocal(const Jet3& a) {
        const double c = a.c_[0];
        if (c == 0.0) throw PreconditionError("division by jet with zero constant term");
        const double ci = 1.0 / c;
        return compose(a, ci, -ci * ci, ci * ci * ci, -ci * ci * ci * ci);
    }

    friend bool same_base(const Jet3& a, const Jet3& b) {
        return a.u0_ == b.u0_ && a.v0_ == b.v0_;
    }

    friend std::ostream& operator<<(std::ostream& out, const Jet3& a) {
        out << "jet@(" << a.u0_ << "," << a.v0_ << ")[";
        for (int k = 0; k < coeff_count; ++k) out << (k ? " " : "") << a.c_[k];
        return out << "]";
    }

private:
    Jet3(double u0, double v0) : u0_(u0), v0_(v0) {}

    static void check_base(const Jet3& a, const Jet3& b) {
        if (!same_base(a, b)) throw PreconditionError("jet base point mismatch");
    }

    static constexpr int i_of[coeff_count] = {0, 1, 0, 2, 1, 0, 3, 2, 1, 0};
    static constexpr int j_of[coeff_count] = {0, 0, 1, 0, 1, 2, 0, 1, 2, 3};

    double u0_ = 0.0;
    double v0_ = 0.0;
    std::array<double, coeff_count> c_{};
};

} // namespace darboux
