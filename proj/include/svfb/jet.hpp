#pragma once

// Truncated Taylor series in one variable, used for exact derivatives of the
// analytic profiles (rho0, phi0, u0) and of manufactured solutions.

#include <array>
#include <cmath>
#include <limits>

namespace svfb {

template <int N>
struct Jet {
    // c[k] = f^(k)(x0) / k!
    std::array<double, N + 1> c{};

    static Jet constant(double v) {
        Jet j;
        j.c[0] = v;
        return j;
    }
    static Jet variable(double x0) {
        Jet j;
        j.c[0] = x0;
        if constexpr (N >= 1) j.c[1] = 1.0;
        return j;
    }

    double value() const { return c[0]; }
    double deriv(int k) const {
        double f = 1.0;
        for (int i = 2; i <= k; ++i) f *= i;
        return c[k] * f;
    }

    // d/dx; the top coefficient is unknown after differentiation.
    Jet dx() const {
        Jet r;
        for (int k = 0; k < N; ++k) r.c[k] = (k + 1) * c[k + 1];
        r.c[N] = std::numeric_limits<double>::quiet_NaN();
        return r;
    }

    Jet& operator+=(const Jet& o) {
        for (int k = 0; k <= N; ++k) c[k] += o.c[k];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        for (int k = 0; k <= N; ++k) c[k] -= o.c[k];
        return *this;
    }
    Jet& operator*=(double s) {
        for (auto& v : c) v *= s;
        return *this;
    }
};

template <int N> Jet<N> operator+(Jet<N> a, const Jet<N>& b) { return a += b; }
template <int N> Jet<N> operator-(Jet<N> a, const Jet<N>& b) { return a -= b; }
template <int N> Jet<N> operator-(Jet<N> a) { return a *= -1.0; }
template <int N> Jet<N> operator*(Jet<N> a, double s) { return a *= s; }
template <int N> Jet<N> operator*(double s, Jet<N> a) { return a *= s; }
template <int N> Jet<N> operator+(Jet<N> a, double s) { a.c[0] += s; return a; }
template <int N> Jet<N> operator+(double s, Jet<N> a) { a.c[0] += s; return a; }
template <int N> Jet<N> operator-(Jet<N> a, double s) { a.c[0] -= s; return a; }
template <int N> Jet<N> operator-(double s, Jet<N> a) { a *= -1.0; a.c[0] += s; return a; }

template <int N>
Jet<N> operator*(const Jet<N>& a, const Jet<N>& b) {
    Jet<N> r;
    for (int k = 0; k <= N; ++k) {
        double s = 0.0;
        for (int j = 0; j <= k; ++j) s += a.c[j] * b.c[k - j];
        r.c[k] = s;
    }
    return r;
}

template <int N>
Jet<N> reciprocal(const Jet<N>& g) {
    Jet<N> f;
    f.c[0] = 1.0 / g.c[0];
    for (int k = 1; k <= N; ++k) {
        double s = 0.0;
        for (int j = 1; j <= k; ++j) s += g.c[j] * f.c[k - j];
        f.c[k] = -s / g.c[0];
    }
    return f;
}

template <int N> Jet<N> operator/(const Jet<N>& a, const Jet<N>& b) { return a * reciprocal(b); }
template <int N> Jet<N> operator/(Jet<N> a, double s) { return a *= 1.0 / s; }
template <int N> Jet<N> operator/(double s, const Jet<N>& b) { return reciprocal(b) * s; }

template <int N>
Jet<N> exp(const Jet<N>& g) {
    Jet<N> f;
    f.c[0] = std::exp(g.c[0]);
    for (int k = 1; k <= N; ++k) {
        double s = 0.0;
        for (int j = 1; j <= k; ++j) s += j * g.c[j] * f.c[k - j];
        f.c[k] = s / k;
    }
    return f;
}

template <int N>
Jet<N> log(const Jet<N>& g) {
    Jet<N> f;
    f.c[0] = std::log(g.c[0]);
    for (int k = 1; k <= N; ++k) {
        double s = 0.0;
        for (int j = 1; j < k; ++j) s += j * f.c[j] * g.c[k - j];
        f.c[k] = (g.c[k] - s / k) / g.c[0];
    }
    return f;
}

namespace detail {
template <int N>
void sincos(const Jet<N>& g, Jet<N>& s, Jet<N>& co) {
    s.c[0] = std::sin(g.c[0]);
    co.c[0] = std::cos(g.c[0]);
    for (int k = 1; k <= N; ++k) {
        double a = 0.0, b = 0.0;
        for (int j = 1; j <= k; ++j) {
            a += j * g.c[j] * co.c[k - j];
            b += j * g.c[j] * s.c[k - j];
        }
        s.c[k] = a / k;
        co.c[k] = -b / k;
    }
}
}  // namespace detail

template <int N>
Jet<N> sin(const Jet<N>& g) {
    Jet<N> s, c;
    detail::sincos(g, s, c);
    return s;
}
template <int N>
Jet<N> cos(const Jet<N>& g) {
    Jet<N> s, c;
    detail::sincos(g, s, c);
    return c;
}

// g^p. For g(x0) > 0 the usual recurrence. For g(x0) = 0 (a profile endpoint)
// integer p falls back to repeated products; otherwise coefficients below the
// leading power are 0 and those above it are non-finite (NaN).
template <int N>
Jet<N> pow(const Jet<N>& g, double p) {
    Jet<N> f;
    const double pr = std::round(p);
    if (g.c[0] == 0.0) {
        if (p == pr && p >= 0.0) {
            Jet<N> r = Jet<N>::constant(1.0);
            for (int i = 0; i < static_cast<int>(pr); ++i) r = r * g;
            return r;
        }
        int m = 0;
        while (m <= N && g.c[m] == 0.0) ++m;
        const double lead = m * p;
        for (int k = 0; k <= N; ++k) {
            if (k < lead) f.c[k] = 0.0;
            else f.c[k] = std::numeric_limits<double>::quiet_NaN();
        }
        return f;
    }
    f.c[0] = std::pow(g.c[0], p);
    for (int k = 1; k <= N; ++k) {
        double s = 0.0;
        for (int j = 1; j <= k; ++j) s += (p * j - (k - j)) * g.c[j] * f.c[k - j];
        f.c[k] = s / (k * g.c[0]);
    }
    return f;
}

}  // namespace svfb
