#pragma once

#include <array>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <type_traits>

#include "finite_gauss/rational.hpp"

namespace fg {

// Point of the projective line: a finite value or the single point at infinity.
template <class T>
struct Projective {
    T value{};
    bool infinite = false;

    Projective() = default;
    Projective(T v) : value(std::move(v)) {}  // NOLINT: implicit by design
    static Projective inf() {
        Projective p;
        p.infinite = true;
        return p;
    }
};

template <class T>
bool operator==(const Projective<T>& p, const Projective<T>& q) {
    if (p.infinite || q.infinite) return p.infinite == q.infinite;
    return p.value == q.value;
}

// t -> (a t + b) / (c t + d), det != 0.
// Works for floating scalars and for BigRational (exact mode).
template <class T>
struct Moebius {
    T a{1}, b{0}, c{0}, d{1};

    Moebius() = default;
    Moebius(T a_, T b_, T c_, T d_) : a(a_), b(b_), c(c_), d(d_) {
        if (det() == T(0)) throw std::invalid_argument("Moebius: singular matrix");
    }

    static Moebius identity() { return Moebius(); }

    T det() const { return a * d - b * c; }

    bool is_identity() const { return b == T(0) && c == T(0) && a == d; }

    Projective<T> apply(const Projective<T>& t) const {
        if (t.infinite) {
            if (c == T(0)) return Projective<T>::inf();
            return Projective<T>(a / c);
        }
        T den = c * t.value + d;
        if (den == T(0)) return Projective<T>::inf();
        return Projective<T>((a * t.value + b) / den);
    }

    T operator()(const T& t) const {
        return (a * t + b) / (c * t + d);
    }

    Moebius inverse() const { return Moebius(d, -b, -c, a); }

    // (ad - bc) / (c t + d)^2
    T derivative(const T& t) const {
        T den = c * t + d;
        if (den == T(0)) throw std::domain_error("Moebius::derivative: pole");
        return det() / (den * den);
    }
};

template <class T>
Moebius<T> operator*(const Moebius<T>& m, const Moebius<T>& n) {
    return Moebius<T>(m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
                      m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d);
}

// Frobenius-norm rescaling; keeps long products of float matrices away from
// overflow/underflow without changing the map.
template <class T>
    requires std::is_floating_point_v<T>
Moebius<T> normalized(const Moebius<T>& m) {
    using std::sqrt;
    T s = sqrt(m.a * m.a + m.b * m.b + m.c * m.c + m.d * m.d);
    if (!(s > T(0))) throw std::invalid_argument("normalized: degenerate matrix");
    return Moebius<T>(m.a / s, m.b / s, m.c / s, m.d / s);
}

// Integer-matrix canonical form of an exact map: entries coprime integers,
// leading nonzero entry positive.
inline std::array<BigInt, 4> integer_matrix(const Moebius<BigRational>& m) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    using boost::multiprecision::gcd;
    using boost::multiprecision::lcm;
    std::array<BigRational, 4> e{m.a, m.b, m.c, m.d};
    BigInt l = 1;
    for (const auto& q : e) l = lcm(l, denominator(q));
    std::array<BigInt, 4> z{};
    for (int i = 0; i < 4; ++i) z[i] = numerator(BigRational(e[i] * l));
    BigInt g = 0;
    for (const auto& v : z) g = gcd(g, v);
    if (g != 0)
        for (auto& v : z) v /= g;
    for (const auto& v : z) {
        if (v == 0) continue;
        if (v < 0)
            for (auto& w : z) w = -w;
        break;
    }
    return z;
}

inline Moebius<BigRational> normalized(const Moebius<BigRational>& m) {
    auto z = integer_matrix(m);
    return Moebius<BigRational>(BigRational(z[0]), BigRational(z[1]),
                                BigRational(z[2]), BigRational(z[3]));
}

// Coefficients (A, B, C) of the fixed-point equation A t^2 + B t + C = 0,
// i.e. (c, d - a, -b).
template <class T>
std::array<T, 3> fixed_point_quadratic(const Moebius<T>& m) {
    return {m.c, m.d - m.a, -m.b};
}

template <class T>
struct FixedPoints {
    std::array<Projective<T>, 2> points{};
    int count = 0;
    T discriminant{};
    std::array<T, 3> quadratic{};  // A t^2 + B t + C = 0
};

// Real fixed points of a non-identity float Moebius map. Elliptic maps have
// none; parabolic maps one; hyperbolic two. c == 0 yields the finite root
// (if any) plus infinity.
template <class T>
    requires std::is_floating_point_v<T>
FixedPoints<T> fixed_points(const Moebius<T>& m) {
    if (m.is_identity()) throw std::invalid_argument("fixed_points: identity map");
    FixedPoints<T> r;
    r.quadratic = fixed_point_quadratic(m);
    const T A = r.quadratic[0], B = r.quadratic[1], C = r.quadratic[2];
    if (A == T(0)) {
        r.points[r.count++] = Projective<T>::inf();
        if (B != T(0)) r.points[r.count++] = Projective<T>(-C / B);
        r.discriminant = B * B;
        return r;
    }
    T disc = B * B - T(4) * A * C;
    r.discriminant = disc;
    if (disc < T(0)) return r;
    if (disc == T(0)) {
        r.points[r.count++] = Projective<T>(-B / (T(2) * A));
        return r;
    }
    using std::sqrt;
    T s = sqrt(disc);
    T q = -(B + (B < T(0) ? -s : s)) / T(2);
    if (q == T(0)) {  // B == 0 and C == 0
        r.points[r.count++] = Projective<T>(T(0));
        r.points[r.count++] = Projective<T>(-B / A);
        return r;
    }
    r.points[r.count++] = Projective<T>(q / A);
    r.points[r.count++] = Projective<T>(C / q);
    return r;
}

template <class T>
std::ostream& operator<<(std::ostream& os, const Moebius<T>& m) {
    return os << "[" << m.a << ", " << m.b << "; " << m.c << ", " << m.d << "]";
}

}  // namespace fg
