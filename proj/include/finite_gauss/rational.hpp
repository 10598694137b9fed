#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>

namespace fg {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline BigRational make_rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("make_rational: zero denominator");
    return BigRational(BigInt(num), BigInt(den));
}

inline double to_double(const BigRational& q) { return q.convert_to<double>(); }

inline double to_double(double x) { return x; }
inline double to_double(long double x) { return static_cast<double>(x); }

// integer perfect-square test; root returned through *root when requested
inline bool is_perfect_square(const BigInt& v, BigInt* root = nullptr) {
    if (v < 0) return false;
    BigInt s = boost::multiprecision::sqrt(v);
    if (s * s != v) return false;
    if (root) *root = s;
    return true;
}

}  // namespace fg
