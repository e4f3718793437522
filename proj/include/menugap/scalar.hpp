#pragma once

#include <cmath>
#include <cstdlib>
#include <type_traits>

#include "menugap/rational.hpp"

namespace menugap {

/// Backend glue for the two scalar types. `double` is the exploratory
/// backend (comparisons carry a tolerance); `Rational` is exact and ignores
/// tolerances entirely.
template <class S>
struct ScalarOps;

template <>
struct ScalarOps<double> {
    static constexpr bool exact = false;
    static double from_double(double v) { return v; }
    static double from_long(long num, long den = 1) { return static_cast<double>(num) / static_cast<double>(den); }
    static double to_double(double v) { return v; }
    static double abs(double v) { return std::fabs(v); }
};

template <>
struct ScalarOps<Rational> {
    static constexpr bool exact = true;
    static Rational from_double(double v) { return rat_from_double(v); }
    static Rational from_long(long num, long den = 1) { return rat_from_long(num, den); }
    static double to_double(const Rational& v) { return rat_to_double(v); }
    static Rational abs(const Rational& v) { return v < 0 ? Rational(-v) : v; }
};

template <class S>
inline S scalar_from_double(double v) {
    return ScalarOps<S>::from_double(v);
}

template <class S>
inline double scalar_to_double(const S& v) {
    return ScalarOps<S>::to_double(v);
}

/// |a - b| <= tol * max(1, |a|, |b|); exact equality on the rational backend.
template <class S>
inline bool approx_equal(const S& a, const S& b, double tol = 1e-9) {
    if constexpr (ScalarOps<S>::exact) {
        (void)tol;
        return a == b;
    } else {
        double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
        return std::fabs(a - b) <= tol * scale;
    }
}

}  // namespace menugap
