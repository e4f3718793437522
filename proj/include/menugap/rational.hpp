#pragma once

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>

namespace menugap {

/// Exact rational scalar. Every finite double converts losslessly, so the
/// rational backend can certify computations that started from float data.
using Rational = mpq_class;

inline Rational rat_from_double(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("rat_from_double: non-finite value");
    Rational r(v);
    r.canonicalize();
    return r;
}

inline double rat_to_double(const Rational& r) { return r.get_d(); }

inline Rational rat_from_long(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rat_from_long: zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "num/den" or a plain integer/decimal string.
inline Rational rat_parse(const std::string& s) {
    if (s.find('/') != std::string::npos) {
        Rational r;
        if (r.set_str(s, 10) != 0) throw std::invalid_argument("rat_parse: bad rational '" + s + "'");
        r.canonicalize();
        if (r.get_den() <= 0) throw std::invalid_argument("rat_parse: nonpositive denominator in '" + s + "'");
        return r;
    }
    // Decimal form: sign, digits, optional fraction.
    std::size_t dot = s.find('.');
    if (dot == std::string::npos) {
        Rational r;
        if (r.set_str(s, 10) != 0) throw std::invalid_argument("rat_parse: bad integer '" + s + "'");
        return r;
    }
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac_len = s.size() - dot - 1;
    Rational num;
    if (num.set_str(digits, 10) != 0) throw std::invalid_argument("rat_parse: bad decimal '" + s + "'");
    Rational den(1);
    for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
    Rational r = num / den;
    r.canonicalize();
    return r;
}

inline std::string rat_to_string(const Rational& r) { return r.get_str(); }

/// Integer power with nonnegative exponent.
inline Rational rat_pow(const Rational& base, unsigned long e) {
    Rational acc(1), b = base;
    while (e) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

/// Largest integer i with 2^i <= value; requires value > 0.
inline long floor_log2(const Rational& value) {
    if (value <= 0) throw std::invalid_argument("floor_log2: value must be positive");
    mpz_class num = value.get_num(), den = value.get_den();
    long i = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
             static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
    // sizeinbase gives the estimate within one; settle by exact comparison.
    auto pow2 = [](long p) {
        Rational r(1);
        if (p >= 0) {
            mpz_class n(1);
            mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), static_cast<mp_bitcnt_t>(p));
            r = Rational(n);
        } else {
            mpz_class d(1);
            mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), static_cast<mp_bitcnt_t>(-p));
            r = Rational(1) / Rational(d);
        }
        return r;
    };
    while (pow2(i) > value) --i;
    while (pow2(i + 1) <= value) ++i;
    return i;
}

inline long floor_log2(double value) {
    if (!(value > 0)) throw std::invalid_argument("floor_log2: value must be positive");
    long i = static_cast<long>(std::floor(std::log2(value)));
    while (std::ldexp(1.0, static_cast<int>(i)) > value) --i;
    while (std::ldexp(1.0, static_cast<int>(i + 1)) <= value) ++i;
    return i;
}

}  // namespace menugap
