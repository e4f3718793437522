#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "menugap/scalar.hpp"

namespace menugap {

template <class S>
using Vec = std::vector<S>;

template <class S>
inline S dot(const Vec<S>& a, const Vec<S>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    S acc = S(0);
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

template <class S>
inline S l1_norm(const Vec<S>& a) {
    S acc = S(0);
    for (const S& v : a) acc += ScalarOps<S>::abs(v);
    return acc;
}

template <class S>
inline S linf_norm(const Vec<S>& a) {
    S best = S(0);
    for (const S& v : a) {
        S m = ScalarOps<S>::abs(v);
        if (m > best) best = m;
    }
    return best;
}

template <class S>
inline S l2_norm_sq(const Vec<S>& a) {
    S acc = S(0);
    for (const S& v : a) acc += v * v;
    return acc;
}

template <class S>
inline bool is_zero_vec(const Vec<S>& a) {
    for (const S& v : a)
        if (!(v == S(0))) return false;
    return true;
}

template <class S>
inline Vec<S> scaled(const Vec<S>& a, const S& s) {
    Vec<S> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * s;
    return out;
}

template <class S>
inline Vec<S> zero_vec(int k) {
    return Vec<S>(static_cast<std::size_t>(k), S(0));
}

/// True when q = c*v for some c >= 0. Tested via 2x2 minors so no square
/// roots are needed; both vectors are componentwise nonnegative here, which
/// rules out negative proportionality. The zero vector is parallel to
/// anything under this test (c = 0).
template <class S>
inline bool is_parallel(const Vec<S>& v, const Vec<S>& q, double tol = 1e-9) {
    if (v.size() != q.size()) throw std::invalid_argument("is_parallel: dimension mismatch");
    if constexpr (ScalarOps<S>::exact) {
        (void)tol;
        for (std::size_t a = 0; a + 1 < v.size(); ++a)
            for (std::size_t b = a + 1; b < v.size(); ++b)
                if (!(v[a] * q[b] - v[b] * q[a] == S(0))) return false;
        return true;
    } else {
        double scale = scalar_to_double<S>(linf_norm(v)) * scalar_to_double<S>(linf_norm(q));
        for (std::size_t a = 0; a + 1 < v.size(); ++a)
            for (std::size_t b = a + 1; b < v.size(); ++b) {
                double minor = scalar_to_double<S>(v[a] * q[b] - v[b] * q[a]);
                if (std::fabs(minor) > tol * std::max(1e-300, scale)) return false;
            }
        return true;
    }
}

template <class S>
inline Vec<S> vec_from_double(const Vec<double>& a) {
    Vec<S> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = scalar_from_double<S>(a[i]);
    return out;
}

template <class S>
inline Vec<double> vec_to_double(const Vec<S>& a) {
    Vec<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = scalar_to_double<S>(a[i]);
    return out;
}

}  // namespace menugap
