#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "menugap/linalg.hpp"

namespace menugap {

/// Ordered sequence of nonnegative valuation-direction vectors. When
/// `leading_zero` is set, points[0] is the all-zero sentinel required by
/// sup_gap and the remaining entries are the sequence proper.
template <class S>
struct PointSeq {
    int k = 0;
    std::vector<Vec<S>> points;
    bool leading_zero = false;

    std::size_t size() const { return points.size(); }

    void validate() const {
        if (k <= 0) throw std::invalid_argument("PointSeq: dimension must be positive");
        for (std::size_t i = 0; i < points.size(); ++i) {
            const auto& p = points[i];
            if (static_cast<int>(p.size()) != k)
                throw std::invalid_argument("PointSeq: point " + std::to_string(i) + " has wrong dimension");
            for (const S& v : p) {
                if constexpr (!ScalarOps<S>::exact) {
                    if (!std::isfinite(v)) throw std::invalid_argument("PointSeq: non-finite coordinate");
                }
                if (v < S(0)) throw std::invalid_argument("PointSeq: negative coordinate");
            }
        }
        if (leading_zero) {
            if (points.empty() || !is_zero_vec(points.front()))
                throw std::invalid_argument("PointSeq: leading_zero set but points[0] is not the zero vector");
        }
    }
};

/// Allocation vectors in [0,1]^k, first element exactly zero.
template <class S>
struct AllocSeq {
    int k = 0;
    std::vector<Vec<S>> allocations;

    std::size_t size() const { return allocations.size(); }

    void validate() const {
        if (k <= 0) throw std::invalid_argument("AllocSeq: dimension must be positive");
        if (allocations.empty()) throw std::invalid_argument("AllocSeq: must contain q_0");
        if (!is_zero_vec(allocations.front()))
            throw std::invalid_argument("AllocSeq: q_0 must be the zero vector");
        for (std::size_t i = 0; i < allocations.size(); ++i) {
            const auto& q = allocations[i];
            if (static_cast<int>(q.size()) != k)
                throw std::invalid_argument("AllocSeq: allocation " + std::to_string(i) + " has wrong dimension");
            for (const S& v : q) {
                if (v < S(0) || v > S(1))
                    throw std::invalid_argument("AllocSeq: coordinate outside [0,1] at index " + std::to_string(i));
            }
        }
    }
};

/// Alignment scalars c_i in [0, 1/||x_i||_inf], c_0 = 0, paired with a
/// PointSeq of the same length.
template <class S>
struct ScalarSeq {
    std::vector<S> scalars;

    std::size_t size() const { return scalars.size(); }

    void validate_against(const PointSeq<S>& x) const {
        if (x.leading_zero) throw std::invalid_argument("ScalarSeq: pair with a sentinel-free PointSeq");
        if (scalars.empty() || !(scalars.front() == S(0)))
            throw std::invalid_argument("ScalarSeq: c_0 must be 0");
        if (scalars.size() != x.points.size() + 1)
            throw std::invalid_argument("ScalarSeq: length must be |X|+1");
        for (std::size_t i = 1; i < scalars.size(); ++i) {
            const S& c = scalars[i];
            if (c < S(0)) throw std::invalid_argument("ScalarSeq: negative scalar");
            // c_i * ||x_i||_inf <= 1, kept division-free so it is exact on rationals.
            if (c * linf_norm(x.points[i - 1]) > S(1))
                throw std::invalid_argument("ScalarSeq: scalar exceeds 1/||x||_inf at index " + std::to_string(i));
        }
    }
};

/// Per-index gap terms plus the derived columns every report shares.
/// cumulative is the prefix sum of normalized clipped terms; witness[i] is
/// the smallest j attaining the inner minimum.
template <class S>
struct GapReport {
    std::vector<S> terms;
    std::vector<S> clipped;
    std::vector<S> normalized;
    std::vector<S> cumulative;
    std::vector<int> witness;
    S total = S(0);
};

template <class S>
PointSeq<S> point_seq_from_double(const PointSeq<double>& x) {
    PointSeq<S> out;
    out.k = x.k;
    out.leading_zero = x.leading_zero;
    out.points.reserve(x.points.size());
    for (const auto& p : x.points) out.points.push_back(vec_from_double<S>(p));
    return out;
}

template <class S>
AllocSeq<S> alloc_seq_from_double(const AllocSeq<double>& q) {
    AllocSeq<S> out;
    out.k = q.k;
    out.allocations.reserve(q.allocations.size());
    for (const auto& a : q.allocations) out.allocations.push_back(vec_from_double<S>(a));
    return out;
}

template <class S>
ScalarSeq<S> scalar_seq_from_double(const ScalarSeq<double>& c) {
    ScalarSeq<S> out;
    out.scalars.reserve(c.scalars.size());
    for (double v : c.scalars) out.scalars.push_back(scalar_from_double<S>(v));
    return out;
}

}  // namespace menugap
