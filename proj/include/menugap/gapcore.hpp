#pragma once

#include <stdexcept>
#include <string>

#include "menugap/sequences.hpp"

namespace menugap {

namespace detail {

template <class S>
void check_gap_inputs(const PointSeq<S>& x) {
    x.validate();
    if (x.leading_zero) throw std::invalid_argument("gap inputs: pass the sequence without its sentinel");
    for (std::size_t i = 0; i < x.points.size(); ++i)
        if (is_zero_vec(x.points[i]))
            throw std::invalid_argument("gap inputs: zero point at index " + std::to_string(i + 1) +
                                        " (1/||x||_1 undefined)");
}

template <class S>
GapReport<S> finalize_report(std::vector<S> terms, std::vector<S> clipped, std::vector<int> witness,
                             const PointSeq<S>& x) {
    GapReport<S> rep;
    rep.terms = std::move(terms);
    rep.clipped = std::move(clipped);
    rep.witness = std::move(witness);
    rep.normalized.resize(rep.terms.size());
    rep.cumulative.resize(rep.terms.size());
    S run = S(0);
    for (std::size_t i = 0; i < rep.terms.size(); ++i) {
        rep.normalized[i] = rep.clipped[i] / l1_norm(x.points[i]);
        run += rep.normalized[i];
        rep.cumulative[i] = run;
    }
    rep.total = run;
    return rep;
}

}  // namespace detail

/// gap_i = min_{0 <= j < i} (q_i - q_j) . x_i, summed as gap_i / ||x_i||_1.
/// Negative terms count as-is. Q carries the extra q_0, so |X| = |Q| - 1.
template <class S>
GapReport<S> menu_gap_terms(const PointSeq<S>& x, const AllocSeq<S>& q) {
    detail::check_gap_inputs(x);
    q.validate();
    if (x.k != q.k) throw std::invalid_argument("menu_gap_terms: dimension mismatch");
    if (x.points.size() + 1 != q.allocations.size())
        throw std::invalid_argument("menu_gap_terms: need |X| = |Q| - 1");

    const std::size_t n = x.points.size();
    std::vector<S> terms(n);
    std::vector<int> witness(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec<S>& xi = x.points[i];
        const Vec<S>& qi = q.allocations[i + 1];
        S qi_dot = dot(qi, xi);
        S best = qi_dot;  // j = 0: q_0 = 0
        int best_j = 0;
        for (std::size_t j = 1; j <= i; ++j) {
            S cand = qi_dot - dot(q.allocations[j], xi);
            if (cand < best) {
                best = cand;
                best_j = static_cast<int>(j);
            }
        }
        terms[i] = best;
        witness[i] = best_j;
    }
    std::vector<S> clipped = terms;
    return detail::finalize_report(std::move(terms), std::move(clipped), std::move(witness), x);
}

/// SupGap(X) = MenuGap(X, X): the sequence plays both roles, with its
/// leading zero point as q_0. Requires all points in [0,1]^k.
template <class S>
GapReport<S> sup_gap(const PointSeq<S>& x) {
    x.validate();
    if (!x.leading_zero || x.points.empty() || !is_zero_vec(x.points.front()))
        throw std::invalid_argument("sup_gap: sequence must carry the leading zero point");
    for (std::size_t i = 0; i < x.points.size(); ++i)
        for (const S& v : x.points[i])
            if (v > S(1)) throw std::invalid_argument("sup_gap: point outside [0,1]^k at index " + std::to_string(i));

    PointSeq<S> body;
    body.k = x.k;
    body.points.assign(x.points.begin() + 1, x.points.end());
    AllocSeq<S> q;
    q.k = x.k;
    q.allocations = x.points;
    return menu_gap_terms(body, q);
}

/// sgap_i = min_{0 <= j < i} x_i . (c_i x_i - c_j x_j); the objective clips
/// negatives to zero before normalizing.
template <class S>
GapReport<S> align_gap_terms(const PointSeq<S>& x, const ScalarSeq<S>& c) {
    detail::check_gap_inputs(x);
    c.validate_against(x);

    const std::size_t n = x.points.size();
    std::vector<S> terms(n);
    std::vector<int> witness(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec<S>& xi = x.points[i];
        const S& ci = c.scalars[i + 1];
        S own = ci * dot(xi, xi);
        S best = own;  // j = 0: c_0 = 0
        int best_j = 0;
        for (std::size_t j = 1; j <= i; ++j) {
            S cand = own - c.scalars[j] * dot(xi, x.points[j - 1]);
            if (cand < best) {
                best = cand;
                best_j = static_cast<int>(j);
            }
        }
        terms[i] = best;
        witness[i] = best_j;
    }
    std::vector<S> clipped(n);
    for (std::size_t i = 0; i < n; ++i) clipped[i] = terms[i] > S(0) ? terms[i] : S(0);
    return detail::finalize_report(std::move(terms), std::move(clipped), std::move(witness), x);
}

/// Embeds an aligned pair into a plain allocation sequence: q_i = c_i x_i
/// where sgap_i > 0, otherwise reuse the earlier allocation that maximizes
/// q . x_i (which pins gap_i to exactly zero). The result satisfies
/// MenuGap(X, Q) >= AlignGap(X, C).
template <class S>
AllocSeq<S> align_to_menu(const PointSeq<S>& x, const ScalarSeq<S>& c) {
    GapReport<S> sg = align_gap_terms(x, c);

    AllocSeq<S> q;
    q.k = x.k;
    q.allocations.push_back(zero_vec<S>(x.k));
    for (std::size_t i = 0; i < x.points.size(); ++i) {
        if (sg.terms[i] > S(0)) {
            q.allocations.push_back(scaled(x.points[i], c.scalars[i + 1]));
        } else {
            const Vec<S>& xi = x.points[i];
            std::size_t best = 0;
            S best_val = S(0);  // q_0 . x_i
            for (std::size_t j = 1; j < q.allocations.size(); ++j) {
                S v = dot(q.allocations[j], xi);
                if (v > best_val) {
                    best_val = v;
                    best = j;
                }
            }
            q.allocations.push_back(q.allocations[best]);
        }
    }
    q.validate();
    return q;
}

}  // namespace menugap
