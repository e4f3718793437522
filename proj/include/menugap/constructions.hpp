#pragma once

#include <utility>
#include <vector>

#include "menugap/alpha.hpp"
#include "menugap/sequences.hpp"

namespace menugap::layers {

/// One layer of the layered arc sequence: n = ell*ceil(ln^2 ell) + 1 points
/// of unit l2 norm, evenly spaced by theta = pi/(2(n-1)) between (1,0) and
/// (0,1). Even layers run counterclockwise from (1,0), odd layers clockwise
/// from (0,1).
struct LayerSpec {
    int ell = 0;
    long n = 0;
    double theta = 0.0;
    bool counterclockwise = false;
};

LayerSpec layer_spec(int ell);

/// Working constants for the allocation sequence. z[ell] is the cumulative
/// normalized series value, delta[ell] = z[ell] - z[ell-1] = 1/(alpha ell
/// ln^2 ell). Built from the lower enclosure endpoint so that bound checks
/// against the upper endpoint keep a strict one-sided margin.
struct QLayerParams {
    Interval alpha;
    double alpha_used = 0.0;
    std::vector<double> z;      // indexed by ell, zero below ell = 2
    std::vector<double> delta;  // same indexing
};

/// The built pair (X, Q) plus the layer bookkeeping the O(N) gap evaluation
/// relies on. Only build_construction produces these; the fast evaluation
/// refuses sequences that did not come through it.
struct Construction {
    int max_layer = 0;
    std::vector<LayerSpec> specs;
    PointSeq<double> x;  // sentinel-free
    AllocSeq<double> q;  // carries q_0
    QLayerParams params;
    std::vector<std::pair<int, long>> layer_of;  // global point index -> (ell, j)
    std::vector<int> reuse_q_index;              // odd-layer points: reused Q index; else own
};

PointSeq<double> build_x_sequence(int max_layer);
Construction build_construction(int max_layer, const Interval& alpha);
AllocSeq<double> build_q_sequence(int max_layer, const Interval& alpha);

/// delta_ell * sin(theta_ell) / sin((j+1) theta_ell), evaluated with the
/// upper alpha endpoint so it is the safe (smaller) side of the bound.
/// Only even ell > 2 are in scope.
double gap_lower_formula(int ell, long j, const Interval& alpha);

/// delta_ell * ln(n_ell) / 2 with the upper alpha endpoint; even ell > 2.
double layer_gap_lower_bound(int ell, const Interval& alpha);

/// sqrt(2) * sum_i (1 - x_i . x_{i+1}) over consecutive pairs; with
/// include_terminal the x_{N+1} := 0 convention adds a final sqrt(2).
/// Requires unit l2 points (tolerance 1e-12).
double lagrel_closed_form(const PointSeq<double>& x, bool include_terminal = false);

/// Analytic upper bound on the closed-form contribution of layers >=
/// from_layer: sqrt(2) pi^2/8 * (partial sum of 1/(l ceil(ln^2 l)) plus the
/// integral tail 1/ln(M)).
double lagrel_tail_bound(int from_layer);

/// Lower-bound series sum_{even l in [4, max_layer]} 1/(2 alpha.hi l ln l).
double divergence_partial(int max_layer, const Interval& alpha);

namespace detail {
template <class S>
struct FastGapModel {
    // Q indices (0 = sentinel) of the two candidates per point, -1 if absent.
    std::vector<int> cand_prev_in_layer;
    std::vector<int> cand_prev_even_last;
};
FastGapModel<double> fast_gap_candidates(const Construction& c);
}  // namespace detail

/// O(N) evaluation of menu_gap_terms on a built construction, using the
/// two-candidate structure (previous point in the same layer, final point of
/// the previous even layer; odd layers reuse and contribute exactly zero).
/// On the exact backend the terms coincide with the O(N^2) evaluation;
/// witnesses are the minimizing candidate and may differ at exact ties.
template <class S>
GapReport<S> fast_gap_terms(const Construction& c) {
    auto model = detail::fast_gap_candidates(c);
    PointSeq<S> x = point_seq_from_double<S>(c.x);
    AllocSeq<S> q = alloc_seq_from_double<S>(c.q);

    const std::size_t n = x.points.size();
    std::vector<S> terms(n), clipped(n);
    std::vector<int> witness(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec<S>& xi = x.points[i];
        const int ell = c.layer_of[i].first;
        if (ell % 2 == 1) {
            terms[i] = S(0);
            witness[i] = c.reuse_q_index[i];
        } else {
            S own = dot(q.allocations[i + 1], xi);
            S best = S(0);  // sentinel candidate q_0
            int best_q = 0;
            for (int cand : {model.cand_prev_even_last[i], model.cand_prev_in_layer[i]}) {
                if (cand <= 0) continue;
                S v = dot(q.allocations[static_cast<std::size_t>(cand)], xi);
                if (v > best) {
                    best = v;
                    best_q = cand;
                }
            }
            terms[i] = own - best;
            witness[i] = best_q;
        }
        clipped[i] = terms[i];
    }

    GapReport<S> rep;
    rep.terms = std::move(terms);
    rep.clipped = std::move(clipped);
    rep.witness = std::move(witness);
    rep.normalized.resize(n);
    rep.cumulative.resize(n);
    S run = S(0);
    for (std::size_t i = 0; i < n; ++i) {
        rep.normalized[i] = rep.clipped[i] / l1_norm(x.points[i]);
        run += rep.normalized[i];
        rep.cumulative[i] = run;
    }
    rep.total = run;
    return rep;
}

}  // namespace menugap::layers
