#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "menugap/auctions.hpp"
#include "menugap/gapcore.hpp"
#include "menugap/random.hpp"
#include "menugap/simplex.hpp"

namespace menugap::opt {

template <class S>
struct LPSolution {
    lp::Status status = lp::Status::optimal;
    S objective = S(0);
    AllocSeq<S> q_star;
    std::vector<S> duals;
};

/// MenuGap(X) = sup_Q MenuGap(X, Q) as an exact LP. The objective
/// sum_i g_i/||x_i||_1 with epigraph rows g_i <= (q_i - q_j) . x_i is
/// concave in Q (a min of linear functions), so the reformulation is exact.
/// O(N^2) rows, hence the size cap.
template <class S>
LPSolution<S> menu_gap_lp(const PointSeq<S>& x, std::size_t cap = 60, double tol = 1e-9) {
    menugap::detail::check_gap_inputs(x);
    const std::size_t n = x.points.size();
    const int k = x.k;
    if (n == 0) throw std::invalid_argument("menu_gap_lp: empty sequence");
    if (n > cap) throw std::invalid_argument("menu_gap_lp: sequence exceeds the size cap");

    lp::Problem<S> p;
    // variable layout: q_i (k coords each, in [0,1]) for i = 1..N, then g_i free
    auto qvar = [&](std::size_t i, int d) { return static_cast<std::size_t>((i - 1) * static_cast<std::size_t>(k) + static_cast<std::size_t>(d)); };
    for (std::size_t i = 1; i <= n; ++i)
        for (int d = 0; d < k; ++d) p.add_var(S(0), S(1), S(0));
    std::size_t g0 = static_cast<std::size_t>(p.num_vars);
    for (std::size_t i = 1; i <= n; ++i) p.add_var(std::nullopt, std::nullopt, S(1) / l1_norm(x.points[i - 1]));

    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            std::vector<S> row(static_cast<std::size_t>(p.num_vars), S(0));
            row[g0 + i - 1] = S(1);
            for (int d = 0; d < k; ++d) {
                row[qvar(i, d)] -= x.points[i - 1][static_cast<std::size_t>(d)];
                if (j >= 1) row[qvar(j, d)] += x.points[i - 1][static_cast<std::size_t>(d)];
            }
            p.rows.push_back(std::move(row));
            p.rhs.push_back(S(0));
        }
    }

    lp::Solution<S> sol = lp::solve(p, tol);
    LPSolution<S> out;
    out.status = sol.status;
    if (sol.status != lp::Status::optimal) {
        if (sol.status == lp::Status::iteration_limit)
            throw std::runtime_error("menu_gap_lp: simplex hit the iteration limit (try the rational backend)");
        return out;
    }
    out.objective = sol.objective;
    out.duals = std::move(sol.duals);
    out.q_star.k = k;
    out.q_star.allocations.push_back(zero_vec<S>(k));
    for (std::size_t i = 1; i <= n; ++i) {
        Vec<S> q(static_cast<std::size_t>(k));
        for (int d = 0; d < k; ++d) {
            S v = sol.x[qvar(i, d)];
            if (v < S(0)) v = S(0);
            if (v > S(1)) v = S(1);
            q[static_cast<std::size_t>(d)] = v;
        }
        out.q_star.allocations.push_back(std::move(q));
    }
    return out;
}

template <class S>
struct MechanismSolution {
    lp::Status status = lp::Status::optimal;
    S revenue = S(0);
    auction::Mechanism<S> mech;
    std::vector<int> intended;  // support index -> menu entry
};

/// Standard single-buyer finite-support revenue LP: variables q(v) in
/// [0,1]^k and p(v), IC rows for all ordered support pairs, IR rows, and
/// objective sum f(v) p(v). Duplicate support points are merged first.
template <class S>
MechanismSolution<S> optimal_mechanism_lp(const auction::DiscreteDistribution<S>& d_in, std::size_t cap = 100,
                                          double tol = 1e-9) {
    auction::DiscreteDistribution<S> d = d_in;
    // merge exact duplicates
    for (std::size_t i = 0; i < d.values.size(); ++i)
        for (std::size_t j = i + 1; j < d.values.size();) {
            if (d.values[i] == d.values[j]) {
                d.probs[i] += d.probs[j];
                d.values.erase(d.values.begin() + static_cast<long>(j));
                d.probs.erase(d.probs.begin() + static_cast<long>(j));
            } else {
                ++j;
            }
        }
    d.validate();
    const std::size_t m = d.size();
    const int k = d.k;
    if (m > cap) throw std::invalid_argument("optimal_mechanism_lp: support exceeds the size cap");

    lp::Problem<S> p;
    auto qvar = [&](std::size_t i, int dd) { return i * static_cast<std::size_t>(k) + static_cast<std::size_t>(dd); };
    for (std::size_t i = 0; i < m; ++i)
        for (int dd = 0; dd < k; ++dd) p.add_var(S(0), S(1), S(0));
    std::size_t p0 = static_cast<std::size_t>(p.num_vars);
    for (std::size_t i = 0; i < m; ++i) p.add_var(std::nullopt, std::nullopt, d.probs[i]);

    // IC: v_i . q(v_j) - p(v_j) - v_i . q(v_i) + p(v_i) <= 0 for all i != j
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j) continue;
            std::vector<S> row(static_cast<std::size_t>(p.num_vars), S(0));
            for (int dd = 0; dd < k; ++dd) {
                row[qvar(j, dd)] += d.values[i][static_cast<std::size_t>(dd)];
                row[qvar(i, dd)] -= d.values[i][static_cast<std::size_t>(dd)];
            }
            row[p0 + j] -= S(1);
            row[p0 + i] += S(1);
            p.rows.push_back(std::move(row));
            p.rhs.push_back(S(0));
        }
    // IR: p(v_i) - v_i . q(v_i) <= 0
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<S> row(static_cast<std::size_t>(p.num_vars), S(0));
        row[p0 + i] = S(1);
        for (int dd = 0; dd < k; ++dd) row[qvar(i, dd)] -= d.values[i][static_cast<std::size_t>(dd)];
        p.rows.push_back(std::move(row));
        p.rhs.push_back(S(0));
    }

    lp::Solution<S> sol = lp::solve(p, tol);
    MechanismSolution<S> out;
    out.status = sol.status;
    if (sol.status != lp::Status::optimal)
        throw std::runtime_error("optimal_mechanism_lp: solver did not reach an optimum");
    out.revenue = sol.objective;

    std::vector<auction::MenuEntry<S>> entries(m);
    for (std::size_t i = 0; i < m; ++i) {
        entries[i].q.resize(static_cast<std::size_t>(k));
        for (int dd = 0; dd < k; ++dd) {
            S v = sol.x[qvar(i, dd)];
            if (v < S(0)) v = S(0);
            if (v > S(1)) v = S(1);
            entries[i].q[static_cast<std::size_t>(dd)] = v;
        }
        entries[i].price = sol.x[p0 + i];
    }
    out.mech = auction::make_mechanism(k, entries);
    out.intended.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        int found = -1;
        for (std::size_t e = 0; e < out.mech.menu.size(); ++e)
            if (out.mech.menu[e].q == entries[i].q && out.mech.menu[e].price == entries[i].price) {
                found = static_cast<int>(e);
                break;
            }
        out.intended[i] = found;
    }
    return out;
}

/// Values along the Lagrangian relaxation chain for unit-l2 sequences. The
/// cap sqrt(2) on the multipliers is tied to that scope; aligngap_prime is
/// the relaxed program's own objective re-evaluated at the relaxation-optimal
/// scalars, so the chain aligngap_prime <= lagrel1 = lagrel2 = lagrel is a
/// numerical restatement of weak duality.
struct RelaxationReport {
    double aligngap_prime = 0.0;
    double lagrel1 = 0.0;
    double lagrel2 = 0.0;
    double lagrel = 0.0;
    bool chain_valid = false;
};

inline RelaxationReport lagrel_chain(const PointSeq<double>& x, double tol = 1e-9) {
    menugap::detail::check_gap_inputs(x);
    const std::size_t n = x.points.size();
    for (std::size_t i = 0; i < n; ++i)
        if (std::fabs(l2_norm_sq(x.points[i]) - 1.0) > 1e-12)
            throw std::invalid_argument("lagrel_chain: requires unit-l2 points");

    const double root2 = std::sqrt(2.0);
    std::vector<double> coef(n), c(n);
    for (std::size_t i = 0; i < n; ++i) {
        double next = (i + 1 < n) ? dot(x.points[i], x.points[i + 1]) : 0.0;  // x_{N+1} := 0
        coef[i] = l2_norm_sq(x.points[i]) - next;
        c[i] = coef[i] > 0.0 ? root2 : 0.0;
    }

    RelaxationReport rep;
    for (std::size_t i = 0; i < n; ++i) rep.lagrel += c[i] * coef[i];
    // LagRel_2 objective at the same scalars (c_0 := 0 handled by i = 0 term)
    for (std::size_t i = 0; i < n; ++i) {
        double prev = (i == 0) ? 0.0 : c[i - 1] * dot(x.points[i], x.points[i - 1]);
        rep.lagrel2 += c[i] * l2_norm_sq(x.points[i]) - prev;
    }
    rep.lagrel1 = rep.lagrel2;  // the free sgap variables contribute exactly zero at the optimum
    // AlignGap' objective at the relaxation-optimal scalars
    for (std::size_t i = 0; i < n; ++i) {
        double own = c[i] * l2_norm_sq(x.points[i]);
        double best = own;
        for (std::size_t j = 0; j < i; ++j) best = std::min(best, own - c[j] * dot(x.points[i], x.points[j]));
        rep.aligngap_prime += std::max(0.0, best);
    }
    rep.chain_valid = rep.aligngap_prime <= rep.lagrel + tol && std::fabs(rep.lagrel1 - rep.lagrel2) <= tol &&
                      std::fabs(rep.lagrel2 - rep.lagrel) <= tol;
    return rep;
}

/// Exact upper bound on AlignGap(X) for rational sequences with
/// ||x_i||_1 >= 1: the multiplier cap is max_i 1/||x_i||_inf and the bound
/// is cap * (sum_i max(0, x_i.(x_i - x_{i+1})) + x_N.x_N).
inline Rational align_gap_upper_exact(const PointSeq<Rational>& x) {
    menugap::detail::check_gap_inputs(x);
    const std::size_t n = x.points.size();
    Rational cap(0);
    for (std::size_t i = 0; i < n; ++i) {
        if (l1_norm(x.points[i]) < Rational(1))
            throw std::invalid_argument("align_gap_upper_exact: requires ||x||_1 >= 1");
        Rational c = Rational(1) / linf_norm(x.points[i]);
        if (c > cap) cap = c;
    }
    Rational sum(0);
    for (std::size_t i = 0; i < n; ++i) {
        Rational next = (i + 1 < n) ? dot(x.points[i], x.points[i + 1]) : Rational(0);
        Rational coef = dot(x.points[i], x.points[i]) - next;
        if (coef > 0) sum += coef;
    }
    return cap * sum;
}

template <class S>
struct SearchResult {
    S value = S(0);
    ScalarSeq<S> scalars;
};

namespace detail {

/// Objective evaluator over a fixed Gram matrix; c is indexed 0..N-1.
class AlignObjective {
public:
    explicit AlignObjective(const PointSeq<double>& x) {
        n_ = x.points.size();
        gram_.assign(n_ * n_, 0.0);
        inv_l1_.resize(n_);
        cmax_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            inv_l1_[i] = 1.0 / l1_norm(x.points[i]);
            cmax_[i] = 1.0 / linf_norm(x.points[i]);
            for (std::size_t j = 0; j <= i; ++j) {
                double g = dot(x.points[i], x.points[j]);
                gram_[i * n_ + j] = g;
                gram_[j * n_ + i] = g;
            }
        }
    }

    std::size_t size() const { return n_; }
    double cmax(std::size_t i) const { return cmax_[i]; }

    double operator()(const std::vector<double>& c) const {
        double total = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            double own = c[i] * gram_[i * n_ + i];
            double best = own;
            for (std::size_t j = 0; j < i; ++j) {
                double cand = own - c[j] * gram_[i * n_ + j];
                if (cand < best) best = cand;
            }
            if (best > 0.0) total += best * inv_l1_[i];
        }
        return total;
    }

private:
    std::size_t n_ = 0;
    std::vector<double> gram_, inv_l1_, cmax_;
};

inline void golden_ascent(const AlignObjective& f, std::vector<double>& c, int sweeps) {
    constexpr double inv_phi = 0.6180339887498949;
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        for (std::size_t i = 0; i < f.size(); ++i) {
            double lo = 0.0, hi = f.cmax(i);
            double keep = c[i], keep_val = f(c);
            double a = hi - inv_phi * (hi - lo), b = lo + inv_phi * (hi - lo);
            c[i] = a;
            double fa = f(c);
            c[i] = b;
            double fb = f(c);
            for (int it = 0; it < 40; ++it) {
                if (fa < fb) {
                    lo = a;
                    a = b;
                    fa = fb;
                    b = lo + inv_phi * (hi - lo);
                    c[i] = b;
                    fb = f(c);
                } else {
                    hi = b;
                    b = a;
                    fb = fa;
                    a = hi - inv_phi * (hi - lo);
                    c[i] = a;
                    fa = f(c);
                }
            }
            double mid = 0.5 * (lo + hi);
            c[i] = mid;
            double fm = f(c);
            // also probe the box endpoints; the objective is piecewise linear
            c[i] = 0.0;
            double f0 = f(c);
            c[i] = f.cmax(i);
            double f1 = f(c);
            double best = keep_val;
            double arg = keep;
            if (fm > best) { best = fm; arg = mid; }
            if (f0 > best) { best = f0; arg = 0.0; }
            if (f1 > best) { best = f1; arg = f.cmax(i); }
            c[i] = arg;
        }
    }
}

}  // namespace detail

/// Multistart coordinate ascent over c_i in [0, 1/||x_i||_inf]. The result
/// is a feasible C, hence a certified lower bound on AlignGap(X); canonical
/// starts (all-max, supgap-style, last-only, zero, coarse grid for N <= 6)
/// come before `restarts` random ones. Deterministic given the seed.
inline SearchResult<double> align_gap_search(const PointSeq<double>& x, int restarts = 16,
                                             std::uint64_t seed = 0, int sweeps = 3) {
    menugap::detail::check_gap_inputs(x);
    detail::AlignObjective f(x);
    const std::size_t n = f.size();

    std::vector<std::vector<double>> starts;
    std::vector<double> s0(n);
    for (std::size_t i = 0; i < n; ++i) s0[i] = f.cmax(i);
    starts.push_back(s0);  // all-max
    for (std::size_t i = 0; i < n; ++i) s0[i] = std::min(1.0, f.cmax(i));
    starts.push_back(s0);  // supgap-style
    std::fill(s0.begin(), s0.end(), 0.0);
    if (n >= 1) s0[n - 1] = f.cmax(n - 1);
    starts.push_back(s0);  // last-only
    std::fill(s0.begin(), s0.end(), 0.0);
    starts.push_back(s0);  // zero
    if (n <= 6 && n >= 1) {
        // coarse grid scan as one more start
        static constexpr int kRes[7] = {0, 16, 16, 10, 7, 5, 4};
        int res = kRes[n];
        std::vector<int> t(n, 0);
        std::vector<double> cand(n), best_c(n, 0.0);
        double best_v = -1.0;
        while (true) {
            for (std::size_t i = 0; i < n; ++i) cand[i] = f.cmax(i) * static_cast<double>(t[i]) / res;
            double v = f(cand);
            if (v > best_v) {
                best_v = v;
                best_c = cand;
            }
            std::size_t pos = 0;
            while (pos < n && ++t[pos] > res) t[pos++] = 0;
            if (pos == n) break;
        }
        starts.push_back(best_c);
    }
    SeedStream stream(seed, "align-gap-search");
    for (int r = 0; r < restarts; ++r) {
        std::vector<double> c(n);
        for (std::size_t i = 0; i < n; ++i) c[i] = f.cmax(i) * stream.uniform_int(0, 16) / 16.0;
        starts.push_back(std::move(c));
    }

    std::vector<double> best_c(n, 0.0);
    double best = 0.0;
    for (auto& c : starts) {
        detail::golden_ascent(f, c, sweeps);
        double v = f(c);
        if (v > best) {
            best = v;
            best_c = c;
        }
    }

    SearchResult<double> out;
    out.value = best;
    out.scalars.scalars.push_back(0.0);
    for (std::size_t i = 0; i < n; ++i) out.scalars.scalars.push_back(best_c[i]);
    return out;
}

/// Snaps a float scalar vector onto the exact feasible box and re-evaluates
/// the objective exactly; the value is a certified AlignGap lower bound for
/// the rational sequence.
inline SearchResult<Rational> certify_scalars(const PointSeq<Rational>& x, const ScalarSeq<double>& c) {
    ScalarSeq<Rational> cr;
    cr.scalars.push_back(Rational(0));
    for (std::size_t i = 0; i < x.points.size(); ++i) {
        // interpret the float scalar as a fraction of its cap so the box
        // corner c = 1/||x||_inf certifies exactly
        double cap_d = 1.0 / scalar_to_double(linf_norm(x.points[i]));
        Rational frac = rat_from_double(c.scalars[i + 1] / cap_d);
        if (frac < 0) frac = 0;
        if (frac > 1) frac = 1;
        cr.scalars.push_back(frac / linf_norm(x.points[i]));
    }
    SearchResult<Rational> out;
    out.scalars = cr;
    out.value = align_gap_terms(x, cr).total;
    return out;
}

inline SearchResult<Rational> align_gap_search_certified(const PointSeq<Rational>& x, int restarts = 16,
                                                         std::uint64_t seed = 0, int sweeps = 3) {
    PointSeq<double> xd;
    xd.k = x.k;
    for (const auto& p : x.points) xd.points.push_back(vec_to_double(p));
    auto res = align_gap_search(xd, restarts, seed, sweeps);
    return certify_scalars(x, res.scalars);
}

/// Exhaustive grid oracle: c_i ranges over {t * cmax_i / resolution}. Guarded
/// to N <= 6 and resolution <= 256. Converges to the sup from below as the
/// resolution grows.
inline SearchResult<double> align_gap_bruteforce(const PointSeq<double>& x, int resolution) {
    menugap::detail::check_gap_inputs(x);
    if (x.points.size() > 6) throw std::invalid_argument("align_gap_bruteforce: N <= 6 required");
    if (resolution < 1 || resolution > 256) throw std::invalid_argument("align_gap_bruteforce: resolution in [1,256]");
    detail::AlignObjective f(x);
    const std::size_t n = f.size();

    std::vector<int> t(n, 0);
    std::vector<double> cand(n), best_c(n, 0.0);
    double best = -1.0;
    while (true) {
        for (std::size_t i = 0; i < n; ++i) cand[i] = f.cmax(i) * static_cast<double>(t[i]) / resolution;
        double v = f(cand);
        if (v > best) {
            best = v;
            best_c = cand;
        }
        std::size_t pos = 0;
        while (pos < n && ++t[pos] > resolution) t[pos++] = 0;
        if (pos == n) break;
    }

    SearchResult<double> out;
    out.value = std::max(0.0, best);
    out.scalars.scalars.push_back(0.0);
    for (std::size_t i = 0; i < n; ++i) out.scalars.scalars.push_back(best_c[i]);
    return out;
}

inline SearchResult<Rational> align_gap_bruteforce_certified(const PointSeq<Rational>& x, int resolution) {
    PointSeq<double> xd;
    xd.k = x.k;
    for (const auto& p : x.points) xd.points.push_back(vec_to_double(p));
    auto res = align_gap_bruteforce(xd, resolution);
    return certify_scalars(x, res.scalars);
}

}  // namespace menugap::opt
