#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "menugap/gapopt.hpp"

namespace menugap::transform {

/// Scale parameters of the sequence-to-distribution construction: value
/// vectors B^{2^i} x_i/||x_i||_1 sampled with probability B^{-2^i}. The
/// float backend refuses parameters whose largest scale would leave the
/// representable range; the rational backend has no cap.
template <class S>
struct HNParams {
    S base = S(10);
    int max_index = 6;

    void validate() const {
        if (!(base > S(1))) throw std::invalid_argument("HNParams: base must exceed 1");
        if (max_index < 1) throw std::invalid_argument("HNParams: max_index must be >= 1");
        if constexpr (!ScalarOps<S>::exact) {
            double scale = static_cast<double>(max_index >= 1 ? std::pow(2.0, max_index) : 2.0);
            if (std::log10(base) * scale > 300.0)
                throw std::invalid_argument("HNParams: B^(2^max_index) exceeds the float range");
        }
        S mass = S(0);
        for (int i = 1; i <= max_index; ++i) mass += S(1) / pow_2exp(base, i);
        if (!(mass < S(1))) throw std::invalid_argument("HNParams: probabilities meet or exceed 1");
    }

    static S pow_2exp(const S& b, int i) {  // b^(2^i) by repeated squaring
        S acc = b;
        for (int t = 0; t < i; ++t) acc *= acc;
        return acc;
    }
};

template <class S>
struct HNResult {
    auction::DiscreteDistribution<S> dist;  // v_1..v_N then the zero vector
    auction::Mechanism<S> mech;
    std::vector<int> intended;  // support index -> menu entry (zero point -> 0)
    auction::IcReport ic;
};

/// Builds (D, M) from a gap pair. Prices use greedy indifference:
/// p_i = v_i . q_i - max_{j<i}(v_i . q_j - p_j), which makes v_i weakly
/// prefer entry i over everything earlier; global IC is then verified and
/// reported (it can fail when gap terms are negative — reported, not thrown).
template <class S>
HNResult<S> hn_construct(const PointSeq<S>& x, const AllocSeq<S>& q, const HNParams<S>& params) {
    menugap::detail::check_gap_inputs(x);
    q.validate();
    if (x.k != q.k) throw std::invalid_argument("hn_construct: dimension mismatch");
    if (x.points.size() + 1 != q.allocations.size())
        throw std::invalid_argument("hn_construct: need |X| = |Q| - 1");
    params.validate();
    const std::size_t n = x.points.size();
    if (static_cast<int>(n) > params.max_index)
        throw std::invalid_argument("hn_construct: sequence longer than max_index");

    HNResult<S> out;
    out.dist.k = x.k;
    std::vector<S> prices;   // aligned with points
    std::vector<Vec<S>> vs;  // scaled value vectors
    S zero_mass = S(1);
    for (std::size_t i = 0; i < n; ++i) {
        S scale = HNParams<S>::pow_2exp(params.base, static_cast<int>(i) + 1);
        Vec<S> v = scaled(x.points[i], S(scale / l1_norm(x.points[i])));
        S prob = S(1) / scale;
        zero_mass -= prob;
        out.dist.values.push_back(v);
        out.dist.probs.push_back(prob);
        vs.push_back(std::move(v));
    }
    out.dist.values.push_back(zero_vec<S>(x.k));
    out.dist.probs.push_back(zero_mass);
    out.dist.validate();

    // greedy indifference pricing over the menu built so far
    std::vector<auction::MenuEntry<S>> entries;
    for (std::size_t i = 0; i < n; ++i) {
        S best = S(0);  // zero option
        for (std::size_t j = 0; j < entries.size(); ++j) {
            S u = dot(vs[i], entries[j].q) - entries[j].price;
            if (u > best) best = u;
        }
        S price = dot(vs[i], q.allocations[i + 1]) - best;
        entries.push_back({q.allocations[i + 1], price});
        prices.push_back(price);
    }
    out.mech = auction::make_mechanism(x.k, entries);

    // intended purchase: the deduplicated entry carrying (q_i, p_i)
    out.intended.assign(out.dist.size(), 0);
    for (std::size_t i = 0; i < n; ++i) {
        int found = -1;
        for (std::size_t e = 0; e < out.mech.menu.size(); ++e)
            if (out.mech.menu[e].q == q.allocations[i + 1] && out.mech.menu[e].price == prices[i]) {
                found = static_cast<int>(e);
                break;
            }
        out.intended[i] = found;
    }
    out.intended[n] = 0;  // the zero-value buyer takes the zero option
    out.ic = auction::verify_ic_ir(out.dist, out.mech, &out.intended);
    return out;
}

/// Extraction configuration. epsilon is the l1-minimality slack from the
/// sequence definitions; finite support admits an exact minimum, so the
/// pipelines extract with epsilon = 0 and keep the definition's epsilon only
/// for the certificate checks.
template <class S>
struct ExtractionConfig {
    S c = S(1);
    S epsilon = S(0);
    enum class Parity { odd, even, automatic } parity = Parity::automatic;
};

template <class S>
struct Extraction {
    PointSeq<S> x;
    AllocSeq<S> q;        // representative form
    ScalarSeq<S> scalars; // aligned form (c_0 followed by one scalar per point)
    std::vector<long> band;          // dyadic band index 2(j-1)+a per kept bucket
    std::vector<S> bucket_prob;      // Pr[B_j] per kept bucket
    std::vector<S> payment;          // p^M(x_j) per kept bucket
    bool oddly_priced = false;
};

namespace detail {

template <class S>
long payment_band(const S& payment, const S& c) {
    return floor_log2(payment / c);
}

/// Shared bucketing for representative and aligned sequences. Buckets group
/// support points by payment band [c 2^{2(j-1)+a}, c 2^{2(j-1)+a+1}); the
/// representative is the l1-minimal member (first in support order on ties)
/// and empty buckets are skipped.
template <class S>
Extraction<S> extract(const auction::DiscreteDistribution<S>& d, const auction::Mechanism<S>& m,
                      const ExtractionConfig<S>& cfg, bool aligned_only, double tol) {
    d.validate();
    m.validate();
    if (d.k != m.k) throw std::invalid_argument("extract: dimension mismatch");
    if (!(cfg.c > S(0))) throw std::invalid_argument("extract: c must be positive");
    if (cfg.epsilon < S(0)) throw std::invalid_argument("extract: epsilon must be nonnegative");
    if (!auction::is_c_expensive(m, cfg.c)) throw std::invalid_argument("extract: mechanism is not c-expensive");

    // payments and parity check
    std::vector<S> pay(d.size());
    std::vector<int> entry(d.size());
    std::optional<int> parity_seen;
    for (std::size_t i = 0; i < d.size(); ++i) {
        auto ch = auction::buyer_choice(m, d.values[i], tol);
        entry[i] = ch.entry;
        pay[i] = m.menu[static_cast<std::size_t>(ch.entry)].price;
        if (pay[i] > S(0)) {
            int par = static_cast<int>(((payment_band(pay[i], cfg.c) % 2) + 2) % 2);
            if (!parity_seen) parity_seen = par;
            else if (*parity_seen != par)
                throw std::invalid_argument("extract: payments mix odd and even bands");
        }
    }
    bool odd;
    switch (cfg.parity) {
        case ExtractionConfig<S>::Parity::odd: odd = true; break;
        case ExtractionConfig<S>::Parity::even: odd = false; break;
        default: odd = parity_seen.value_or(0) == 1; break;
    }
    if (parity_seen && ((*parity_seen == 1) != odd))
        throw std::invalid_argument("extract: requested parity does not match the payments");
    const long a = odd ? 1 : 0;

    Extraction<S> out;
    out.oddly_priced = odd;
    out.x.k = d.k;
    out.q.k = d.k;
    out.q.allocations.push_back(zero_vec<S>(d.k));
    out.scalars.scalars.push_back(S(0));

    long max_band = -1;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (pay[i] > S(0)) max_band = std::max(max_band, payment_band(pay[i], cfg.c));

    for (long band = a; band <= max_band; band += 2) {
        std::size_t pick = d.size();
        S mass = S(0);
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (!(pay[i] > S(0)) || payment_band(pay[i], cfg.c) != band) continue;
            if (aligned_only && !is_parallel(d.values[i], m.menu[static_cast<std::size_t>(entry[i])].q, 1e-9))
                continue;
            mass += d.probs[i];
            if (pick == d.size() || l1_norm(d.values[i]) < l1_norm(d.values[pick])) pick = i;
        }
        if (pick == d.size()) continue;  // empty bucket: omit and renumber
        const Vec<S>& xj = d.values[pick];
        const Vec<S>& qj = m.menu[static_cast<std::size_t>(entry[pick])].q;
        out.x.points.push_back(xj);
        out.q.allocations.push_back(qj);
        out.scalars.scalars.push_back(l1_norm(qj) / l1_norm(xj));
        out.band.push_back(band);
        out.bucket_prob.push_back(mass);
        out.payment.push_back(pay[pick]);
    }
    return out;
}

}  // namespace detail

/// Representative (X, Q) for a c-expensive, oddly- or evenly-priced M.
template <class S>
Extraction<S> representative_sequence(const auction::DiscreteDistribution<S>& d, const auction::Mechanism<S>& m,
                                      const ExtractionConfig<S>& cfg, double tol = 1e-12) {
    return detail::extract(d, m, cfg, /*aligned_only=*/false, tol);
}

/// Aligned (X, C): the same bucketing restricted to buyers whose purchased
/// allocation is parallel to their value; scalars are ||q|| / ||x|| ratios.
template <class S>
Extraction<S> aligned_sequence(const auction::DiscreteDistribution<S>& d, const auction::Mechanism<S>& m,
                               const ExtractionConfig<S>& cfg, double tol = 1e-12) {
    return detail::extract(d, m, cfg, /*aligned_only=*/true, tol);
}

/// Outcome of a pipeline run: pass means gap_total >= claimed_bound (exactly
/// on the rational backend).
template <class S>
struct Certificate {
    S gap_total = S(0);
    S rev = S(0);
    S brev = S(0);
    std::optional<S> arev;
    S ratio = S(0);  // gap_total * 9 * brev / rev (or the arev analogue)
    S claimed_bound = S(0);
    bool pass = false;
    bool vacuous = false;
    std::string provenance;
    // intermediate checks
    bool per_index_payment_bound = true;  // gap_i >= p(x_i)/2
    bool ell1_bound = true;               // (1+eps) brev >= ||x_i||_1 Pr[B_i]
    bool intermediate_factor = true;      // gap_total >= rev(M'')/(4(1+eps) brev)
    S parity_rev_odd = S(0);
    S parity_rev_even = S(0);
};

/// End-to-end factor-9 pipeline: optimal LP mechanism, price filtering at
/// c = Rev/100, parity split (keeping the richer half), representative
/// extraction, and the MenuGap certificate against Rev/(9 BRev).
template <class S>
Certificate<S> theorem_main_pipeline(const auction::DiscreteDistribution<S>& d, std::size_t lp_cap = 100,
                                     double tol = 1e-12) {
    Certificate<S> cert;
    cert.provenance = "factor9-menugap";
    auto solved = opt::optimal_mechanism_lp(d, lp_cap);
    cert.rev = solved.revenue;
    auto [bp, bv] = auction::brev(d);
    cert.brev = bv;
    if (!(cert.rev > S(0))) {
        cert.pass = true;
        cert.vacuous = true;
        return cert;
    }

    const S c = cert.rev / S(100);
    const S eps = S(1) / S(100);
    auto expensive = auction::c_expensive(solved.mech, c);
    auto [modd, meven] = auction::parity_split(expensive, c);
    cert.parity_rev_odd = auction::revenue(d, modd, tol).rev;
    cert.parity_rev_even = auction::revenue(d, meven, tol).rev;
    bool use_odd = cert.parity_rev_odd > cert.parity_rev_even;
    const auto& chosen = use_odd ? modd : meven;
    S chosen_rev = use_odd ? cert.parity_rev_odd : cert.parity_rev_even;

    ExtractionConfig<S> cfg;
    cfg.c = c;
    cfg.epsilon = S(0);
    cfg.parity = use_odd ? ExtractionConfig<S>::Parity::odd : ExtractionConfig<S>::Parity::even;
    auto ext = representative_sequence(d, chosen, cfg, tol);

    if (ext.x.points.empty()) {
        cert.gap_total = S(0);
    } else {
        auto rep = menu_gap_terms(ext.x, ext.q);
        cert.gap_total = rep.total;
        for (std::size_t i = 0; i < rep.terms.size(); ++i)
            if (!(rep.terms[i] >= ext.payment[i] / S(2))) cert.per_index_payment_bound = false;
    }
    for (std::size_t i = 0; i < ext.x.points.size(); ++i)
        if (!((S(1) + eps) * cert.brev >= l1_norm(ext.x.points[i]) * ext.bucket_prob[i])) cert.ell1_bound = false;
    if (!(cert.gap_total >= chosen_rev / (S(4) * (S(1) + eps) * cert.brev))) cert.intermediate_factor = false;

    cert.claimed_bound = cert.rev / (S(9) * cert.brev);
    cert.ratio = cert.gap_total * S(9) * cert.brev / cert.rev;
    cert.pass = cert.gap_total >= cert.claimed_bound;
    return cert;
}

/// Aligned analogue for a supplied mechanism: certifies
/// AlignGap(X, C) >= arev(D, M)/(9 BRev(D)).
template <class S>
Certificate<S> theorem_ext_pipeline(const auction::DiscreteDistribution<S>& d, const auction::Mechanism<S>& m,
                                    double tol = 1e-12) {
    Certificate<S> cert;
    cert.provenance = "factor9-aligngap";
    auto base = auction::revenue(d, m, tol);
    cert.rev = base.rev;
    cert.brev = base.brev;
    cert.arev = base.arev;
    if (!(base.arev > S(0))) {
        cert.pass = true;
        cert.vacuous = true;
        return cert;
    }

    const S c = base.arev / S(100);
    const S eps = S(1) / S(100);
    auto expensive = auction::c_expensive(m, c);
    auto [modd, meven] = auction::parity_split(expensive, c);
    S arev_odd = auction::arev(d, modd, tol);
    S arev_even = auction::arev(d, meven, tol);
    cert.parity_rev_odd = arev_odd;
    cert.parity_rev_even = arev_even;
    bool use_odd = arev_odd > arev_even;
    const auto& chosen = use_odd ? modd : meven;
    S chosen_arev = use_odd ? arev_odd : arev_even;

    ExtractionConfig<S> cfg;
    cfg.c = c;
    cfg.epsilon = S(0);
    cfg.parity = use_odd ? ExtractionConfig<S>::Parity::odd : ExtractionConfig<S>::Parity::even;
    auto ext = aligned_sequence(d, chosen, cfg, tol);

    if (ext.x.points.empty()) {
        cert.gap_total = S(0);
    } else {
        ext.scalars.validate_against(ext.x);
        auto rep = align_gap_terms(ext.x, ext.scalars);
        cert.gap_total = rep.total;
        for (std::size_t i = 0; i < rep.terms.size(); ++i)
            if (!(rep.terms[i] >= ext.payment[i] / S(2))) cert.per_index_payment_bound = false;
    }
    for (std::size_t i = 0; i < ext.x.points.size(); ++i)
        if (!((S(1) + eps) * cert.brev >= l1_norm(ext.x.points[i]) * ext.bucket_prob[i])) cert.ell1_bound = false;
    if (!(cert.gap_total >= chosen_arev / (S(4) * (S(1) + eps) * cert.brev))) cert.intermediate_factor = false;

    cert.claimed_bound = *cert.arev / (S(9) * cert.brev);
    cert.ratio = cert.gap_total * S(9) * cert.brev / *cert.arev;
    cert.pass = cert.gap_total >= cert.claimed_bound;
    return cert;
}

struct PropHnEntry {
    std::string label;
    double arev = 0.0;
    double margin = 0.0;  // bound - arev; negative would falsify
};

struct PropHnReport {
    double bound = 0.0;  // exact-cap relaxation value + 1/B, rounded up
    std::vector<PropHnEntry> entries;
    double worst_margin = 0.0;
    bool all_hold = true;
};

/// Falsification harness: arev(D, M') <= AlignGap upper bound + 1/B must
/// hold for the constructed mechanism and every candidate. A finite
/// candidate family can only falsify the sup-based claim, never verify it.
inline PropHnReport prop_hn_check(const PointSeq<double>& x, const AllocSeq<double>& q, double base,
                                  const std::vector<std::pair<std::string, auction::Mechanism<Rational>>>& candidates) {
    auto xr = point_seq_from_double<Rational>(x);
    auto qr = alloc_seq_from_double<Rational>(q);
    HNParams<Rational> params;
    params.base = rat_from_double(base);
    params.max_index = std::max<int>(1, static_cast<int>(x.points.size()));
    auto hn = hn_construct(xr, qr, params);

    Rational bound = opt::align_gap_upper_exact(xr) + Rational(1) / params.base;
    PropHnReport rep;
    rep.bound = rat_to_double(bound);
    auto record = [&](const std::string& label, const auction::Mechanism<Rational>& m) {
        Rational a = auction::arev(hn.dist, m);
        PropHnEntry e;
        e.label = label;
        e.arev = rat_to_double(a);
        e.margin = rat_to_double(bound - a);
        if (!(a <= bound)) rep.all_hold = false;
        rep.entries.push_back(e);
    };
    record("constructed", hn.mech);
    for (const auto& [label, cand] : candidates) record(label, cand);
    rep.worst_margin = rep.entries.empty() ? 0.0 : rep.entries.front().margin;
    for (const auto& e : rep.entries) rep.worst_margin = std::min(rep.worst_margin, e.margin);
    return rep;
}

/// All grand-bundle posted-price menus at the support's bundle values.
inline std::vector<std::pair<std::string, auction::Mechanism<Rational>>> bundle_price_candidates(
    const auction::DiscreteDistribution<Rational>& d) {
    std::vector<std::pair<std::string, auction::Mechanism<Rational>>> out;
    Vec<Rational> ones(static_cast<std::size_t>(d.k), Rational(1));
    for (std::size_t i = 0; i < d.size(); ++i) {
        Rational p = l1_norm(d.values[i]);
        if (!(p > 0)) continue;
        out.emplace_back("bundle@v" + std::to_string(i + 1),
                         auction::make_mechanism<Rational>(d.k, {{ones, p}}));
    }
    return out;
}

}  // namespace menugap::transform
