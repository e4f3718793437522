#pragma once

#include "menugap/auctions.hpp"
#include "menugap/random.hpp"

namespace menugap {

/// Random finite distribution with distinct dyadic support points and exact
/// dyadic probabilities (positive integers over 64), so the rational backend
/// sees probabilities summing to exactly 1.
inline auction::DiscreteDistribution<double> random_distribution(SeedStream& s, int k, int m,
                                                                 bool allow_zero_point = false) {
    auction::DiscreteDistribution<double> d;
    d.k = k;
    while (static_cast<int>(d.values.size()) < m) {
        Vec<double> v(static_cast<std::size_t>(k), 0.0);
        for (int dd = 0; dd < k; ++dd) v[static_cast<std::size_t>(dd)] = s.dyadic(0, 128, 3);  // {0,...,16}
        if (!allow_zero_point && is_zero_vec(v)) continue;
        bool dup = false;
        for (const auto& u : d.values) dup = dup || u == v;
        if (!dup) d.values.push_back(std::move(v));
    }
    // split 64 into m positive parts
    std::vector<int> cuts;
    while (static_cast<int>(cuts.size()) < m - 1) {
        int c = s.uniform_int(1, 63);
        bool dup = false;
        for (int e : cuts) dup = dup || e == c;
        if (!dup) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());
    int prev = 0;
    for (int i = 0; i < m; ++i) {
        int next = (i == m - 1) ? 64 : cuts[static_cast<std::size_t>(i)];
        d.probs.push_back(static_cast<double>(next - prev) / 64.0);
        prev = next;
    }
    d.validate();
    return d;
}

/// Random menu over dyadic allocations and prices (prices may reach well
/// above typical utilities so low-utility entries exist too).
inline auction::Mechanism<double> random_mechanism(SeedStream& s, int k, int entries, double max_price = 32.0) {
    std::vector<auction::MenuEntry<double>> list;
    for (int e = 0; e < entries; ++e) {
        auction::MenuEntry<double> me;
        me.q.resize(static_cast<std::size_t>(k));
        for (int dd = 0; dd < k; ++dd) me.q[static_cast<std::size_t>(dd)] = s.dyadic(0, 16, 4);
        me.price = s.dyadic(0, 256, 3) * (max_price / 32.0);
        list.push_back(std::move(me));
    }
    return auction::make_mechanism(k, list);
}

/// Aligned menu for a distribution: entries t_v * v / ||v||_inf at dyadic t
/// and a price below the buyer's own value for that bundle, for a random
/// subset of the support.
inline auction::Mechanism<double> random_aligned_mechanism(SeedStream& s, const auction::DiscreteDistribution<double>& d) {
    std::vector<auction::MenuEntry<double>> list;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (is_zero_vec(d.values[i])) continue;
        if (s.uniform_int(0, 3) == 0) continue;  // leave some buyers unserved
        // dyadic scale factor u = t / 2^(4+e) with 2^e >= ||v||_inf keeps the
        // entry exactly parallel to v (no rounding) and inside [0,1]^k
        int e = 0;
        while (std::ldexp(1.0, e) < linf_norm(d.values[i])) ++e;
        double u = std::ldexp(static_cast<double>(s.uniform_int(1, 16)), -4 - e);
        auction::MenuEntry<double> me;
        me.q = scaled(d.values[i], u);
        double full = dot(d.values[i], me.q);
        me.price = full * s.dyadic(0, 16, 4);
        list.push_back(std::move(me));
    }
    return auction::make_mechanism(d.k, list);
}

inline auction::DiscreteDistribution<Rational> to_rational(const auction::DiscreteDistribution<double>& d) {
    auction::DiscreteDistribution<Rational> out;
    out.k = d.k;
    for (const auto& v : d.values) out.values.push_back(vec_from_double<Rational>(v));
    for (double p : d.probs) out.probs.push_back(rat_from_double(p));
    return out;
}

inline auction::Mechanism<Rational> to_rational(const auction::Mechanism<double>& m) {
    auction::Mechanism<Rational> out;
    out.k = m.k;
    for (const auto& e : m.menu)
        out.menu.push_back({vec_from_double<Rational>(e.q), rat_from_double(e.price)});
    return out;
}

}  // namespace menugap
