#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "menugap/linalg.hpp"
#include "menugap/rational.hpp"

namespace menugap::auction {

/// Finite-support value distribution over R_{>=0}^k.
template <class S>
struct DiscreteDistribution {
    int k = 0;
    std::vector<Vec<S>> values;
    std::vector<S> probs;

    std::size_t size() const { return values.size(); }

    void validate(double tol = 1e-12) const {
        if (k <= 0) throw std::invalid_argument("DiscreteDistribution: dimension must be positive");
        if (values.size() != probs.size() || values.empty())
            throw std::invalid_argument("DiscreteDistribution: empty or ragged support");
        S sum = S(0);
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (static_cast<int>(values[i].size()) != k)
                throw std::invalid_argument("DiscreteDistribution: value dimension mismatch");
            for (const S& v : values[i])
                if (v < S(0)) throw std::invalid_argument("DiscreteDistribution: negative value coordinate");
            if (!(probs[i] > S(0))) throw std::invalid_argument("DiscreteDistribution: probabilities must be positive");
            sum += probs[i];
            for (std::size_t j = i + 1; j < values.size(); ++j)
                if (values[i] == values[j])
                    throw std::invalid_argument("DiscreteDistribution: duplicate support point");
        }
        if (!approx_equal(sum, S(1), tol)) throw std::invalid_argument("DiscreteDistribution: probabilities must sum to 1");
    }
};

template <class S>
struct MenuEntry {
    Vec<S> q;
    S price = S(0);
};

/// A menu of (allocation, price) pairs. Always contains the all-zero pair
/// and no duplicate entries; make_mechanism enforces both.
template <class S>
struct Mechanism {
    int k = 0;
    std::vector<MenuEntry<S>> menu;

    std::size_t size() const { return menu.size(); }

    void validate() const {
        if (k <= 0) throw std::invalid_argument("Mechanism: dimension must be positive");
        bool has_zero = false;
        for (std::size_t i = 0; i < menu.size(); ++i) {
            const auto& e = menu[i];
            if (static_cast<int>(e.q.size()) != k)
                throw std::invalid_argument("Mechanism: allocation dimension mismatch");
            for (const S& v : e.q)
                if (v < S(0) || v > S(1)) throw std::invalid_argument("Mechanism: allocation outside [0,1]^k");
            if (is_zero_vec(e.q) && e.price == S(0)) has_zero = true;
            for (std::size_t j = i + 1; j < menu.size(); ++j)
                if (menu[i].q == menu[j].q && menu[i].price == menu[j].price)
                    throw std::invalid_argument("Mechanism: duplicate menu entry");
        }
        if (!has_zero) throw std::invalid_argument("Mechanism: missing the all-zero pair");
    }
};

/// Builds a mechanism from raw entries: inserts the zero pair up front and
/// drops exact duplicates (keeping the first occurrence).
template <class S>
Mechanism<S> make_mechanism(int k, const std::vector<MenuEntry<S>>& entries) {
    Mechanism<S> m;
    m.k = k;
    m.menu.push_back(MenuEntry<S>{zero_vec<S>(k), S(0)});
    for (const auto& e : entries) {
        bool dup = false;
        for (const auto& kept : m.menu)
            if (kept.q == e.q && kept.price == e.price) {
                dup = true;
                break;
            }
        if (!dup) m.menu.push_back(e);
    }
    m.validate();
    return m;
}

template <class S>
struct Choice {
    int entry = 0;
    S utility = S(0);
    bool tie = false;
};

/// Utility-maximizing entry; ties (exact on rationals, within tol on floats)
/// break toward the higher price, then the lower menu index.
template <class S>
Choice<S> buyer_choice(const Mechanism<S>& m, const Vec<S>& v, double tol = 1e-12) {
    if (static_cast<int>(v.size()) != m.k) throw std::invalid_argument("buyer_choice: dimension mismatch");
    if (m.menu.empty()) throw std::invalid_argument("buyer_choice: empty menu");

    std::vector<S> utils(m.menu.size());
    std::size_t arg = 0;
    for (std::size_t i = 0; i < m.menu.size(); ++i) {
        utils[i] = dot(v, m.menu[i].q) - m.menu[i].price;
        if (utils[i] > utils[arg]) arg = i;
    }
    auto tied = [&](std::size_t i) {
        if constexpr (ScalarOps<S>::exact) {
            (void)tol;
            return utils[i] == utils[arg];
        } else {
            return std::fabs(utils[i] - utils[arg]) <= tol * std::max(1.0, std::fabs(utils[arg]));
        }
    };
    // higher price first, then lower index, among the tie set
    std::size_t pick = arg;
    int ties = 0;
    bool found = false;
    for (std::size_t i = 0; i < m.menu.size(); ++i) {
        if (!tied(i)) continue;
        ++ties;
        if (!found || m.menu[i].price > m.menu[pick].price) {
            pick = i;
            found = true;
        }
    }
    Choice<S> out;
    out.entry = static_cast<int>(pick);
    out.utility = utils[pick];
    out.tie = ties >= 2;
    return out;
}

template <class S>
struct PointOutcome {
    int entry = 0;
    S utility = S(0);
    S payment = S(0);
    bool aligned = false;
    bool tie = false;
};

/// Revenue accounting for one (D, M) pair: expected payment, its aligned
/// restriction, and the grand-bundle benchmark.
template <class S>
struct RevenueReport {
    std::vector<PointOutcome<S>> outcomes;
    S rev = S(0);
    S arev = S(0);
    S brev = S(0);
    S brev_price = S(0);
};

/// Best single posted price on the grand bundle: max_p p * Pr[||v||_1 >= p],
/// with candidate prices at the distinct positive support bundle values.
template <class S>
std::pair<S, S> brev(const DiscreteDistribution<S>& d) {
    d.validate();
    S best_price = S(0), best_value = S(0);
    for (std::size_t i = 0; i < d.size(); ++i) {
        S price = l1_norm(d.values[i]);
        if (!(price > S(0))) continue;
        S mass = S(0);
        for (std::size_t j = 0; j < d.size(); ++j)
            if (l1_norm(d.values[j]) >= price) mass += d.probs[j];
        S value = price * mass;
        if (value > best_value || (value == best_value && best_price > S(0) && price < best_price)) {
            best_value = value;
            best_price = price;
        }
    }
    return {best_price, best_value};
}

template <class S>
RevenueReport<S> revenue(const DiscreteDistribution<S>& d, const Mechanism<S>& m, double tol = 1e-12) {
    d.validate();
    m.validate();
    if (d.k != m.k) throw std::invalid_argument("revenue: dimension mismatch");

    RevenueReport<S> rep;
    for (std::size_t i = 0; i < d.size(); ++i) {
        Choice<S> ch = buyer_choice(m, d.values[i], tol);
        PointOutcome<S> oc;
        oc.entry = ch.entry;
        oc.utility = ch.utility;
        oc.tie = ch.tie;
        oc.payment = m.menu[static_cast<std::size_t>(ch.entry)].price;
        oc.aligned = is_parallel(d.values[i], m.menu[static_cast<std::size_t>(ch.entry)].q, 1e-9);
        rep.outcomes.push_back(oc);
        rep.rev += d.probs[i] * oc.payment;
        if (oc.aligned) rep.arev += d.probs[i] * oc.payment;
    }
    auto [bp, bv] = brev(d);
    rep.brev_price = bp;
    rep.brev = bv;
    return rep;
}

/// Expected payment counted only on buyers whose purchased allocation is
/// parallel to their value vector (the zero allocation counts as parallel).
template <class S>
S arev(const DiscreteDistribution<S>& d, const Mechanism<S>& m, double tol = 1e-12) {
    return revenue(d, m, tol).arev;
}

struct IcViolation {
    std::size_t support_index;
    double margin;  // positive = violation size
    std::string kind;
};

struct IcReport {
    double worst_margin = 0.0;  // max violation over all checks, 0 if clean
    std::vector<IcViolation> violations;
    bool clean(double tol = 0.0) const { return worst_margin <= tol; }
};

/// Post-hoc check of the choice semantics: for each support point, the
/// intended entry (defaults to buyer_choice) must be utility-maximal and
/// individually rational. Violations are reported, never thrown.
template <class S>
IcReport verify_ic_ir(const DiscreteDistribution<S>& d, const Mechanism<S>& m,
                      const std::vector<int>* intended = nullptr, double tol = 1e-12) {
    d.validate();
    m.validate();
    if (intended && intended->size() != d.size())
        throw std::invalid_argument("verify_ic_ir: intended assignment length mismatch");

    IcReport rep;
    for (std::size_t i = 0; i < d.size(); ++i) {
        int e = intended ? (*intended)[i] : buyer_choice(m, d.values[i], tol).entry;
        if (e < 0 || static_cast<std::size_t>(e) >= m.menu.size())
            throw std::invalid_argument("verify_ic_ir: intended entry out of range");
        S u = dot(d.values[i], m.menu[static_cast<std::size_t>(e)].q) - m.menu[static_cast<std::size_t>(e)].price;
        S worst = S(0);
        std::string kind;
        for (std::size_t j = 0; j < m.menu.size(); ++j) {
            S uj = dot(d.values[i], m.menu[j].q) - m.menu[j].price;
            if (uj - u > worst) {
                worst = uj - u;
                kind = "ic";
            }
        }
        if (S(0) - u > worst) {
            worst = S(0) - u;
            kind = "ir";
        }
        double wm = scalar_to_double<S>(worst);
        if (wm > 0.0) rep.violations.push_back({i, wm, kind});
        rep.worst_margin = std::max(rep.worst_margin, wm);
    }
    return rep;
}

/// Drops entries priced below c and reinstates the zero option.
template <class S>
Mechanism<S> c_expensive(const Mechanism<S>& m, const S& c) {
    if (c < S(0)) throw std::invalid_argument("c_expensive: c must be nonnegative");
    std::vector<MenuEntry<S>> kept;
    for (const auto& e : m.menu)
        if (e.price >= c && !(is_zero_vec(e.q) && e.price == S(0))) kept.push_back(e);
    return make_mechanism(m.k, kept);
}

/// True when every non-zero-pair entry is priced at least c.
template <class S>
bool is_c_expensive(const Mechanism<S>& m, const S& c) {
    for (const auto& e : m.menu) {
        if (is_zero_vec(e.q) && e.price == S(0)) continue;
        if (e.price < c) return false;
    }
    return true;
}

/// Splits a c-expensive menu into the dyadic-band parity classes: the entry
/// with price p lands in the parity of floor(log2(p / c)). Both halves keep
/// the zero option.
template <class S>
std::pair<Mechanism<S>, Mechanism<S>> parity_split(const Mechanism<S>& m, const S& c) {
    if (!(c > S(0))) throw std::invalid_argument("parity_split: c must be positive");
    if (!is_c_expensive(m, c)) throw std::invalid_argument("parity_split: mechanism is not c-expensive");
    std::vector<MenuEntry<S>> odd, even;
    for (const auto& e : m.menu) {
        if (is_zero_vec(e.q) && e.price == S(0)) continue;
        long i = floor_log2(e.price / c);
        ((i % 2 != 0) ? odd : even).push_back(e);
    }
    return {make_mechanism(m.k, odd), make_mechanism(m.k, even)};
}

}  // namespace menugap::auction
