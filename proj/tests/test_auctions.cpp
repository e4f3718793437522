#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "menugap/generators.hpp"

using namespace menugap;
using namespace menugap::auction;

namespace {

Mechanism<double> two_entry_example() {
    // {(0,0) at 0; (1,0) at 4; (0,1) at 16}
    return make_mechanism<double>(2, {{{1, 0}, 4.0}, {{0, 1}, 16.0}});
}

DiscreteDistribution<double> two_point_example() {
    DiscreteDistribution<double> d;
    d.k = 2;
    d.values = {{4, 0}, {0, 16}};
    d.probs = {0.5, 0.5};
    return d;
}

}  // namespace

TEST_CASE("buyer_choice: strict preference and seller-favorable ties") {
    Mechanism<double> m = make_mechanism<double>(2, {{{1, 1}, 1.0}});
    auto c = buyer_choice(m, Vec<double>{1, 1});
    CHECK(m.menu[static_cast<std::size_t>(c.entry)].price == 1.0);
    CHECK(c.utility == 1.0);
    CHECK_FALSE(c.tie);

    // utilities tie at 0: the priced entry wins and the tie is flagged
    Mechanism<double> m2 = make_mechanism<double>(2, {{{1, 0}, 1.0}});
    auto c2 = buyer_choice(m2, Vec<double>{1, 0});
    CHECK(m2.menu[static_cast<std::size_t>(c2.entry)].price == 1.0);
    CHECK(c2.utility == 0.0);
    CHECK(c2.tie);
}

TEST_CASE("buyer_choice: utility never negative thanks to the zero option") {
    SeedStream s(8, "ir");
    for (int iter = 0; iter < 200; ++iter) {
        int k = s.uniform_int(1, 3);
        auto m = random_mechanism(s, k, s.uniform_int(1, 6));
        Vec<double> v(static_cast<std::size_t>(k));
        for (int d = 0; d < k; ++d) v[static_cast<std::size_t>(d)] = s.dyadic(0, 64, 3);
        CHECK(buyer_choice(m, v).utility >= 0.0);
    }
}

TEST_CASE("revenue: hand-computed example and footnote bound") {
    auto rep = revenue(two_point_example(), two_entry_example());
    CHECK(rep.rev == 10.0);
    CHECK(rep.brev == 8.0);
    CHECK(rep.brev_price == 16.0);
    // (4,0) pays 4 on a tie with the zero option
    CHECK(rep.outcomes[0].payment == 4.0);
    CHECK(rep.outcomes[0].tie);
    CHECK(rep.outcomes[1].payment == 16.0);
}

TEST_CASE("brev: single point, two-candidate enumeration, zero support") {
    DiscreteDistribution<Rational> d1;
    d1.k = 2;
    d1.values = {{Rational(1), Rational(1)}};
    d1.probs = {Rational(1)};
    auto [p1, v1] = brev(d1);
    CHECK(p1 == Rational(2));
    CHECK(v1 == Rational(2));

    DiscreteDistribution<Rational> d2;
    d2.k = 1;
    d2.values = {{Rational(1)}, {Rational(4)}};
    d2.probs = {rat_from_long(1, 2), rat_from_long(1, 2)};
    auto [p2, v2] = brev(d2);
    CHECK(p2 == Rational(4));
    CHECK(v2 == Rational(2));

    DiscreteDistribution<Rational> dz;
    dz.k = 2;
    dz.values = {{Rational(0), Rational(0)}};
    dz.probs = {Rational(1)};
    auto [pz, vz] = brev(dz);
    CHECK(pz == Rational(0));
    CHECK(vz == Rational(0));
}

TEST_CASE("arev: parallel accounting") {
    // fully aligned mechanism: arev = rev
    DiscreteDistribution<double> d = two_point_example();
    Mechanism<double> aligned = make_mechanism<double>(2, {{{1, 0}, 4.0}, {{0, 1}, 16.0}});
    auto rep = revenue(d, aligned);
    CHECK(rep.arev == rep.rev);

    // (4,4) buying ((1,0), p) is not parallel and contributes nothing
    DiscreteDistribution<double> d44;
    d44.k = 2;
    d44.values = {{4, 4}};
    d44.probs = {1.0};
    Mechanism<double> m = make_mechanism<double>(2, {{{1, 0}, 1.0}});
    auto rep44 = revenue(d44, m);
    CHECK(rep44.rev == 1.0);
    CHECK(rep44.arev == 0.0);

    SeedStream s(19, "arev-le-rev");
    for (int iter = 0; iter < 200; ++iter) {
        int k = s.uniform_int(1, 3);
        auto dd = random_distribution(s, k, s.uniform_int(1, 5));
        auto mm = random_mechanism(s, k, s.uniform_int(1, 5));
        auto r = revenue(dd, mm);
        CHECK(r.arev <= r.rev);
    }
}

TEST_CASE("verify_ic_ir: clean on recomputed choices, violation equals the injected eps") {
    auto d = two_point_example();
    auto m = two_entry_example();
    CHECK(verify_ic_ir(d, m).clean());

    // intended assignment against a perturbed menu: bump the chosen entry's
    // price by eps; the recorded choice now loses exactly eps to a rival
    auto intended = std::vector<int>{buyer_choice(m, d.values[0]).entry, buyer_choice(m, d.values[1]).entry};
    Mechanism<double> broken = m;
    broken.menu[static_cast<std::size_t>(intended[1])].price += 0.125;
    auto rep = verify_ic_ir(d, broken, &intended);
    CHECK(rep.worst_margin == doctest::Approx(0.125).epsilon(1e-12));
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].support_index == 1);
}

TEST_CASE("c_expensive: filtering, zero option, revenue loss <= c") {
    auto m = make_mechanism<double>(2, {{{0.5, 0.5}, 0.5}, {{1, 1}, 4.0}});
    auto m1 = c_expensive(m, 1.0);
    CHECK(m1.menu.size() == 2);  // zero option + the price-4 entry
    CHECK(is_c_expensive(m1, 1.0));

    auto m0 = c_expensive(m, 0.0);
    CHECK(m0.menu.size() == m.menu.size());

    SeedStream s(29, "claim-price");
    for (int iter = 0; iter < 300; ++iter) {
        int k = s.uniform_int(1, 3);
        auto dd = to_rational(random_distribution(s, k, s.uniform_int(1, 5)));
        auto mm = to_rational(random_mechanism(s, k, s.uniform_int(1, 6)));
        Rational c = rat_from_long(s.uniform_int(0, 16), 4);
        auto filtered = c_expensive(mm, c);
        CHECK(revenue(dd, filtered).rev >= revenue(dd, mm).rev - c);
    }
}

TEST_CASE("parity_split: bucket arithmetic") {
    auto m1 = make_mechanism<double>(2, {{{1, 0}, 4.0}, {{0, 1}, 16.0}});
    auto [odd1, even1] = parity_split(m1, 4.0);
    CHECK(odd1.menu.size() == 1);   // zero option only
    CHECK(even1.menu.size() == 3);  // i = 0 and i = 2 are both even

    auto m2 = make_mechanism<double>(2, {{{1, 0}, 4.0}, {{0, 1}, 8.0}});
    auto [odd2, even2] = parity_split(m2, 4.0);
    CHECK(odd2.menu.size() == 2);   // price 8: i = 1
    CHECK(even2.menu.size() == 2);  // price 4: i = 0

    CHECK_THROWS(parity_split(m1, 0.0));
    CHECK_THROWS(parity_split(make_mechanism<double>(2, {{{1, 0}, 0.5}}), 1.0));
}

TEST_CASE("parity_split: exact power-of-two boundaries land in the upper band") {
    auto m = make_mechanism<Rational>(1, {{{Rational(1)}, Rational(2)}});
    auto [odd, even] = parity_split(m, Rational(1));
    CHECK(odd.menu.size() == 2);  // 2/1 = 2^1 exactly: odd band
    CHECK(even.menu.size() == 1);
}

TEST_CASE("parity_split: revenue superadditivity on random instances") {
    SeedStream s(37, "claim-buckets");
    for (int iter = 0; iter < 300; ++iter) {
        int k = s.uniform_int(1, 3);
        auto dd = to_rational(random_distribution(s, k, s.uniform_int(1, 5)));
        auto mm = to_rational(random_mechanism(s, k, s.uniform_int(1, 6)));
        Rational c = rat_from_long(s.uniform_int(1, 8), 8);
        auto filtered = c_expensive(mm, c);
        auto [modd, meven] = parity_split(filtered, c);
        CHECK(revenue(dd, modd).rev + revenue(dd, meven).rev >= revenue(dd, filtered).rev);
    }
}

TEST_CASE("menu-complexity bound: rev <= |menu| * brev") {
    SeedStream s(43, "menu-bound");
    for (int iter = 0; iter < 400; ++iter) {
        int k = s.uniform_int(1, 3);
        auto dd = to_rational(random_distribution(s, k, s.uniform_int(1, 6)));
        auto mm = to_rational(random_mechanism(s, k, s.uniform_int(1, 7)));
        auto rep = revenue(dd, mm);
        CHECK(rep.rev <= Rational(static_cast<long>(mm.menu.size())) * rep.brev);
    }
}

TEST_CASE("buyer_choice determinism across repeated evaluation") {
    SeedStream s(47, "determinism");
    auto dd = random_distribution(s, 2, 4);
    auto mm = random_mechanism(s, 2, 5);
    for (std::size_t i = 0; i < dd.size(); ++i) {
        auto first = buyer_choice(mm, dd.values[i]);
        for (int r = 0; r < 5; ++r) {
            auto again = buyer_choice(mm, dd.values[i]);
            CHECK(again.entry == first.entry);
            CHECK(again.utility == first.utility);
        }
    }
}

TEST_CASE("mechanism validation") {
    Mechanism<double> m;
    m.k = 2;
    m.menu = {{{0, 0}, 0.0}, {{0.5, 0.5}, 1.0}, {{0.5, 0.5}, 1.0}};
    CHECK_THROWS(m.validate());  // duplicate entries
    Mechanism<double> m2;
    m2.k = 2;
    m2.menu = {{{0.5, 0.5}, 1.0}};
    CHECK_THROWS(m2.validate());  // missing zero pair
    // negative prices are allowed by the model
    auto m3 = make_mechanism<double>(1, {{{1.0}, -2.0}});
    m3.validate();
    DiscreteDistribution<double> d;
    d.k = 1;
    d.values = {{0.0}};
    d.probs = {1.0};
    auto c = buyer_choice(m3, d.values[0]);
    CHECK(m3.menu[static_cast<std::size_t>(c.entry)].price == -2.0);  // negative price beats the zero option
}

TEST_CASE("distribution validation") {
    DiscreteDistribution<double> d;
    d.k = 2;
    d.values = {{1, 0}, {1, 0}};
    d.probs = {0.5, 0.5};
    CHECK_THROWS(d.validate());  // duplicate support
    DiscreteDistribution<double> d2;
    d2.k = 2;
    d2.values = {{1, 0}};
    d2.probs = {0.75};
    CHECK_THROWS(d2.validate());  // probabilities short of 1
}
