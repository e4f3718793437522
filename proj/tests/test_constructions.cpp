#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "menugap/constructions.hpp"
#include "menugap/gapcore.hpp"

using namespace menugap;
using namespace menugap::layers;

namespace {
const Interval kAlpha = alpha_enclosure(1e-8);
}

TEST_CASE("alpha enclosure: footnote bounds and refinement") {
    Interval wide = alpha_enclosure(1.0);
    CHECK(wide.lo > 1.9);
    CHECK(wide.hi <= 3.0);
    CHECK(wide.width() <= 1.0);

    Interval tight = alpha_enclosure(1e-6);
    CHECK(tight.width() <= 1e-6);
    // cross-check: enclosures from different truncation depths must intersect
    // and nest around the same constant
    CHECK(tight.lo >= wide.lo);
    CHECK(tight.hi <= wide.hi);
    CHECK(tight.lo < 2.1097429);
    CHECK(tight.hi > 2.1097427);

    double prev_lo = 0.0;
    for (double tol : {1.0, 0.1, 0.01, 1e-4, 1e-6}) {
        Interval e = alpha_enclosure(tol);
        CHECK(e.lo >= prev_lo);
        prev_lo = e.lo;
    }
}

TEST_CASE("layer_spec: counts, angles, direction") {
    LayerSpec s2 = layer_spec(2);
    CHECK(s2.n == 3);
    CHECK(s2.theta == doctest::Approx(std::numbers::pi / 4).epsilon(1e-15));
    CHECK(s2.counterclockwise);

    LayerSpec s3 = layer_spec(3);
    CHECK(s3.n == 7);  // ceil(ln^2 3) = 2
    CHECK_FALSE(s3.counterclockwise);

    CHECK(layer_spec(4).n == 9);
    CHECK(layer_spec(5).n == 16);
    CHECK(layer_spec(6).n == 25);
    CHECK_THROWS(layer_spec(1));
}

TEST_CASE("build_x_sequence: layer 2 and 3 endpoints, unit norms") {
    auto x = build_x_sequence(3);
    REQUIRE(x.points.size() == 10);
    CHECK(x.points[0] == Vec<double>{1, 0});
    CHECK(x.points[1][0] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(x.points[1][1] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(x.points[2] == Vec<double>{0, 1});
    CHECK(x.points[3] == Vec<double>{0, 1});  // layer 3 starts clockwise at (0,1)
    CHECK(x.points[9] == Vec<double>{1, 0});  // and ends at (1,0)
    for (const auto& p : x.points) CHECK(std::fabs(l2_norm_sq(p) - 1.0) <= 1e-15);
}

TEST_CASE("build_q_sequence: coordinate ranges and layer-2 head") {
    auto c = build_construction(6, kAlpha);
    c.q.validate();

    double z2 = c.params.z[2], d2 = c.params.delta[2];
    CHECK(z2 == d2);
    CHECK(c.q.allocations[1][0] == z2);
    CHECK(c.q.allocations[1][1] == doctest::Approx(1.0 - d2).epsilon(1e-14));  // cot(pi/4) = 1

    // last two entries of each even layer carry second coordinate exactly 1
    std::size_t i = 0;
    for (const auto& s : c.specs) {
        if (s.counterclockwise) {
            CHECK(c.q.allocations[i + static_cast<std::size_t>(s.n) - 1][1] == 1.0);
            CHECK(c.q.allocations[i + static_cast<std::size_t>(s.n)][1] == 1.0);
        }
        i += static_cast<std::size_t>(s.n);
    }
}

TEST_CASE("q-sequence monotonicity: first coord by layer, second within even layers") {
    auto c = build_construction(9, kAlpha);
    std::size_t i = 0;
    double prev_first = 0.0;
    for (const auto& s : c.specs) {
        if (s.counterclockwise) {
            double first = c.q.allocations[i + 1][0];
            CHECK(first > prev_first);
            prev_first = first;
            for (long j = 1; j < s.n; ++j) {
                CHECK(c.q.allocations[i + static_cast<std::size_t>(j) + 1][1] >=
                      c.q.allocations[i + static_cast<std::size_t>(j)][1]);
            }
        }
        i += static_cast<std::size_t>(s.n);
    }
}

TEST_CASE("fast_gap_terms equals the O(N^2) evaluation exactly on rationals") {
    auto c = build_construction(6, kAlpha);
    auto fast = fast_gap_terms<Rational>(c);
    auto slow = menu_gap_terms(point_seq_from_double<Rational>(c.x), alloc_seq_from_double<Rational>(c.q));
    REQUIRE(fast.terms.size() == slow.terms.size());
    for (std::size_t i = 0; i < fast.terms.size(); ++i) {
        CHECK(fast.terms[i] == slow.terms[i]);
        CHECK(fast.normalized[i] == slow.normalized[i]);
    }
    CHECK(fast.total == slow.total);
}

TEST_CASE("odd-layer terms are exactly zero; witness self-consistency") {
    auto c = build_construction(7, kAlpha);
    auto rep = fast_gap_terms<Rational>(c);
    auto q = alloc_seq_from_double<Rational>(c.q);
    auto x = point_seq_from_double<Rational>(c.x);
    for (std::size_t i = 0; i < rep.terms.size(); ++i) {
        if (c.layer_of[i].first % 2 == 1) CHECK(rep.terms[i] == Rational(0));
        Rational direct = dot(q.allocations[i + 1], x.points[i]) -
                          dot(q.allocations[static_cast<std::size_t>(rep.witness[i])], x.points[i]);
        CHECK(rep.terms[i] == direct);
    }
}

TEST_CASE("even-layer gaps vs the per-index formula: holds up to j = n-2, fails only at the last point") {
    auto c = build_construction(10, kAlpha);
    auto rep = fast_gap_terms<Rational>(c);
    for (std::size_t i = 0; i < rep.terms.size(); ++i) {
        auto [ell, j] = c.layer_of[i];
        if (ell % 2 != 0 || ell <= 2) continue;
        LayerSpec s = layer_spec(ell);
        Rational bound = rat_from_double(gap_lower_formula(ell, j, kAlpha));
        if (j <= s.n - 2) {
            CHECK(rep.terms[i] >= bound);
        } else {
            // final point of each even layer: the two preceding allocations tie
            // at second coordinate 1, so the true gap is exactly zero and sits
            // below the formula value
            CHECK(rep.terms[i] == Rational(0));
            CHECK(bound > Rational(0));
        }
    }
}

TEST_CASE("gap_lower_formula endpoints") {
    LayerSpec s = layer_spec(4);
    double d4 = 1.0 / (kAlpha.hi * 4.0 * std::log(4.0) * std::log(4.0));
    CHECK(gap_lower_formula(4, 0, kAlpha) == doctest::Approx(d4).epsilon(1e-14));
    // j = n-1: denominator is sin(pi/2 + theta) = cos(theta)
    CHECK(gap_lower_formula(4, s.n - 1, kAlpha) ==
          doctest::Approx(d4 * std::sin(s.theta) / std::cos(s.theta)).epsilon(1e-13));
    CHECK_THROWS(gap_lower_formula(5, 0, kAlpha));
    CHECK_THROWS(gap_lower_formula(2, 0, kAlpha));
}

TEST_CASE("layer sums dominate layer_gap_lower_bound (even ell <= 14)") {
    auto c = build_construction(14, kAlpha);
    auto rep = fast_gap_terms<Rational>(c);
    for (const auto& s : c.specs) {
        if (!s.counterclockwise || s.ell <= 2) continue;
        Rational sum(0);
        for (std::size_t i = 0; i < rep.terms.size(); ++i)
            if (c.layer_of[i].first == s.ell) sum += rep.terms[i];
        CHECK(sum >= rat_from_double(layer_gap_lower_bound(s.ell, kAlpha)));
        // ratio of bound to actual stays in (0, 1]
        CHECK(rat_from_double(layer_gap_lower_bound(s.ell, kAlpha)) / sum <= Rational(1));
    }
    CHECK_THROWS(layer_gap_lower_bound(7, kAlpha));
}

TEST_CASE("lagrel_closed_form: frozen values and terminal flag") {
    auto x2 = build_x_sequence(2);
    CHECK(lagrel_closed_form(x2) == doctest::Approx(0.8284271247461901).epsilon(1e-14));
    CHECK(lagrel_closed_form(x2, true) ==
          doctest::Approx(0.8284271247461901 + std::sqrt(2.0)).epsilon(1e-14));

    // identical consecutive points contribute nothing
    PointSeq<double> dup;
    dup.k = 2;
    dup.points = {{1, 0}, {1, 0}};
    CHECK(lagrel_closed_form(dup) == 0.0);

    PointSeq<double> bad;
    bad.k = 2;
    bad.points = {{0.5, 0.5}};
    CHECK_THROWS(lagrel_closed_form(bad));
}

TEST_CASE("lagrel prefix + tail stays below 6 at every prefix") {
    for (int prefix = 2; prefix <= 12; ++prefix) {
        auto x = build_x_sequence(prefix);
        double v = lagrel_closed_form(x) + lagrel_tail_bound(prefix + 1);
        CHECK(v <= 6.0);
        CHECK(lagrel_closed_form(x, true) + lagrel_tail_bound(prefix + 1) <= 6.0);
    }
    CHECK(lagrel_tail_bound(3) <= lagrel_tail_bound(2));   // monotone decreasing
    CHECK(lagrel_tail_bound(2) <= 6.0);                    // from_layer=2 covers the whole series
}

TEST_CASE("divergence_partial: monotone, dominated by actual gaps, lnln growth") {
    CHECK(divergence_partial(10, kAlpha) < divergence_partial(12, kAlpha));

    auto c = build_construction(12, kAlpha);
    auto rep = fast_gap_terms<Rational>(c);
    Rational even_sum(0);
    for (std::size_t i = 0; i < rep.terms.size(); ++i)
        if (c.layer_of[i].first % 2 == 0 && c.layer_of[i].first > 2) even_sum += rep.normalized[i];
    CHECK(even_sum >= rat_from_double(divergence_partial(12, kAlpha)));

    // growth check: value(L^2) - value(L) approaches ln2/(4 alpha) (the even-
    // only series halves the usual lnln increment); 20% tolerance at L = 50
    double inc = divergence_partial(2500, kAlpha) - divergence_partial(50, kAlpha);
    double expect = std::log(2.0) / (4.0 * kAlpha.hi);
    CHECK(std::fabs(inc - expect) <= 0.2 * expect);

    CHECK_THROWS(divergence_partial(3, kAlpha));
}

TEST_CASE("cumulative gap over the construction is nondecreasing") {
    auto c = build_construction(10, kAlpha);
    auto rep = fast_gap_terms<double>(c);
    for (std::size_t i = 1; i < rep.cumulative.size(); ++i) CHECK(rep.cumulative[i] >= rep.cumulative[i - 1]);
    for (const auto& t : rep.terms) CHECK(t >= 0.0);
}

TEST_CASE("fast_gap_terms refuses foreign inputs") {
    auto c = build_construction(4, kAlpha);
    Construction broken = c;
    broken.layer_of.pop_back();
    CHECK_THROWS(fast_gap_terms<double>(broken));
}

TEST_CASE("double fast path tracks the rational one within float tolerance") {
    auto c = build_construction(8, kAlpha);
    auto fd = fast_gap_terms<double>(c);
    auto fr = fast_gap_terms<Rational>(c);
    for (std::size_t i = 0; i < fd.terms.size(); ++i)
        CHECK(std::fabs(fd.terms[i] - rat_to_double(fr.terms[i])) <= 1e-14);
    CHECK(std::fabs(fd.total - rat_to_double(fr.total)) <= 1e-11);
}
