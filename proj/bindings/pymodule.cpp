#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "menugap/acceptance.hpp"
#include "menugap/alpha.hpp"
#include "menugap/constructions.hpp"
#include "menugap/gapopt.hpp"
#include "menugap/generators.hpp"
#include "menugap/transforms.hpp"

namespace py = pybind11;
using namespace menugap;

namespace {

using Points = std::vector<std::vector<double>>;
using Menu = std::vector<std::pair<std::vector<double>, double>>;
using Support = std::vector<std::pair<std::vector<double>, double>>;

PointSeq<double> make_points(int k, const Points& pts, bool leading_zero = false) {
    PointSeq<double> x;
    x.k = k;
    x.points = pts;
    x.leading_zero = leading_zero;
    x.validate();
    return x;
}

AllocSeq<double> make_allocs(int k, const Points& rows) {
    AllocSeq<double> q;
    q.k = k;
    q.allocations = rows;
    q.validate();
    return q;
}

ScalarSeq<double> make_scalars(const std::vector<double>& c) {
    ScalarSeq<double> s;
    s.scalars = c;
    return s;
}

auction::DiscreteDistribution<double> make_dist(int k, const Support& rows) {
    auction::DiscreteDistribution<double> d;
    d.k = k;
    for (const auto& [v, p] : rows) {
        d.values.push_back(v);
        d.probs.push_back(p);
    }
    d.validate();
    return d;
}

auction::Mechanism<double> make_mech(int k, const Menu& rows) {
    std::vector<auction::MenuEntry<double>> entries;
    for (const auto& [q, p] : rows) entries.push_back({q, p});
    return auction::make_mechanism(k, entries);
}

Menu menu_out(const auction::Mechanism<double>& m) {
    Menu out;
    for (const auto& e : m.menu) out.emplace_back(e.q, e.price);
    return out;
}

py::dict report_out(const GapReport<double>& rep) {
    py::dict d;
    d["terms"] = rep.terms;
    d["clipped"] = rep.clipped;
    d["normalized"] = rep.normalized;
    d["cumulative"] = rep.cumulative;
    d["witness"] = rep.witness;
    d["total"] = rep.total;
    return d;
}

py::dict cert_out(const transform::Certificate<double>& cert) {
    py::dict d;
    d["gap_total"] = cert.gap_total;
    d["rev"] = cert.rev;
    d["brev"] = cert.brev;
    if (cert.arev) d["arev"] = *cert.arev;
    d["ratio"] = cert.ratio;
    d["claimed_bound"] = cert.claimed_bound;
    d["pass"] = cert.pass;
    d["vacuous"] = cert.vacuous;
    d["provenance"] = cert.provenance;
    d["per_index_payment_bound"] = cert.per_index_payment_bound;
    d["ell1_bound"] = cert.ell1_bound;
    d["intermediate_factor"] = cert.intermediate_factor;
    return d;
}

}  // namespace

PYBIND11_MODULE(_menugap, m) {
    m.doc() = "gap functionals, layered constructions, and auction transforms (float backend)";

    // gap functionals
    m.def(
        "menu_gap_terms",
        [](int k, const Points& x, const Points& q) { return report_out(menu_gap_terms(make_points(k, x), make_allocs(k, q))); },
        py::arg("k"), py::arg("points"), py::arg("allocations"));
    m.def(
        "sup_gap",
        [](int k, const Points& x) { return report_out(sup_gap(make_points(k, x, true))); },
        py::arg("k"), py::arg("points"), "points[0] must be the zero sentinel");
    m.def(
        "align_gap_terms",
        [](int k, const Points& x, const std::vector<double>& c) {
            return report_out(align_gap_terms(make_points(k, x), make_scalars(c)));
        },
        py::arg("k"), py::arg("points"), py::arg("scalars"));
    m.def(
        "align_to_menu",
        [](int k, const Points& x, const std::vector<double>& c) {
            return align_to_menu(make_points(k, x), make_scalars(c)).allocations;
        },
        py::arg("k"), py::arg("points"), py::arg("scalars"));

    // construction
    m.def("alpha_enclosure", [](double tol) {
        Interval iv = alpha_enclosure(tol);
        return std::make_pair(iv.lo, iv.hi);
    });
    m.def("build_x_sequence", [](int layers) { return layers::build_x_sequence(layers).points; });
    m.def("build_q_sequence", [](int max_layer) {
        return layers::build_q_sequence(max_layer, alpha_enclosure(1e-6)).allocations;
    });
    m.def("construction_gap_report", [](int max_layer) {
        auto c = layers::build_construction(max_layer, alpha_enclosure(1e-6));
        return report_out(layers::fast_gap_terms<double>(c));
    });
    m.def("gap_lower_formula",
          [](int ell, long j) { return layers::gap_lower_formula(ell, j, alpha_enclosure(1e-6)); });
    m.def("layer_gap_lower_bound",
          [](int ell) { return layers::layer_gap_lower_bound(ell, alpha_enclosure(1e-6)); });
    m.def(
        "lagrel_closed_form",
        [](const Points& x, bool include_terminal) {
            return layers::lagrel_closed_form(make_points(2, x), include_terminal);
        },
        py::arg("points"), py::arg("include_terminal") = false);
    m.def("lagrel_tail_bound", &layers::lagrel_tail_bound);
    m.def("divergence_partial",
          [](int max_layer) { return layers::divergence_partial(max_layer, alpha_enclosure(1e-6)); });

    // optimization
    m.def(
        "menu_gap_lp",
        [](int k, const Points& x, std::size_t cap) {
            auto sol = opt::menu_gap_lp(make_points(k, x), cap);
            return std::make_pair(sol.objective, sol.q_star.allocations);
        },
        py::arg("k"), py::arg("points"), py::arg("cap") = 60);
    m.def(
        "align_gap_search",
        [](int k, const Points& x, int restarts, std::uint64_t seed) {
            auto r = opt::align_gap_search(make_points(k, x), restarts, seed);
            return std::make_pair(r.value, r.scalars.scalars);
        },
        py::arg("k"), py::arg("points"), py::arg("restarts") = 16, py::arg("seed") = 0);
    m.def(
        "align_gap_bruteforce",
        [](int k, const Points& x, int resolution) {
            auto r = opt::align_gap_bruteforce(make_points(k, x), resolution);
            return std::make_pair(r.value, r.scalars.scalars);
        },
        py::arg("k"), py::arg("points"), py::arg("resolution"));
    m.def("lagrel_chain", [](const Points& x) {
        auto rep = opt::lagrel_chain(make_points(2, x));
        py::dict d;
        d["aligngap_prime"] = rep.aligngap_prime;
        d["lagrel1"] = rep.lagrel1;
        d["lagrel2"] = rep.lagrel2;
        d["lagrel"] = rep.lagrel;
        d["chain_valid"] = rep.chain_valid;
        return d;
    });
    m.def(
        "optimal_mechanism_lp",
        [](int k, const Support& support, std::size_t cap) {
            auto sol = opt::optimal_mechanism_lp(make_dist(k, support), cap);
            return std::make_pair(sol.revenue, menu_out(sol.mech));
        },
        py::arg("k"), py::arg("support"), py::arg("cap") = 100);

    // auction semantics
    m.def(
        "buyer_choice",
        [](int k, const Menu& menu, const std::vector<double>& v) {
            auto c = auction::buyer_choice(make_mech(k, menu), v);
            return py::make_tuple(c.entry, c.utility, c.tie);
        },
        py::arg("k"), py::arg("menu"), py::arg("v"));
    m.def(
        "revenue",
        [](int k, const Support& support, const Menu& menu) {
            auto rep = auction::revenue(make_dist(k, support), make_mech(k, menu));
            py::dict d;
            d["rev"] = rep.rev;
            d["arev"] = rep.arev;
            d["brev"] = rep.brev;
            d["brev_price"] = rep.brev_price;
            return d;
        },
        py::arg("k"), py::arg("support"), py::arg("menu"));
    m.def(
        "brev",
        [](int k, const Support& support) { return auction::brev(make_dist(k, support)); },
        py::arg("k"), py::arg("support"));
    m.def(
        "arev",
        [](int k, const Support& support, const Menu& menu) {
            return auction::arev(make_dist(k, support), make_mech(k, menu));
        },
        py::arg("k"), py::arg("support"), py::arg("menu"));
    m.def(
        "verify_ic_ir",
        [](int k, const Support& support, const Menu& menu) {
            auto rep = auction::verify_ic_ir(make_dist(k, support), make_mech(k, menu));
            return std::make_pair(rep.clean(), rep.worst_margin);
        },
        py::arg("k"), py::arg("support"), py::arg("menu"));
    m.def(
        "c_expensive",
        [](int k, const Menu& menu, double c) { return menu_out(auction::c_expensive(make_mech(k, menu), c)); },
        py::arg("k"), py::arg("menu"), py::arg("c"));
    m.def(
        "parity_split",
        [](int k, const Menu& menu, double c) {
            auto [odd, even] = auction::parity_split(make_mech(k, menu), c);
            return std::make_pair(menu_out(odd), menu_out(even));
        },
        py::arg("k"), py::arg("menu"), py::arg("c"));

    // transforms
    m.def(
        "hn_construct",
        [](int k, const Points& x, const Points& q, double base) {
            transform::HNParams<double> params;
            params.base = base;
            params.max_index = static_cast<int>(x.size());
            auto hn = transform::hn_construct(make_points(k, x), make_allocs(k, q), params);
            py::dict d;
            Support support;
            for (std::size_t i = 0; i < hn.dist.size(); ++i)
                support.emplace_back(hn.dist.values[i], hn.dist.probs[i]);
            d["support"] = support;
            d["menu"] = menu_out(hn.mech);
            d["ic_clean"] = hn.ic.clean();
            return d;
        },
        py::arg("k"), py::arg("points"), py::arg("allocations"), py::arg("base"));
    m.def(
        "representative_sequence",
        [](int k, const Support& support, const Menu& menu, double c) {
            transform::ExtractionConfig<double> cfg;
            cfg.c = c;
            auto ext = transform::representative_sequence(make_dist(k, support), make_mech(k, menu), cfg);
            return std::make_pair(ext.x.points, ext.q.allocations);
        },
        py::arg("k"), py::arg("support"), py::arg("menu"), py::arg("c"));
    m.def(
        "aligned_sequence",
        [](int k, const Support& support, const Menu& menu, double c) {
            transform::ExtractionConfig<double> cfg;
            cfg.c = c;
            auto ext = transform::aligned_sequence(make_dist(k, support), make_mech(k, menu), cfg);
            return std::make_pair(ext.x.points, ext.scalars.scalars);
        },
        py::arg("k"), py::arg("support"), py::arg("menu"), py::arg("c"));
    m.def(
        "theorem_main_pipeline",
        [](int k, const Support& support) { return cert_out(transform::theorem_main_pipeline(make_dist(k, support))); },
        py::arg("k"), py::arg("support"));
    m.def(
        "theorem_ext_pipeline",
        [](int k, const Support& support, const Menu& menu) {
            return cert_out(transform::theorem_ext_pipeline(make_dist(k, support), make_mech(k, menu)));
        },
        py::arg("k"), py::arg("support"), py::arg("menu"));

    // acceptance checklist
    m.def(
        "run_acceptance",
        [](std::uint64_t seed, int layers, bool quick, const std::vector<int>& which) {
            acceptance::Options opts;
            opts.seed = seed;
            opts.layers = layers;
            opts.quick = quick;
            py::list out;
            for (const auto& r : acceptance::run(opts, which)) {
                py::dict d;
                d["id"] = r.id;
                d["name"] = r.name;
                d["pass"] = r.pass;
                d["detail"] = r.detail;
                d["seconds"] = r.seconds;
                out.append(d);
            }
            return out;
        },
        py::arg("seed") = 2026, py::arg("layers") = 40, py::arg("quick") = false,
        py::arg("which") = std::vector<int>{});
}
