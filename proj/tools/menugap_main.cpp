#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <numbers>

#include "menugap/acceptance.hpp"
#include "menugap/alpha.hpp"
#include "menugap/constructions.hpp"
#include "menugap/gapopt.hpp"
#include "menugap/generators.hpp"
#include "menugap/io.hpp"
#include "menugap/transforms.hpp"

using namespace menugap;
namespace mio = menugap::io;

namespace {

struct GlobalConfig {
    std::string backend = "float";
    double tolerance = 1e-9;
    std::uint64_t seed = 2026;
    std::string manifest_path;
};

mio::json g_inputs = mio::json::object();

mio::json load_json(const std::string& path) {
    std::string bytes = mio::read_file(path);
    g_inputs[path] = mio::fnv1a_hex(bytes);
    try {
        return mio::json::parse(bytes);
    } catch (const std::exception& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

void emit(const GlobalConfig& cfg, const std::string& subcommand, const mio::json& result, double wall) {
    std::cout << result.dump(2) << "\n";
    if (!cfg.manifest_path.empty()) {
        mio::Manifest man;
        man.subcommand = subcommand;
        man.config = {{"backend", cfg.backend}, {"tolerance", cfg.tolerance}, {"seed", cfg.seed}};
        man.input_hashes = g_inputs;
        man.result_summary = result;
        man.wall_time_s = wall;
        mio::atomic_write_file(cfg.manifest_path, man.to_json().dump(2) + "\n");
    }
}

template <class F>
int with_backend(const std::string& backend, F&& f) {
    if (backend == "rational") return f.template operator()<Rational>();
    if (backend == "float") return f.template operator()<double>();
    throw std::invalid_argument("unknown backend '" + backend + "' (use float or rational)");
}

mio::json gap_report_summary(const auto& rep) {
    return mio::json{{"total", mio::scalar_to_json(rep.total)}, {"terms", rep.terms.size()}};
}

int cmd_build_sequence(const GlobalConfig& cfg, int layers, const std::string& out, const std::string& q_out) {
    mio::Stopwatch watch;
    Interval alpha = alpha_enclosure(1e-6);
    auto c = layers::build_construction(layers, alpha);
    if (!out.empty()) mio::atomic_write_file(out, mio::to_json(c.x).dump() + "\n");
    if (!q_out.empty()) mio::atomic_write_file(q_out, mio::to_json(c.q).dump() + "\n");
    emit(cfg, "build-sequence",
         mio::json{{"layers", layers},
                   {"points", c.x.points.size()},
                   {"alpha", {alpha.lo, alpha.hi}},
                   {"x", out},
                   {"q", q_out}},
         watch.seconds());
    return 0;
}

int cmd_bounds(const GlobalConfig& cfg, int max_layer, const std::string& csv_path) {
    mio::Stopwatch watch;
    Interval alpha = alpha_enclosure(1e-6);
    auto c = layers::build_construction(max_layer, alpha);
    auto rep = layers::fast_gap_terms<double>(c);

    std::ostringstream csv;
    csv << "ell,n_ell,theta_ell,delta_ell,lagrel_term,gap_sum,gap_lower,divergence_cum\n";
    bool all_below_6 = true;
    double closed_cum = 0.0;
    for (const auto& s : c.specs) {
        double gap_sum = 0.0;
        for (std::size_t i = 0; i < rep.terms.size(); ++i)
            if (c.layer_of[i].first == s.ell) gap_sum += rep.terms[i];
        double lagrel_term =
            std::numbers::sqrt2 * static_cast<double>(s.n - 1) * (1.0 - std::cos(s.theta));
        closed_cum += lagrel_term;
        double gap_lower =
            (s.counterclockwise && s.ell > 2) ? layers::layer_gap_lower_bound(s.ell, alpha) : 0.0;
        double div_cum = s.ell >= 4 ? layers::divergence_partial(s.ell, alpha) : 0.0;
        csv << s.ell << ',' << s.n << ',' << mio::format_double(s.theta) << ','
            << mio::format_double(c.params.delta[static_cast<std::size_t>(s.ell)]) << ','
            << mio::format_double(lagrel_term) << ',' << mio::format_double(gap_sum) << ','
            << mio::format_double(gap_lower) << ',' << mio::format_double(div_cum) << '\n';
        if (closed_cum + std::numbers::sqrt2 + layers::lagrel_tail_bound(s.ell + 1) > 6.0) all_below_6 = false;
    }
    if (!csv_path.empty()) mio::atomic_write_file(csv_path, csv.str());

    emit(cfg, "bounds",
         mio::json{{"layers", max_layer},
                   {"csv", csv_path},
                   {"menugap_cumulative", rep.total},
                   {"lagrel_prefix_plus_tail_below_6", all_below_6}},
         watch.seconds());
    return all_below_6 ? 0 : 2;
}

int cmd_menugap(const GlobalConfig& cfg, const std::string& x_path, bool use_lp, bool use_sup,
                const std::string& q_path, const std::string& csv_path, std::size_t cap) {
    mio::Stopwatch watch;
    mio::json jx = load_json(x_path);
    return with_backend(cfg.backend, [&]<class S>() {
        auto x = mio::point_seq_from_json<S>(jx, x_path);
        mio::json result;
        if (use_lp) {
            PointSeq<S> body = x;
            if (x.leading_zero) {
                body.points.erase(body.points.begin());
                body.leading_zero = false;
            }
            auto sol = opt::menu_gap_lp(body, cap, cfg.tolerance);
            result["objective"] = mio::scalar_to_json(sol.objective);
            result["witness"] = mio::to_json(sol.q_star);
        } else if (use_sup) {
            auto rep = sup_gap(x);
            if (!csv_path.empty()) mio::atomic_write_file(csv_path, mio::gap_report_csv(rep));
            result = gap_report_summary(rep);
        } else {
            if (q_path.empty()) throw std::invalid_argument("menugap: pass --lp, --sup, or --q FILE");
            auto q = mio::alloc_seq_from_json<S>(load_json(q_path), q_path);
            auto rep = menu_gap_terms(x, q);
            if (!csv_path.empty()) mio::atomic_write_file(csv_path, mio::gap_report_csv(rep));
            result = gap_report_summary(rep);
        }
        emit(cfg, "menugap", result, watch.seconds());
        return 0;
    });
}

int cmd_aligngap(const GlobalConfig& cfg, const std::string& x_path, bool search, int brute_res, bool lagrel,
                 const std::string& scalars_path, int restarts, const std::string& csv_path) {
    mio::Stopwatch watch;
    mio::json jx = load_json(x_path);
    return with_backend(cfg.backend, [&]<class S>() {
        auto x = mio::point_seq_from_json<S>(jx, x_path);
        mio::json result;
        if (lagrel) {
            PointSeq<double> xd;
            xd.k = x.k;
            for (const auto& p : x.points) xd.points.push_back(vec_to_double(p));
            auto rep = opt::lagrel_chain(xd, cfg.tolerance);
            result = {{"aligngap_prime", rep.aligngap_prime},
                      {"lagrel1", rep.lagrel1},
                      {"lagrel2", rep.lagrel2},
                      {"objective", rep.lagrel},
                      {"chain_valid", rep.chain_valid}};
        } else if (search || brute_res > 0) {
            if constexpr (ScalarOps<S>::exact) {
                auto res = search ? opt::align_gap_search_certified(x, restarts, cfg.seed)
                                  : opt::align_gap_bruteforce_certified(x, brute_res);
                result["objective"] = mio::scalar_to_json(res.value);
                result["witness"] = mio::to_json(res.scalars);
            } else {
                auto res = search ? opt::align_gap_search(x, restarts, cfg.seed)
                                  : opt::align_gap_bruteforce(x, brute_res);
                result["objective"] = res.value;
                result["witness"] = mio::to_json(res.scalars);
            }
        } else {
            if (scalars_path.empty())
                throw std::invalid_argument("aligngap: pass --search, --bruteforce R, --lagrel, or --scalars FILE");
            auto c = mio::scalar_seq_from_json<S>(load_json(scalars_path), scalars_path);
            auto rep = align_gap_terms(x, c);
            if (!csv_path.empty()) mio::atomic_write_file(csv_path, mio::gap_report_csv(rep));
            result = gap_report_summary(rep);
        }
        emit(cfg, "aligngap", result, watch.seconds());
        return 0;
    });
}

int cmd_optmech(const GlobalConfig& cfg, const std::string& d_path, const std::string& out, std::size_t cap) {
    mio::Stopwatch watch;
    mio::json jd = load_json(d_path);
    return with_backend(cfg.backend, [&]<class S>() {
        auto d = mio::distribution_from_json<S>(jd, d_path);
        auto sol = opt::optimal_mechanism_lp(d, cap, cfg.tolerance);
        if (!out.empty()) mio::atomic_write_file(out, mio::to_json(sol.mech).dump() + "\n");
        emit(cfg, "optmech",
             mio::json{{"objective", mio::scalar_to_json(sol.revenue)},
                       {"menu_size", sol.mech.menu.size()},
                       {"out", out}},
             watch.seconds());
        return 0;
    });
}

int cmd_revenue(const GlobalConfig& cfg, const std::string& name, const std::string& d_path,
                const std::string& m_path) {
    mio::Stopwatch watch;
    mio::json jd = load_json(d_path);
    mio::json jm = m_path.empty() ? mio::json() : load_json(m_path);
    return with_backend(cfg.backend, [&]<class S>() {
        auto d = mio::distribution_from_json<S>(jd, d_path);
        mio::json result;
        if (name == "brev") {
            auto [price, value] = auction::brev(d);
            result = {{"objective", mio::scalar_to_json(value)}, {"price", mio::scalar_to_json(price)}};
        } else {
            auto m = mio::mechanism_from_json<S>(jm, m_path);
            auto rep = auction::revenue(d, m, cfg.tolerance);
            if (name == "rev") result["objective"] = mio::scalar_to_json(rep.rev);
            else result["objective"] = mio::scalar_to_json(rep.arev);
            result["rev"] = mio::scalar_to_json(rep.rev);
            result["arev"] = mio::scalar_to_json(rep.arev);
            result["brev"] = mio::scalar_to_json(rep.brev);
        }
        emit(cfg, name, result, watch.seconds());
        return 0;
    });
}

int cmd_verify(const GlobalConfig& cfg, const std::string& d_path, const std::string& m_path) {
    mio::Stopwatch watch;
    mio::json jd = load_json(d_path);
    mio::json jm = load_json(m_path);
    return with_backend(cfg.backend, [&]<class S>() {
        auto d = mio::distribution_from_json<S>(jd, d_path);
        auto m = mio::mechanism_from_json<S>(jm, m_path);
        auto rep = auction::verify_ic_ir(d, m, nullptr, cfg.tolerance);
        mio::json violations = mio::json::array();
        for (const auto& v : rep.violations)
            violations.push_back({{"support_index", v.support_index}, {"margin", v.margin}, {"kind", v.kind}});
        emit(cfg, "verify",
             mio::json{{"clean", rep.clean()}, {"worst_margin", rep.worst_margin}, {"violations", violations}},
             watch.seconds());
        return rep.clean() ? 0 : 2;
    });
}

int cmd_hn_construct(const GlobalConfig& cfg, const std::string& x_path, const std::string& q_path, double base,
                     const std::string& out_dist, const std::string& out_mech) {
    mio::Stopwatch watch;
    mio::json jx = load_json(x_path);
    mio::json jq = load_json(q_path);
    return with_backend(cfg.backend, [&]<class S>() {
        auto x = mio::point_seq_from_json<S>(jx, x_path);
        auto q = mio::alloc_seq_from_json<S>(jq, q_path);
        transform::HNParams<S> params;
        params.base = scalar_from_double<S>(base);
        params.max_index = static_cast<int>(x.points.size());
        auto hn = transform::hn_construct(x, q, params);
        if (!out_dist.empty()) mio::atomic_write_file(out_dist, mio::to_json(hn.dist).dump() + "\n");
        if (!out_mech.empty()) mio::atomic_write_file(out_mech, mio::to_json(hn.mech).dump() + "\n");
        emit(cfg, "hn-construct",
             mio::json{{"support", hn.dist.size()},
                       {"menu_size", hn.mech.menu.size()},
                       {"ic_clean", hn.ic.clean()},
                       {"dist", out_dist},
                       {"mech", out_mech}},
             watch.seconds());
        return 0;
    });
}

int cmd_extract(const GlobalConfig& cfg, const std::string& d_path, const std::string& m_path, double c_value,
                bool aligned, const std::string& out_x, const std::string& out_q, const std::string& out_scalars) {
    mio::Stopwatch watch;
    mio::json jd = load_json(d_path);
    mio::json jm = load_json(m_path);
    return with_backend(cfg.backend, [&]<class S>() {
        auto d = mio::distribution_from_json<S>(jd, d_path);
        auto m = mio::mechanism_from_json<S>(jm, m_path);
        transform::ExtractionConfig<S> ecfg;
        ecfg.c = scalar_from_double<S>(c_value);
        auto ext = aligned ? transform::aligned_sequence(d, m, ecfg, cfg.tolerance)
                           : transform::representative_sequence(d, m, ecfg, cfg.tolerance);
        if (!out_x.empty()) mio::atomic_write_file(out_x, mio::to_json(ext.x).dump() + "\n");
        if (!out_q.empty()) mio::atomic_write_file(out_q, mio::to_json(ext.q).dump() + "\n");
        if (!out_scalars.empty()) mio::atomic_write_file(out_scalars, mio::to_json(ext.scalars).dump() + "\n");
        mio::json result{{"points", ext.x.points.size()}, {"oddly_priced", ext.oddly_priced}, {"x", out_x}};
        if (aligned) {
            if (!ext.x.points.empty())
                result["aligngap"] = mio::scalar_to_json(align_gap_terms(ext.x, ext.scalars).total);
            result["scalars"] = out_scalars;
        } else {
            if (!ext.x.points.empty())
                result["menugap"] = mio::scalar_to_json(menu_gap_terms(ext.x, ext.q).total);
            result["q"] = out_q;
        }
        emit(cfg, "extract", result, watch.seconds());
        return 0;
    });
}

template <class S>
mio::json certificate_json(const transform::Certificate<S>& cert) {
    mio::json j{{"gap_total", mio::scalar_to_json(cert.gap_total)},
                {"rev", mio::scalar_to_json(cert.rev)},
                {"brev", mio::scalar_to_json(cert.brev)},
                {"ratio", mio::scalar_to_json(cert.ratio)},
                {"claimed_bound", mio::scalar_to_json(cert.claimed_bound)},
                {"pass", cert.pass},
                {"vacuous", cert.vacuous},
                {"provenance", cert.provenance},
                {"per_index_payment_bound", cert.per_index_payment_bound},
                {"ell1_bound", cert.ell1_bound},
                {"intermediate_factor", cert.intermediate_factor},
                {"parity_rev_odd", mio::scalar_to_json(cert.parity_rev_odd)},
                {"parity_rev_even", mio::scalar_to_json(cert.parity_rev_even)}};
    if (cert.arev) j["arev"] = mio::scalar_to_json(*cert.arev);
    return j;
}

int cmd_certify(const GlobalConfig& cfg, const std::string& d_path, const std::string& ext_mech_path,
                const std::string& out) {
    mio::Stopwatch watch;
    mio::json jd = load_json(d_path);
    mio::json jm = ext_mech_path.empty() ? mio::json() : load_json(ext_mech_path);
    return with_backend(cfg.backend, [&]<class S>() {
        auto d = mio::distribution_from_json<S>(jd, d_path);
        mio::json result;
        bool pass;
        if (ext_mech_path.empty()) {
            auto cert = transform::theorem_main_pipeline(d, 100, cfg.tolerance);
            result = certificate_json(cert);
            pass = cert.pass;
        } else {
            auto m = mio::mechanism_from_json<S>(jm, ext_mech_path);
            auto cert = transform::theorem_ext_pipeline(d, m, cfg.tolerance);
            result = certificate_json(cert);
            pass = cert.pass;
        }
        if (!out.empty()) mio::atomic_write_file(out, result.dump(2) + "\n");
        emit(cfg, "certify", result, watch.seconds());
        return pass ? 0 : 2;
    });
}

int cmd_prop_hn(const GlobalConfig& cfg, const std::string& x_path, const std::string& q_path, double base,
                const std::string& candidates_dir) {
    mio::Stopwatch watch;
    auto x = mio::point_seq_from_json<double>(load_json(x_path), x_path);
    auto q = mio::alloc_seq_from_json<double>(load_json(q_path), q_path);

    std::vector<std::pair<std::string, auction::Mechanism<Rational>>> candidates;
    {
        auto xr = point_seq_from_double<Rational>(x);
        auto qr = alloc_seq_from_double<Rational>(q);
        transform::HNParams<Rational> params;
        params.base = rat_from_double(base);
        params.max_index = std::max<int>(1, static_cast<int>(x.points.size()));
        auto hn = transform::hn_construct(xr, qr, params);
        candidates = transform::bundle_price_candidates(hn.dist);
    }
    if (!candidates_dir.empty()) {
        for (const auto& entry : std::filesystem::directory_iterator(candidates_dir)) {
            if (entry.path().extension() != ".json") continue;
            candidates.emplace_back(
                entry.path().filename().string(),
                mio::mechanism_from_json<Rational>(load_json(entry.path().string()), entry.path().string()));
        }
    }
    SeedStream s(cfg.seed, "prop-hn-cli");
    for (int i = 0; i < 20; ++i)
        candidates.emplace_back("random" + std::to_string(i), to_rational(random_mechanism(s, x.k, 5)));

    auto rep = transform::prop_hn_check(x, q, base, candidates);
    mio::json entries = mio::json::array();
    for (const auto& e : rep.entries)
        entries.push_back({{"label", e.label}, {"arev", e.arev}, {"margin", e.margin}});
    emit(cfg, "prop-hn",
         mio::json{{"bound", rep.bound},
                   {"all_hold", rep.all_hold},
                   {"worst_margin", rep.worst_margin},
                   {"entries", entries}},
         watch.seconds());
    return rep.all_hold ? 0 : 2;
}

int cmd_reproduce(const GlobalConfig& cfg, bool paper_bounds, bool quick, int layers, const std::string& csv_path) {
    mio::Stopwatch watch;
    if (paper_bounds) return cmd_bounds(cfg, layers, csv_path.empty() ? "bounds.csv" : csv_path);

    acceptance::Options opts;
    opts.seed = cfg.seed;
    opts.layers = layers;
    opts.quick = quick;
    auto results = acceptance::run(opts);
    bool all = true;
    mio::json rows = mio::json::array();
    for (const auto& r : results) {
        std::cout << acceptance::format_result_line(r) << "\n";
        all = all && r.pass;
        rows.push_back(
            {{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"seconds", r.seconds}, {"detail", r.detail}});
    }
    if (!csv_path.empty()) {
        std::ostringstream csv;
        csv << "criterion,name,pass,seconds\n";
        for (const auto& r : results)
            csv << r.id << ',' << r.name << ',' << (r.pass ? "pass" : "fail") << ','
                << mio::format_double(r.seconds) << '\n';
        mio::atomic_write_file(csv_path, csv.str());
    }
    emit(cfg, "reproduce", mio::json{{"all_pass", all}, {"criteria", rows}}, watch.seconds());
    return all ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gap functionals, certificates, and auction transforms for layered sequences"};
    app.require_subcommand(1);

    GlobalConfig cfg;
    app.add_option("--backend", cfg.backend, "float or rational")->capture_default_str();
    app.add_option("--tolerance", cfg.tolerance, "relative tolerance, float backend only")->capture_default_str();
    app.add_option("--seed", cfg.seed, "seed for randomized searches")->capture_default_str();
    app.add_option("--manifest", cfg.manifest_path, "write a run manifest to this path");

    int layers = 6;
    std::string out_x, out_q;
    auto* sc_build = app.add_subcommand("build-sequence", "build the layered X and Q sequences");
    sc_build->add_option("--layers", layers, "last layer to build")->required();
    sc_build->add_option("--out", out_x, "output path for X");
    sc_build->add_option("--q-out", out_q, "output path for Q");

    int bounds_layers = 12;
    std::string bounds_csv;
    auto* sc_bounds = app.add_subcommand("bounds", "per-layer bound table");
    sc_bounds->add_option("--layers", bounds_layers)->required();
    sc_bounds->add_option("--csv", bounds_csv, "output CSV path");

    std::string mg_x, mg_q, mg_csv;
    bool mg_lp = false, mg_sup = false;
    std::size_t mg_cap = 60;
    auto* sc_mg = app.add_subcommand("menugap", "evaluate or optimize MenuGap");
    sc_mg->add_option("x", mg_x, "sequence JSON")->required();
    sc_mg->add_flag("--lp", mg_lp, "solve for the optimal Q");
    sc_mg->add_flag("--sup", mg_sup, "treat the file as a SupGap sequence (leading zero)");
    sc_mg->add_option("--q", mg_q, "allocation JSON to evaluate against");
    sc_mg->add_option("--csv", mg_csv, "write the gap report CSV here");
    sc_mg->add_option("--cap", mg_cap, "LP size cap");

    std::string ag_x, ag_scalars, ag_csv;
    bool ag_search = false, ag_lagrel = false;
    int ag_brute = 0, ag_restarts = 16;
    auto* sc_ag = app.add_subcommand("aligngap", "evaluate or bound AlignGap");
    sc_ag->add_option("x", ag_x, "sequence JSON")->required();
    sc_ag->add_flag("--search", ag_search, "coordinate-ascent lower bound");
    sc_ag->add_option("--bruteforce", ag_brute, "grid oracle at this resolution");
    sc_ag->add_flag("--lagrel", ag_lagrel, "relaxation chain upper bound (unit-l2 sequences)");
    sc_ag->add_option("--scalars", ag_scalars, "scalar JSON to evaluate against");
    sc_ag->add_option("--restarts", ag_restarts, "random restarts for --search");
    sc_ag->add_option("--csv", ag_csv, "write the gap report CSV here");

    std::string om_d, om_out;
    std::size_t om_cap = 100;
    auto* sc_om = app.add_subcommand("optmech", "revenue-optimal mechanism by LP");
    sc_om->add_option("d", om_d, "distribution JSON")->required();
    sc_om->add_option("--out", om_out, "output mechanism JSON");
    sc_om->add_option("--cap", om_cap, "support size cap");

    std::string rv_d, rv_m;
    auto* sc_rev = app.add_subcommand("rev", "expected revenue of a mechanism");
    sc_rev->add_option("d", rv_d)->required();
    sc_rev->add_option("m", rv_m)->required();
    std::string br_d;
    auto* sc_brev = app.add_subcommand("brev", "best grand-bundle posted price");
    sc_brev->add_option("d", br_d)->required();
    std::string ar_d, ar_m;
    auto* sc_arev = app.add_subcommand("arev", "aligned revenue of a mechanism");
    sc_arev->add_option("d", ar_d)->required();
    sc_arev->add_option("m", ar_m)->required();

    std::string vf_d, vf_m;
    auto* sc_verify = app.add_subcommand("verify", "check IC/IR of a mechanism on a distribution");
    sc_verify->add_option("d", vf_d)->required();
    sc_verify->add_option("m", vf_m)->required();

    std::string hn_x, hn_q, hn_out_d, hn_out_m;
    double hn_base = 10.0;
    auto* sc_hn = app.add_subcommand("hn-construct", "sequence pair -> (distribution, mechanism)");
    sc_hn->add_option("x", hn_x)->required();
    sc_hn->add_option("q", hn_q)->required();
    sc_hn->add_option("--base", hn_base, "scale base B")->required();
    sc_hn->add_option("--out-dist", hn_out_d);
    sc_hn->add_option("--out-mech", hn_out_m);

    std::string ex_d, ex_m, ex_out_x, ex_out_q, ex_out_c;
    double ex_c = 1.0;
    bool ex_aligned = false;
    auto* sc_ex = app.add_subcommand("extract", "representative or aligned sequence of a mechanism");
    sc_ex->add_option("d", ex_d)->required();
    sc_ex->add_option("m", ex_m)->required();
    sc_ex->add_option("--c", ex_c, "expensiveness threshold")->required();
    sc_ex->add_flag("--aligned", ex_aligned, "restrict to parallel buyers and emit scalars");
    sc_ex->add_option("--out-x", ex_out_x);
    sc_ex->add_option("--out-q", ex_out_q);
    sc_ex->add_option("--out-scalars", ex_out_c);

    std::string cf_d, cf_m, cf_out;
    auto* sc_cf = app.add_subcommand("certify", "run the factor-9 pipeline and emit a certificate");
    sc_cf->add_option("d", cf_d)->required();
    sc_cf->add_option("--ext", cf_m, "aligned pipeline for this mechanism instead");
    sc_cf->add_option("--out", cf_out, "write the certificate JSON here");

    std::string ph_x, ph_q, ph_dir;
    double ph_base = 10.0;
    auto* sc_ph = app.add_subcommand("prop-hn", "aligned-revenue bound falsification harness");
    sc_ph->add_option("x", ph_x)->required();
    sc_ph->add_option("q", ph_q)->required();
    sc_ph->add_option("--base", ph_base)->required();
    sc_ph->add_option("--candidates", ph_dir, "directory of candidate mechanism JSONs");

    bool rp_paper_bounds = false, rp_quick = false;
    int rp_layers = 40;
    std::string rp_csv;
    auto* sc_rp = app.add_subcommand("reproduce", "run the verification checklist");
    sc_rp->add_flag("--paper-bounds", rp_paper_bounds, "emit the per-layer bound table instead");
    sc_rp->add_flag("--quick", rp_quick, "reduced instance counts (< 60 s)");
    sc_rp->add_option("--layers", rp_layers);
    sc_rp->add_option("--csv", rp_csv);

    for (auto* sc : app.get_subcommands({})) sc->fallthrough();  // global flags may follow the subcommand

    try {
        app.parse(argc, argv);
        if (*sc_build) return cmd_build_sequence(cfg, layers, out_x, out_q);
        if (*sc_bounds) return cmd_bounds(cfg, bounds_layers, bounds_csv);
        if (*sc_mg) return cmd_menugap(cfg, mg_x, mg_lp, mg_sup, mg_q, mg_csv, mg_cap);
        if (*sc_ag) return cmd_aligngap(cfg, ag_x, ag_search, ag_brute, ag_lagrel, ag_scalars, ag_restarts, ag_csv);
        if (*sc_om) return cmd_optmech(cfg, om_d, om_out, om_cap);
        if (*sc_rev) return cmd_revenue(cfg, "rev", rv_d, rv_m);
        if (*sc_brev) return cmd_revenue(cfg, "brev", br_d, "");
        if (*sc_arev) return cmd_revenue(cfg, "arev", ar_d, ar_m);
        if (*sc_verify) return cmd_verify(cfg, vf_d, vf_m);
        if (*sc_hn) return cmd_hn_construct(cfg, hn_x, hn_q, hn_base, hn_out_d, hn_out_m);
        if (*sc_ex) return cmd_extract(cfg, ex_d, ex_m, ex_c, ex_aligned, ex_out_x, ex_out_q, ex_out_c);
        if (*sc_cf) return cmd_certify(cfg, cf_d, cf_m, cf_out);
        if (*sc_ph) return cmd_prop_hn(cfg, ph_x, ph_q, ph_base, ph_dir);
        if (*sc_rp) return cmd_reproduce(cfg, rp_paper_bounds, rp_quick, rp_layers, rp_csv);
        std::fprintf(stderr, "no subcommand selected\n");
        return 1;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
