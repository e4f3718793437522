#pragma once

#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "menugap/auctions.hpp"
#include "menugap/sequences.hpp"

namespace menugap::io {

using nlohmann::json;

std::string read_file(const std::string& path);

/// Writes via a temp file and an atomic rename; no partial artifact survives
/// a failure.
void atomic_write_file(const std::string& path, const std::string& content);

std::string fnv1a_hex(const std::string& bytes);

/// Serialization of scalars: doubles as JSON numbers, rationals as
/// "num/den" strings. Readers accept either form on both backends, so
/// artifacts round-trip across backends.
template <class S>
json scalar_to_json(const S& v) {
    if constexpr (ScalarOps<S>::exact) return rat_to_string(v);
    else return v;
}

template <class S>
S scalar_from_json(const json& j, const std::string& where) {
    try {
        if (j.is_string()) {
            Rational r = rat_parse(j.get<std::string>());
            if constexpr (ScalarOps<S>::exact) return r;
            else return rat_to_double(r);
        }
        if (j.is_number()) return scalar_from_double<S>(j.get<double>());
    } catch (const std::exception& e) {
        throw std::invalid_argument(where + ": " + e.what());
    }
    throw std::invalid_argument(where + ": expected a number or rational string");
}

template <class S>
json vec_to_json(const Vec<S>& v) {
    json arr = json::array();
    for (const S& c : v) arr.push_back(scalar_to_json(c));
    return arr;
}

template <class S>
Vec<S> vec_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) throw std::invalid_argument(where + ": expected an array");
    Vec<S> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(scalar_from_json<S>(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

// ---- sequences ----

template <class S>
json to_json(const PointSeq<S>& x) {
    json j;
    j["k"] = x.k;
    j["points"] = json::array();
    for (const auto& p : x.points) j["points"].push_back(vec_to_json(p));
    return j;
}

/// The leading-zero sentinel is inferred on read: a first row of exact
/// zeros can only be the sup-gap sentinel (zero points are rejected inside
/// plain sequences).
template <class S>
PointSeq<S> point_seq_from_json(const json& j, const std::string& where = "sequence") {
    if (!j.is_object() || !j.contains("k") || !j.contains("points"))
        throw std::invalid_argument(where + ": expected {\"k\", \"points\"}");
    PointSeq<S> x;
    x.k = j["k"].get<int>();
    for (std::size_t i = 0; i < j["points"].size(); ++i)
        x.points.push_back(vec_from_json<S>(j["points"][i], where + ".points[" + std::to_string(i) + "]"));
    x.leading_zero = !x.points.empty() && is_zero_vec(x.points.front());
    x.validate();
    return x;
}

template <class S>
json to_json(const AllocSeq<S>& q) {
    json j;
    j["k"] = q.k;
    j["allocations"] = json::array();
    for (const auto& a : q.allocations) j["allocations"].push_back(vec_to_json(a));
    return j;
}

template <class S>
AllocSeq<S> alloc_seq_from_json(const json& j, const std::string& where = "allocation") {
    if (!j.is_object() || !j.contains("k") || !j.contains("allocations"))
        throw std::invalid_argument(where + ": expected {\"k\", \"allocations\"}");
    AllocSeq<S> q;
    q.k = j["k"].get<int>();
    for (std::size_t i = 0; i < j["allocations"].size(); ++i)
        q.allocations.push_back(vec_from_json<S>(j["allocations"][i], where + ".allocations[" + std::to_string(i) + "]"));
    q.validate();
    return q;
}

template <class S>
json to_json(const ScalarSeq<S>& c) {
    json j;
    j["scalars"] = json::array();
    for (const S& v : c.scalars) j["scalars"].push_back(scalar_to_json(v));
    return j;
}

template <class S>
ScalarSeq<S> scalar_seq_from_json(const json& j, const std::string& where = "scalars") {
    if (!j.is_object() || !j.contains("scalars")) throw std::invalid_argument(where + ": expected {\"scalars\"}");
    ScalarSeq<S> c;
    for (std::size_t i = 0; i < j["scalars"].size(); ++i)
        c.scalars.push_back(scalar_from_json<S>(j["scalars"][i], where + ".scalars[" + std::to_string(i) + "]"));
    return c;
}

// ---- auction objects ----

template <class S>
json to_json(const auction::DiscreteDistribution<S>& d) {
    json j;
    j["k"] = d.k;
    j["support"] = json::array();
    for (std::size_t i = 0; i < d.size(); ++i)
        j["support"].push_back(json{{"v", vec_to_json(d.values[i])}, {"p", scalar_to_json(d.probs[i])}});
    return j;
}

template <class S>
auction::DiscreteDistribution<S> distribution_from_json(const json& j, const std::string& where = "distribution") {
    if (!j.is_object() || !j.contains("k") || !j.contains("support"))
        throw std::invalid_argument(where + ": expected {\"k\", \"support\"}");
    auction::DiscreteDistribution<S> d;
    d.k = j["k"].get<int>();
    for (std::size_t i = 0; i < j["support"].size(); ++i) {
        const json& row = j["support"][i];
        std::string rw = where + ".support[" + std::to_string(i) + "]";
        if (!row.is_object() || !row.contains("v") || !row.contains("p"))
            throw std::invalid_argument(rw + ": expected {\"v\", \"p\"}");
        d.values.push_back(vec_from_json<S>(row["v"], rw + ".v"));
        d.probs.push_back(scalar_from_json<S>(row["p"], rw + ".p"));
    }
    d.validate();
    return d;
}

template <class S>
json to_json(const auction::Mechanism<S>& m) {
    json j;
    j["menu"] = json::array();
    for (const auto& e : m.menu) j["menu"].push_back(json{{"q", vec_to_json(e.q)}, {"price", scalar_to_json(e.price)}});
    return j;
}

template <class S>
auction::Mechanism<S> mechanism_from_json(const json& j, const std::string& where = "mechanism") {
    if (!j.is_object() || !j.contains("menu")) throw std::invalid_argument(where + ": expected {\"menu\"}");
    auction::Mechanism<S> m;
    std::vector<auction::MenuEntry<S>> entries;
    for (std::size_t i = 0; i < j["menu"].size(); ++i) {
        const json& row = j["menu"][i];
        std::string rw = where + ".menu[" + std::to_string(i) + "]";
        if (!row.is_object() || !row.contains("q") || !row.contains("price"))
            throw std::invalid_argument(rw + ": expected {\"q\", \"price\"}");
        entries.push_back({vec_from_json<S>(row["q"], rw + ".q"), scalar_from_json<S>(row["price"], rw + ".price")});
    }
    if (entries.empty()) throw std::invalid_argument(where + ": empty menu");
    m.k = static_cast<int>(entries.front().q.size());
    return auction::make_mechanism(m.k, entries);
}

// ---- CSV ----

std::string format_double(double v);

template <class S>
std::string scalar_to_csv(const S& v) {
    if constexpr (ScalarOps<S>::exact) return rat_to_string(v);
    else return format_double(v);
}

template <class S>
std::string gap_report_csv(const GapReport<S>& rep) {
    std::ostringstream out;
    out << "index,raw,clipped,normalized,cumulative,witness\n";
    for (std::size_t i = 0; i < rep.terms.size(); ++i) {
        out << (i + 1) << ',' << scalar_to_csv(rep.terms[i]) << ',' << scalar_to_csv(rep.clipped[i]) << ','
            << scalar_to_csv(rep.normalized[i]) << ',' << scalar_to_csv(rep.cumulative[i]) << ',' << rep.witness[i]
            << '\n';
    }
    return out.str();
}

// ---- manifests ----

/// Reproducibility record emitted next to every CLI result.
struct Manifest {
    std::string subcommand;
    json config;
    json input_hashes;  // path -> fnv64 of bytes
    json result_summary;
    double wall_time_s = 0.0;

    json to_json() const {
        return json{{"subcommand", subcommand},
                    {"config", config},
                    {"input_hashes", input_hashes},
                    {"result", result_summary},
                    {"wall_time_s", wall_time_s}};
    }
};

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace menugap::io
