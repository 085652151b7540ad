#pragma once

#include <cmath>
#include <sstream>
#include <string>

#include <json.hpp>

#include "zsm/asymptotics.hpp"
#include "zsm/distill.hpp"
#include "zsm/entanglement.hpp"
#include "zsm/multiplicity.hpp"
#include "zsm/types.hpp"

namespace zsm {

using json = nlohmann::ordered_json;

inline json number_or_null(double v) {
    if (std::isnan(v)) return nullptr;
    return v;
}

inline std::string log_base_name(LogBase b) { return b == LogBase::Two ? "2" : "e"; }

inline json spec_to_json(const SystemSpec& spec) {
    json j;
    j["constituent_count"] = spec.count;
    if (spec.kind == SystemSpec::Kind::Spin) {
        j["kind"] = "spin";
        j["twice_s"] = spec.twice_s;
    } else {
        j["kind"] = "fundamental";
        j["unitary_rank"] = spec.unitary_rank;
    }
    return j;
}

// Exact integers go out as decimal strings; N overflows 64 bits near 2n = 70.
inline json dims_to_json(const MultiplicityTable& table, const mpz_class& invariant_dim) {
    json j;
    j["spec"] = spec_to_json(table.spec);
    j["counts"] = json::array();
    for (const auto& [t, c] : table.counts)
        j["counts"].push_back({{"twice_j", t}, {"count", c.get_str()}});
    j["invariant_dimension"] = invariant_dim.get_str();
    return j;
}

inline json report_to_json(const EntanglementReport& r) {
    json j;
    j["log_base"] = log_base_name(r.log_base);
    j["s_e"] = r.s_e;
    j["e_f"] = r.e_f;
    j["e_d"] = r.e_d;
    j["s_a"] = number_or_null(r.s_a);
    j["s_b"] = number_or_null(r.s_b);
    j["s_total"] = r.s_total;
    j["mutual_information"] = number_or_null(r.mutual_information);
    j["unentangled_fraction"] = r.unentangled_fraction;
    j["p"] = json::array();
    for (std::size_t i = 0; i < r.p.twice_j.size(); ++i)
        j["p"].push_back({{"twice_j", r.p.twice_j[i]}, {"p", r.p.p[i]}});
    return j;
}

inline json scan_to_json(const ScanResult& s) {
    json j;
    j["n"] = s.n_values;
    j["quantities"] = json::object();
    for (const auto& [name, series] : s.quantities) j["quantities"][name] = series;
    if (s.fit) {
        j["fit"] = {{"slope", s.fit->slope},
                    {"intercept", s.fit->intercept},
                    {"residual", s.fit->residual}};
    }
    return j;
}

inline json run_to_json(const DistillationRun& r, LogBase base) {
    json j;
    j["trials"] = r.trials;
    j["seed"] = r.seed;
    j["shards"] = r.shards;
    j["log_base"] = log_base_name(base);
    j["yield_mean"] = r.yield_mean;
    j["yield_stderr"] = r.yield_stderr;
    j["closed_form_s_e"] = r.closed_form_s_e;
    j["sector_tally"] = json::array();
    for (const auto& [t, n] : r.sector_tally)
        j["sector_tally"].push_back({{"twice_j", t}, {"count", n}});
    return j;
}

// CSV with '#'-prefixed metadata lines, then a fixed header row.
inline std::string scan_to_csv(const ScanResult& s, const std::string& law) {
    std::ostringstream out;
    out << "# law=" << law << "\n";
    if (s.fit)
        out << "# fit_slope=" << s.fit->slope << " fit_intercept=" << s.fit->intercept
            << " fit_residual=" << s.fit->residual << "\n";
    out << "n";
    for (const auto& [name, _] : s.quantities) out << "," << name;
    out << "\n";
    out.precision(17);
    for (std::size_t i = 0; i < s.n_values.size(); ++i) {
        out << s.n_values[i];
        for (const auto& [_, series] : s.quantities) out << "," << series[i];
        out << "\n";
    }
    return out.str();
}

inline std::string dims_to_csv(const MultiplicityTable& table, const mpz_class& invariant_dim) {
    std::ostringstream out;
    out << "# invariant_dimension=" << invariant_dim.get_str() << "\n";
    out << "twice_j,count\n";
    for (const auto& [t, c] : table.counts) out << t << "," << c.get_str() << "\n";
    return out.str();
}

// Weights file: {"mode": "per_sector"|"full",
//                "entries": [{"twice_j": int, "a": int?, "b": int?, "w": num}]}
inline MixtureWeights weights_from_json(const json& j) {
    const std::string mode = j.at("mode").get<std::string>();
    if (mode == "per_sector") {
        std::map<int, double> p;
        for (const auto& e : j.at("entries"))
            p[e.at("twice_j").get<int>()] += e.at("w").get<double>();
        return MixtureWeights::per_sector(std::move(p));
    }
    if (mode == "full") {
        std::map<std::tuple<int, long, long>, double> w;
        for (const auto& e : j.at("entries"))
            w[{e.at("twice_j").get<int>(), e.at("a").get<long>(), e.at("b").get<long>()}] +=
                e.at("w").get<double>();
        return MixtureWeights::full_weights(std::move(w));
    }
    throw std::invalid_argument("weights file: unknown mode '" + mode + "'");
}

} // namespace zsm
