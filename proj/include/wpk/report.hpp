#pragma once

#include <wpk/elliptic.hpp>
#include <wpk/norms.hpp>
#include <wpk/regimes.hpp>

#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

namespace wpk {

using json = nlohmann::ordered_json;

inline json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json to_json(const PExponent& p) { return p.infinite() ? json("inf") : json(p.value()); }

inline json growth_json(const GrowthReport& g, const std::string& quantity, double alpha) {
    json j;
    j["quantity"] = quantity;
    j["kind"] = to_string(g.kind);
    j["alpha"] = alpha;
    j["p"] = to_json(g.p);
    j["cutoffs"] = g.cutoffs;
    json vals = json::array();
    for (double v : g.values) vals.push_back(number_or_null(v));
    j["values"] = vals;
    j["exponent"] = number_or_null(g.exponent);
    j["status"] = g.diverging ? "diverging" : "lower_bound_only";
    return j;
}

inline json to_json(const RegimeClass& c) {
    json j;
    j["label"] = to_string(c.label);
    j["alpha"] = c.alpha;
    j["p"] = to_json(c.p);
    json preds = json::array();
    for (auto p : c.predictions) preds.push_back(to_string(p));
    j["predictions"] = preds;
    return j;
}

inline json to_json(const Certification& c) {
    json j;
    j["check"] = c.check;
    if (!c.subject.empty()) j["subject"] = c.subject;
    json params = json::object();
    for (auto& [k, v] : c.params) params[k] = number_or_null(v);
    j["params"] = params;
    j["lhs"] = number_or_null(c.lhs);
    j["rhs"] = number_or_null(c.rhs);
    j["holds"] = c.holds;
    return j;
}

inline json to_json(const std::vector<Certification>& cs) {
    json j = json::array();
    for (auto& c : cs) j.push_back(to_json(c));
    return j;
}

inline json to_json(const EllipticReport& r) {
    json j;
    json entries = json::array();
    for (auto& e : r.entries) entries.push_back({{"K", e.K}, {"r_max", e.r_max}, {"min_kprime", number_or_null(e.min_kprime)}});
    j["entries"] = entries;
    json trends = json::array();
    for (auto& t : r.trends)
        trends.push_back({{"K", t.K}, {"growing", t.growing}, {"stable", t.stable}, {"last_ratio", number_or_null(t.last_ratio)}});
    j["trends"] = trends;
    j["nonpositive_jacobian_fraction"] = r.nonpositive_jacobian;
    j["verdict"] = to_string(r.verdict);
    return j;
}

} // namespace wpk
