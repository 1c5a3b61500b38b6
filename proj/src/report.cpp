/*
   Copyright 2026 The frobsplit Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "frobsplit/report.hpp"

namespace frobsplit {

using nlohmann::json;

std::string basis_label(const BasisKey& k, const RingPtr& ring) {
    std::string inner = FpPoly::monomial(ring, k.exponent).to_string();
    std::string out = "[" + inner + "]";
    if (k.level > 0) out = "V^" + std::to_string(k.level) + out;
    return out;
}

json to_json(const EllipticPointCount& c) {
    return {{"points", c.points}, {"a_p", c.a_p}, {"supersingular", c.supersingular}};
}

json to_json(const QuadricReport& r) {
    json j{{"p", r.p},
           {"n", r.n},
           {"f", r.f.to_string()},
           {"sigma", r.sigma.to_string()},
           {"sigma_degree", r.sigma_degree},
           {"expected_degree", static_cast<std::uint64_t>(r.p - 1) * (r.n + 1)},
           {"f_power_divides_sigma", r.f_power_divides_sigma},
           {"coefficient_in_sigma", r.coefficient_in_sigma},
           {"coefficient_in_f_power", r.coefficient_in_f_power},
           {"smooth", r.smooth}};
    j["central_binomial"] = r.central_binomial ? json(*r.central_binomial) : json(nullptr);
    return j;
}

json to_json(const SearchResult& r) {
    return {{"n", r.n},
            {"feasible", r.feasible},
            {"degree_bound", r.degree_bound},
            {"required_degree", r.required_degree},
            {"unknowns", r.unknowns},
            {"constraints", r.constraints}};
}

json to_json(const WitnessCheck& c) {
    return {{"kills_relations", c.kills_relations},
            {"linear", c.linear},
            {"retracts_section", c.retracts_section},
            {"kills_ideal", c.kills_ideal},
            {"checks", c.checks},
            {"ok", c.ok()}};
}

json to_json(const SplittingCandidate& tau) {
    json values = json::object();
    const auto& ambient = tau.ring()->ambient();
    for (const auto& [k, v] : tau.values()) values[basis_label(k, ambient)] = v.to_string();
    return {{"n", tau.length()}, {"degree_bound", tau.degree_bound()}, {"values", values}};
}

json to_json(const HeightReport& r) {
    json j{{"n_max", r.n_max}, {"degree_bound", r.degree_bound}};
    j["height"] = r.height ? json(*r.height) : json(nullptr);
    j["searches"] = json::array();
    for (const auto& s : r.searches) j["searches"].push_back(to_json(s));
    if (r.witness) {
        j["witness"] = to_json(*r.witness);
        j["witness_generators"] = r.witness->values().size();
    }
    if (r.witness_check) j["witness_check"] = to_json(*r.witness_check);
    if (r.monotone) j["monotone"] = *r.monotone;
    return j;
}

json to_json(const TotalSplittingReport& r) {
    json rows = json::array();
    for (const auto& b : r.bidegrees)
        rows.push_back({{"i", b.i},
                        {"t", b.t},
                        {"source_dim", b.source_dim},
                        {"cohomology_dim", b.cohomology_dim},
                        {"image_rank", b.image_rank},
                        {"cocycles", b.cocycles},
                        {"induces_cartier", b.induces_cartier},
                        {"bijective", b.bijective()}});
    return {{"p", r.p},         {"nvars", r.nvars}, {"degree_cap", r.degree_cap}, {"basis_verified", r.basis_verified},
            {"bidegrees", rows}, {"ok", r.ok()}};
}

json to_json(const CompositeReport& r) {
    json rows = json::array();
    for (const auto& g : r.degrees)
        rows.push_back({{"i", g.i}, {"classes", g.classes}, {"matches", g.matches}, {"zeros", g.zeros}});
    return {{"degree_cap", r.degree_cap},
            {"unit_value", r.unit_value},
            {"degrees", rows},
            {"induces_cartier", r.induces_cartier()}};
}

json to_json(const BaseChangeReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"i", row.i},
                        {"degree", row.degree.to_string()},
                        {"complex_rank", row.complex_rank},
                        {"forms_rank", row.forms_rank},
                        {"image_rank", row.image_rank}});
    return {{"p", r.p},
            {"n", r.n},
            {"nvars", r.nvars},
            {"degree_cap", r.degree_cap},
            {"basis_cardinality", r.basis_cardinality},
            {"rows", rows},
            {"linearity_samples", r.linearity_samples},
            {"module_linear", r.module_linear},
            {"ok", r.ok()}};
}

json to_json(const FilteredIsoReport& r) {
    json levels = json::array();
    for (const auto& lv : r.levels)
        levels.push_back({{"n", lv.n},
                          {"gamma_rank", lv.gamma_rank},
                          {"graded_rank", lv.graded_rank},
                          {"image_rank", lv.image_rank},
                          {"filtered", lv.filtered},
                          {"matches_graded", lv.matches_graded},
                          {"bijective", lv.bijective()}});
    return {{"p", r.p},
            {"nvars", r.nvars},
            {"codimension", r.codimension},
            {"n_max", r.n_max},
            {"levels", levels},
            {"multiplicative_samples", r.multiplicative_samples},
            {"multiplicative", r.multiplicative},
            {"perturbations", r.perturbations},
            {"lift_independent", r.lift_independent},
            {"ok", r.ok()}};
}

json to_json(const SignIdentityReport& r, bool rows) {
    json j{{"k_max", r.k_max}, {"checked", r.rows.size()}, {"failures", r.failures}, {"ok", r.ok()}};
    if (rows) {
        j["rows"] = json::array();
        for (const auto& row : r.rows)
            j["rows"].push_back({{"p", row.p}, {"k", row.k}, {"value", row.value}, {"expected", row.expected}});
    }
    return j;
}

}  // namespace frobsplit
