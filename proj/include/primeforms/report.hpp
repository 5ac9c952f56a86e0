#pragma once

/// @file report.hpp
/// @brief JSON and CSV encodings of reports and of the rule tables.
/// JSON is the source of truth; CSV is a one-mismatch-per-row projection.

#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "primeforms/harness.hpp"
#include "primeforms/rules.hpp"
#include "primeforms/trinity.hpp"

namespace primeforms {

using json = nlohmann::ordered_json;

inline json to_json(const std::optional<Witness>& w) {
    if (!w) return nullptr;
    return json{{"a", w->a}, {"b", w->b}, {"multiplier", w->multiplier}};
}

template <typename T>
json optional_json(const std::optional<T>& v) {
    if (!v) return nullptr;
    return json(*v);
}

inline json to_json(const VerificationReport& r) {
    json mismatches = json::array();
    for (const auto& m : r.mismatches)
        mismatches.push_back({{"p", m.p},
                              {"predicate", m.predicate},
                              {"witness_found", m.witness_found},
                              {"witness", to_json(m.witness)},
                              {"kind", m.kind}});
    return json{{"table_version", r.table_version},
                {"theorem", r.theorem},
                {"q", r.q},
                {"family", r.family},
                {"prime_bound", r.prime_bound},
                {"checked_count", r.checked_count},
                {"mismatches", mismatches},
                {"elapsed_ms", r.elapsed_ms}};
}

/// JSON text with the elapsed field removed, for byte comparisons.
inline std::string canonical_report_text(const VerificationReport& r) {
    json j = to_json(r);
    j.erase("elapsed_ms");
    return j.dump(2);
}

inline std::string to_csv(const VerificationReport& r) {
    std::ostringstream out;
    out << "theorem,q,family,p,predicate,witness_found,a,b,multiplier,kind\n";
    for (const auto& m : r.mismatches) {
        out << r.theorem << ',' << r.q << ',' << r.family << ',' << m.p << ',' << (m.predicate ? "true" : "false")
            << ',' << (m.witness_found ? "true" : "false") << ',';
        if (m.witness)
            out << m.witness->a << ',' << m.witness->b << ',' << m.witness->multiplier;
        else
            out << ",,";
        out << ',' << m.kind << '\n';
    }
    return out.str();
}

inline VerificationReport report_from_json(const json& j) {
    VerificationReport r;
    r.table_version = j.at("table_version").get<std::string>();
    r.theorem = j.at("theorem").get<std::string>();
    r.q = j.at("q").get<u64>();
    r.family = j.at("family").get<std::string>();
    r.prime_bound = j.at("prime_bound").get<u64>();
    r.checked_count = j.at("checked_count").get<u64>();
    for (const auto& m : j.at("mismatches")) {
        std::optional<Witness> w;
        if (!m.at("witness").is_null())
            w = Witness{m["witness"].at("a").get<u64>(), m["witness"].at("b").get<u64>(),
                        m["witness"].at("multiplier").get<u64>(), m.at("p").get<u64>()};
        r.mismatches.push_back({m.at("p").get<u64>(), m.at("predicate").get<bool>(),
                                m.at("witness_found").get<bool>(), w, m.at("kind").get<std::string>()});
    }
    if (j.contains("elapsed_ms")) r.elapsed_ms = j["elapsed_ms"].get<double>();
    return r;
}

inline json to_json(const FamilyComparison& c) {
    return json{{"q", c.q},
                {"equal", c.equal},
                {"first_divergence", optional_json(c.first_divergence)},
                {"divergence_in_H1", c.divergence_in_H1},
                {"divergence_in_H2", c.divergence_in_H2}};
}

inline json to_json(const ProblemOneReport& r) {
    json verdicts = json::array();
    for (const auto& v : r.verdicts) verdicts.push_back(to_json(v));
    return json{{"table_version", table_version}, {"q_max", r.q_max}, {"prime_bound", r.prime_bound},
                {"verdicts", verdicts}};
}

inline json to_json(const ProblemTwoVerdict& v) {
    return json{{"table_version", table_version},
                {"q1", v.q1},
                {"q2", v.q2},
                {"product", v.q1 * v.q2},
                {"prime_bound", v.prime_bound},
                {"premise_holds", v.premise_holds()},
                {"q1_result", to_json(v.q1_result)},
                {"q2_result", to_json(v.q2_result)},
                {"product_result", to_json(v.product_result)}};
}

inline json to_json(const std::vector<SetRelation>& rels) {
    json out = json::array();
    for (const auto& r : rels)
        out.push_back({{"relation", r.name},
                       {"holds", r.holds()},
                       {"violations", r.violations},
                       {"strictness_witness", optional_json(r.strictness_witness)}});
    return out;
}

inline json to_json(const InclusionReport& r) {
    json violations = json::array();
    for (const auto& v : r.violations) violations.push_back({{"t", v.t}, {"relation", v.relation}});
    return json{{"bound", r.bound},
                {"violations", violations},
                {"strictness_witnesses",
                 {{"C outside A&B", optional_json(r.c_outside_ab)},
                  {"A outside B&C", optional_json(r.a_outside_bc)},
                  {"B outside C&A", optional_json(r.b_outside_ca)}}}};
}

/// Versioned export of every rule table.
inline json tables_json() {
    json rules = json::array();
    for (const auto& r : rule_table())
        rules.push_back({{"family", family_name(r.family)},
                         {"q", r.q},
                         {"modulus", r.modulus},
                         {"residues", r.residues},
                         {"exceptions", r.exceptional_primes},
                         {"source", r.source}});
    json criteria = json::array();
    for (const auto& c : criterion_table()) {
        json conditions = json::array();
        for (const auto& poly : c.conditions) conditions.push_back(poly.coeffs);
        json sides = json::array();
        for (const auto& s : c.side_congruences) sides.push_back({{"modulus", s.modulus}, {"residue", s.residue}});
        criteria.push_back({{"q", c.q},
                            {"conditions", conditions},
                            {"side_congruences", sides},
                            {"floor", c.floor},
                            {"source", c.source},
                            {"note", c.note}});
    }
    json multipliers = json::array();
    for (const auto& m : multiplier_rules())
        multipliers.push_back({{"tag", m.tag},
                               {"q", m.q},
                               {"modulus", m.modulus},
                               {"residues", m.residues},
                               {"multipliers", m.multipliers},
                               {"floor", m.floor},
                               {"exclusive", m.exclusive}});
    return json{{"table_version", table_version},
                {"coefficient_order", "ascending powers"},
                {"rules", rules},
                {"criteria", criteria},
                {"multiplier_rules", multipliers}};
}

} // namespace primeforms
