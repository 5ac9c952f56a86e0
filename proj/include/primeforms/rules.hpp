#pragma once

/// @file rules.hpp
/// @brief Every prime characterization as data plus an evaluator:
/// residue-class rules for E/H1/H2, polynomial-root criteria for a^2 + q b^2,
/// the x^8 = -4 criterion for q = 32, the P32/P64 classification of primes
/// 1 mod 8, and the multiplier rules for q = 11, 17, 19.
///
/// Tables are built once on first use and are immutable afterwards.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "primeforms/arith.hpp"
#include "primeforms/errors.hpp"
#include "primeforms/forms.hpp"

namespace primeforms {

inline constexpr const char* table_version = "1";

// ---------------------------------------------------------------------------
// Residue rules
// ---------------------------------------------------------------------------

/// How a rule's residue list is stated: literally, or as j^2, -j^2, +-j^2
/// modulo the rule's modulus for listed j.
enum class ResidueForm { literal, squares, neg_squares, pm_squares };

struct ResidueRule {
    u64 q;
    Family family;
    u64 modulus;
    std::vector<u64> residues;           // sorted expansion, each in [0, modulus)
    std::vector<u64> exceptional_primes; // always in the set
    ResidueForm form;
    std::vector<u64> generators;         // the j values, or the literal residues
    std::string source;
};

/// Expands a stated residue list into a sorted set modulo m.
inline std::vector<u64> expand_residues(ResidueForm form, const std::vector<u64>& gens, u64 m) {
    std::set<u64> out;
    for (u64 j : gens) {
        u64 sq = (j * j) % m;
        switch (form) {
            case ResidueForm::literal: out.insert(j % m); break;
            case ResidueForm::squares: out.insert(sq); break;
            case ResidueForm::neg_squares: out.insert((m - sq) % m); break;
            case ResidueForm::pm_squares:
                out.insert(sq);
                out.insert((m - sq) % m);
                break;
        }
    }
    return {out.begin(), out.end()};
}

namespace detail {

inline void validate_rule(const ResidueRule& r) {
    auto regenerated = expand_residues(r.form, r.generators, r.modulus);
    if (regenerated != r.residues)
        throw std::logic_error("rule table: stored residues disagree with their statement for " + r.source);
    for (u64 x : r.residues) {
        if (x >= r.modulus) throw std::logic_error("rule table: residue out of range in " + r.source);
        if (gcd_u64(x, r.modulus) != 1)
            throw std::logic_error("rule table: residue shares a factor with the modulus in " + r.source);
    }
}

inline std::vector<ResidueRule> build_rule_table() {
    using F = Family;
    using R = ResidueForm;
    std::vector<ResidueRule> t = {
        // E(q) = a^2 + q b^2
        {1, F::E, 4, {1}, {2}, R::literal, {1}, "E(1): p=2 or p=1 mod 4"},
        {2, F::E, 8, {1, 3}, {2}, R::literal, {1, 3}, "E(2): p=2 or p=1,3 mod 8"},
        {3, F::E, 6, {1}, {3}, R::literal, {1}, "E(3): p=3 or p=1 mod 6"},
        {4, F::E, 4, {1}, {}, R::literal, {1}, "E(4): p=1 mod 4"},
        {5, F::E, 20, {1, 9}, {5}, R::squares, {1, 3}, "E(5): p=5 or p=j^2 mod 20, j in {1,3}"},
        {6, F::E, 24, {1, 7}, {}, R::literal, {1, 7}, "E(6): p=1,7 mod 24"},
        {7, F::E, 14, {1, 9, 11}, {7}, R::squares, {1, 3, 5}, "E(7): p=7 or p=j^2 mod 14, j in {1,3,5}"},
        {8, F::E, 8, {1}, {}, R::literal, {1}, "E(8): p=1 mod 8"},
        {9, F::E, 36, {1, 13, 25}, {}, R::squares, {1, 5, 7}, "E(9): p=j^2 mod 36, j in {1,5,7}"},
        {10, F::E, 40, {1, 9, 11, 19}, {}, R::literal, {1, 9, 11, 19}, "E(10): p=1,9,11,19 mod 40"},
        {12, F::E, 48, {1, 13, 25, 37}, {}, R::literal, {1, 13, 25, 37}, "E(12): p=1,13,25,37 mod 48"},
        {13, F::E, 52, {1, 9, 17, 25, 29, 49}, {}, R::squares, {1, 3, 5, 7, 9, 11},
         "E(13): p=j^2 mod 52, j in {1,3,5,7,9,11}"},
        {15, F::E, 60, {1, 19, 31, 49}, {}, R::literal, {1, 19, 31, 49}, "E(15): p=1,19,31,49 mod 60"},
        {16, F::E, 8, {1}, {}, R::literal, {1}, "E(16): p=1 mod 8"},

        // H1(q) = q b^2 - a^2
        {1, F::H1, 2, {1}, {}, R::literal, {1}, "H1(1): p != 2"},
        {2, F::H1, 8, {1, 7}, {2}, R::pm_squares, {1}, "H1(2): p=2 or p=+-1 mod 8"},
        {3, F::H1, 12, {11}, {2, 3}, R::literal, {11}, "H1(3): p in {2,3} or p=11 mod 12"},
        {4, F::H1, 4, {3}, {}, R::literal, {3}, "H1(4): p=3 mod 4"},
        {5, F::H1, 20, {1, 9, 11, 19}, {5}, R::pm_squares, {1, 3}, "H1(5): p=5 or p=+-j^2 mod 20, j in {1,3}"},
        {6, F::H1, 24, {5, 23}, {2}, R::literal, {5, 23}, "H1(6): p=2 or p=5,23 mod 24"},
        {7, F::H1, 14, {3, 5, 13}, {7}, R::literal, {3, 5, 13}, "H1(7): p=7 or p=3,5,13 mod 14"},
        {8, F::H1, 32, {7, 15, 23, 31}, {7}, R::neg_squares, {1, 3, 5, 7},
         "H1(8): p=7 or p=-j^2 mod 32, j in {1,3,5,7}"},
        {9, F::H1, 6, {5}, {}, R::literal, {5}, "H1(9): p=-1 mod 6"},
        {10, F::H1, 40, {1, 9, 31, 39}, {}, R::literal, {1, 9, 31, 39}, "H1(10): p=1,9,31,39 mod 40"},
        {11, F::H1, 44, {7, 19, 35, 39, 43}, {2, 11}, R::neg_squares, {1, 3, 5, 7, 9},
         "H1(11): p in {2,11} or p=-j^2 mod 44, j in {1,3,5,7,9}"},

        // H2(q) = a^2 - q b^2
        {1, F::H2, 2, {1}, {}, R::literal, {1}, "H2(1): p != 2"},
        {2, F::H2, 8, {1, 7}, {2}, R::pm_squares, {1}, "H2(2): p=2 or p=+-1 mod 8"},
        {3, F::H2, 12, {1}, {}, R::literal, {1}, "H2(3): p=1 mod 12"},
        {4, F::H2, 4, {1}, {}, R::literal, {1}, "H2(4): p=1 mod 4"},
        {5, F::H2, 20, {1, 9, 11, 19}, {5}, R::pm_squares, {1, 3}, "H2(5): p=5 or p=+-j^2 mod 20, j in {1,3}"},
        {6, F::H2, 24, {1, 19}, {3}, R::literal, {1, 19}, "H2(6): p=3 or p=1,19 mod 24"},
        {7, F::H2, 14, {1, 9, 11}, {2}, R::literal, {1, 9, 11}, "H2(7): p=2 or p=1,9,11 mod 14"},
        {8, F::H2, 32, {1, 9, 17, 25}, {7}, R::squares, {1, 3, 5, 7},
         "H2(8): p=7 or p=j^2 mod 32, j in {1,3,5,7}"},
        {9, F::H2, 6, {1}, {}, R::literal, {1}, "H2(9): p=1 mod 6"},
        {10, F::H2, 40, {1, 9, 31, 39}, {}, R::literal, {1, 9, 31, 39}, "H2(10): p=1,9,31,39 mod 40"},
        {11, F::H2, 44, {1, 5, 9, 25, 37}, {}, R::squares, {1, 3, 5, 7, 9},
         "H2(11): p=j^2 mod 44, j in {1,3,5,7,9}"},
    };
    for (const auto& r : t) validate_rule(r);
    return t;
}

} // namespace detail

inline const std::vector<ResidueRule>& rule_table() {
    static const std::vector<ResidueRule> table = detail::build_rule_table();
    return table;
}

inline const ResidueRule* find_rule(Family family, u64 q) {
    for (const auto& r : rule_table())
        if (r.family == family && r.q == q) return &r;
    return nullptr;
}

inline bool residue_predicate(u64 p, const ResidueRule& rule) {
    if (std::find(rule.exceptional_primes.begin(), rule.exceptional_primes.end(), p) !=
        rule.exceptional_primes.end())
        return true;
    return std::binary_search(rule.residues.begin(), rule.residues.end(), p % rule.modulus);
}

// ---------------------------------------------------------------------------
// Polynomial criteria
// ---------------------------------------------------------------------------

inline constexpr u64 root_scan_budget = 1'000'000;

/// Dense integer polynomial; coeffs[i] multiplies X^i.
struct Polynomial {
    std::vector<i64> coeffs;

    std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }

    i128 evaluate(i64 x) const {
        i128 acc = 0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    friend bool operator==(const Polynomial&, const Polynomial&) = default;
};

/// True iff the polynomial has a root in [0, p). Exhaustive scan.
inline bool poly_has_root(const Polynomial& poly, u64 p) {
    if (p >= root_scan_budget)
        throw budget_exceeded("poly_has_root: p=" + std::to_string(p) + " is beyond the scan budget");
    if (p < 2 || !is_prime(p)) throw std::invalid_argument("poly_has_root: p must be prime");
    std::vector<u64> reduced;
    reduced.reserve(poly.coeffs.size());
    for (i64 c : poly.coeffs) reduced.push_back(reduce_mod(c, p));
    // p < 1e6, so every product below stays under 1e12.
    for (u64 x = 0; x < p; ++x) {
        u64 acc = 0;
        for (auto it = reduced.rbegin(); it != reduced.rend(); ++it) acc = (acc * x + *it) % p;
        if (acc == 0) return true;
    }
    return false;
}

struct SideCongruence {
    u64 modulus;
    u64 residue;
};

struct PolyCriterion {
    u64 q;
    std::vector<Polynomial> conditions;
    std::vector<SideCongruence> side_congruences;
    u64 floor;  // the criterion speaks only about p > floor
    std::string source;
    std::string note;
};

namespace detail {

inline std::vector<PolyCriterion> build_criterion_table() {
    std::vector<PolyCriterion> t = {
        {11, {{{44, 0, 4, 0, 4, 0, 1}}}, {}, 2, "(X^3+2X)^2+44", ""},
        {14, {{{14, 0, 1}}, {{-7, 0, 2, 0, 1}}}, {}, 0, "X^2+14 and (X^2+1)^2-8", ""},
        {17, {{{17, 0, 1}}, {{17, 0, -2, 0, 1}}}, {}, 0, "X^2+17 and (X^2-1)^2+16", ""},
        {18, {{{81, 0, -6, 0, 1}}}, {}, 0, "(X^2-3)^2+18*2^2", ""},
        {19, {{{304, 0, 16, 0, -8, 0, 1}}}, {}, 0, "(X^3-4X)^2+19*4^2",
         "printed as (X^3-4x); read as X^3-4X"},
        {20, {{{16, 0, 0, 0, 12, 0, 0, 0, 1}}}, {}, 0, "(X^4-4)^2+20X^4", "no floor stated"},
        {21, {{{16, 0, 0, 0, 92, 0, 0, 0, 1}}}, {}, 0, "(X^4+4)^2+84X^4", "no floor stated"},
        {22, {{{361, 0, 6, 0, 1}}}, {}, 22, "(X^2+3)^2+22*4^2", ""},
        {23, {{{8303, 0, 225, 0, 30, 0, 1}}}, {}, 0, "(X^3+15X)^2+23*19^2", ""},
        {24, {{{16, 0, 0, 0, 392, 0, 0, 0, 1}}}, {}, 0, "(X^4+4)^2+24(2X)^4", ""},
        {25, {{{100, 0, 0, 0, 1}}}, {}, 25, "X^4+100", ""},
        {27, {{{-2, 0, 0, 1}}}, {{3, 1}}, 0, "X^3-2 with p=1 mod 3", ""},
        {29, {{{116, 0, 1, 0, -2, 0, 1}}}, {{4, 1}}, 0, "(X^3-X)^2+116 with p=1 mod 4", ""},
        {31, {{{31, 0, 38, 0, 11, 0, 1}}}, {}, 0, "(X^3-10X)^2+31(X^2-1)^2", ""},
        {32, {{{2, 0, -2, 0, 1}}}, {{8, 1}}, 0, "(X^2-1)^2+1 with p=1 mod 8", ""},
        {37, {{{9, 0, 31, 0, 1}}}, {}, 0, "X^4+31X^2+9", ""},
        {64, {{{-2, 0, 0, 0, 1}}}, {{4, 1}}, 0, "X^4-2 with p=1 mod 4", ""},
    };
    for (const auto& c : t)
        for (const auto& poly : c.conditions)
            if (poly.degree() < 1 || poly.degree() > 8)
                throw std::logic_error("criterion table: bad degree for q=" + std::to_string(c.q));
    return t;
}

} // namespace detail

inline const std::vector<PolyCriterion>& criterion_table() {
    static const std::vector<PolyCriterion> table = detail::build_criterion_table();
    return table;
}

inline const PolyCriterion* find_criterion(u64 q) {
    for (const auto& c : criterion_table())
        if (c.q == q) return &c;
    return nullptr;
}

/// Whether the criterion makes a claim about p: p an odd prime not dividing
/// q, above the stated floor.
inline bool in_criterion_domain(u64 p, const PolyCriterion& crit) {
    return p > 2 && p > crit.floor && crit.q % p != 0 && is_prime(p);
}

inline bool criterion_predicate(u64 p, const PolyCriterion& crit) {
    if (!in_criterion_domain(p, crit))
        throw out_of_domain("criterion_predicate: p=" + std::to_string(p) + " outside the domain for q=" +
                            std::to_string(crit.q));
    for (const auto& side : crit.side_congruences)
        if (p % side.modulus != side.residue) return false;
    for (const auto& poly : crit.conditions)
        if (!poly_has_root(poly, p)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// q = 32 and q = 64
// ---------------------------------------------------------------------------

/// p = 1 mod 8 and x^8 = -4 (mod p) is solvable.
inline bool barrucand_cohn(u64 p) {
    if (p % 2 == 0) throw std::invalid_argument("barrucand_cohn: p must be odd");
    if (p % 8 != 1) return false;
    static const Polynomial x8_plus_4{{4, 0, 0, 0, 0, 0, 0, 0, 1}};
    return poly_has_root(x8_plus_4, p);
}

struct KaplanskyClass {
    u64 p;
    bool in_P32;
    bool in_P64;
};

inline KaplanskyClass kaplansky_classify(u64 p) {
    if (p % 8 != 1 || !is_prime(p)) throw std::invalid_argument("kaplansky_classify: p must be a prime = 1 mod 8");
    return {p, represent_definite(p, 32).has_value(), represent_definite(p, 64).has_value()};
}

// ---------------------------------------------------------------------------
// Multiplier rules: a prime is in a residue class iff l*p = a^2 + q b^2 for
// one of the listed multipliers.
// ---------------------------------------------------------------------------

struct MultiplierRule {
    std::string tag;
    u64 q;
    u64 modulus;
    std::vector<u64> residues;    // expansion of (2j+1)^2 mod modulus
    std::vector<u64> odd_roots;   // the 2j+1 values
    std::vector<u64> multipliers; // tried in this order
    u64 floor;                    // claim is for p > floor
    bool exclusive;               // at most one multiplier may succeed
};

namespace detail {

inline std::vector<u64> odd_numbers_below(u64 count) {
    std::vector<u64> out;
    for (u64 j = 0; j < count; ++j) out.push_back(2 * j + 1);
    return out;
}

inline std::vector<MultiplierRule> build_multiplier_rules() {
    std::vector<MultiplierRule> t = {
        {"thm41_q17", 17, 68, {1, 9, 13, 21, 25, 33, 49, 53}, odd_numbers_below(8), {1, 2}, 17, true},
        {"thm42_q11", 11, 22, {1, 3, 5, 9, 15}, odd_numbers_below(5), {1, 3}, 11, true},
        {"thm42_q19", 19, 38, {1, 5, 7, 9, 11, 17, 23, 25, 35}, odd_numbers_below(9), {4}, 19, false},
    };
    for (const auto& r : t)
        if (expand_residues(ResidueForm::squares, r.odd_roots, r.modulus) != r.residues)
            throw std::logic_error("multiplier rule: stored residues disagree with odd squares for " + r.tag);
    return t;
}

} // namespace detail

inline const std::vector<MultiplierRule>& multiplier_rules() {
    static const std::vector<MultiplierRule> table = detail::build_multiplier_rules();
    return table;
}

inline const MultiplierRule& multiplier_rule(u64 q) {
    for (const auto& r : multiplier_rules())
        if (r.q == q) return r;
    throw std::invalid_argument("no multiplier rule for q=" + std::to_string(q));
}

inline void require_above_floor(u64 p, const MultiplierRule& rule) {
    if (p <= rule.floor)
        throw std::invalid_argument(rule.tag + ": p must exceed " + std::to_string(rule.floor));
}

inline bool multiplier_predicate(u64 p, const MultiplierRule& rule) {
    require_above_floor(p, rule);
    return std::binary_search(rule.residues.begin(), rule.residues.end(), p % rule.modulus);
}

/// Every multiplier in the rule for which l*p = a^2 + q b^2 is solvable.
inline std::vector<Witness> multiplier_witnesses(u64 p, const MultiplierRule& rule) {
    require_above_floor(p, rule);
    std::vector<Witness> out;
    for (u64 l : rule.multipliers)
        if (auto w = represent_definite(p, rule.q, l)) out.push_back(*w);
    return out;
}

/// First applicable (l, a, b) in the rule's multiplier order.
inline std::optional<Witness> multiplier_witness(u64 p, const MultiplierRule& rule) {
    auto all = multiplier_witnesses(p, rule);
    if (all.empty()) return std::nullopt;
    return all.front();
}

inline bool q17_predicate(u64 p) { return multiplier_predicate(p, multiplier_rule(17)); }
inline std::optional<Witness> q17_witness(u64 p) { return multiplier_witness(p, multiplier_rule(17)); }

enum class Q11Q19Variant { q11, q19 };

inline const MultiplierRule& variant_rule(Q11Q19Variant v) {
    return multiplier_rule(v == Q11Q19Variant::q11 ? 11 : 19);
}

inline bool q11_q19_predicate(u64 p, Q11Q19Variant v) { return multiplier_predicate(p, variant_rule(v)); }

inline std::optional<Witness> q11_q19_witness(u64 p, Q11Q19Variant v) {
    return multiplier_witness(p, variant_rule(v));
}

} // namespace primeforms
