#pragma once

/// @file harness.hpp
/// @brief Range verification: every predicate is paired with a witness
/// search over the primes up to a bound, and every disagreement is recorded.
///
/// Ranges are split into contiguous chunks that run on separate threads;
/// chunk results are concatenated in order, so output does not depend on the
/// worker count.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <future>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "primeforms/arith.hpp"
#include "primeforms/errors.hpp"
#include "primeforms/forms.hpp"
#include "primeforms/rules.hpp"
#include "primeforms/sieve.hpp"

namespace primeforms {

inline constexpr u64 verify_bound_budget = 100'000'000;
inline constexpr const char* workers_env_var = "PRIMEFORMS_WORKERS";

/// Worker count from PRIMEFORMS_WORKERS, else the available parallelism.
inline unsigned default_workers() {
    if (const char* env = std::getenv(workers_env_var)) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Splits [0, count) into `workers` contiguous chunks, runs fn(begin, end)
/// on each, and returns the results in chunk order.
template <typename Fn>
auto run_partitioned(std::size_t count, unsigned workers, Fn fn) {
    using Result = decltype(fn(std::size_t{0}, std::size_t{0}));
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    std::vector<Result> results;
    if (workers == 1) {
        results.push_back(fn(0, count));
        return results;
    }
    std::vector<std::future<Result>> futures;
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t begin = 0; begin < count; begin += chunk)
        futures.push_back(std::async(std::launch::async, fn, begin, std::min(count, begin + chunk)));
    for (auto& f : futures) results.push_back(f.get());
    return results;
}

// ---------------------------------------------------------------------------
// Per-theorem checkers
// ---------------------------------------------------------------------------

struct PrimeOutcome {
    bool predicate = false;
    bool witness_found = false;
    std::optional<Witness> witness;
    bool exclusivity_violated = false;
};

/// A predicate and its witness oracle for one (theorem, q).
struct TheoremChecker {
    std::string tag;
    u64 q;
    std::string family;
    u64 bound_budget;
    std::function<bool(u64)> in_domain;
    std::function<PrimeOutcome(u64)> evaluate;
};

inline const std::vector<std::string>& theorem_tags() {
    static const std::vector<std::string> tags = {
        "thm1_E",    "thm2_H1",   "thm3_H2",   "thm4_poly",      "thm5_kaplansky",
        "thm41_q17", "thm42_q11", "thm42_q19", "barrucand_cohn",
    };
    return tags;
}

inline TheoremChecker make_checker(const std::string& tag, u64 q) {
    auto unknown = [&] {
        return std::invalid_argument("no rule for theorem '" + tag + "' with q=" + std::to_string(q));
    };

    if (tag == "thm1_E" || tag == "thm2_H1" || tag == "thm3_H2") {
        const Family family = tag == "thm1_E" ? Family::E : (tag == "thm2_H1" ? Family::H1 : Family::H2);
        const ResidueRule* rule = find_rule(family, q);
        if (!rule) throw unknown();
        const FormInstance inst(family, q);
        return {tag, q, std::string(family_name(family)), verify_bound_budget,
                [q](u64 p) { return (2 * q) % p != 0; },
                [rule, inst](u64 p) {
                    PrimeOutcome o;
                    o.predicate = residue_predicate(p, *rule);
                    o.witness = represent(p, inst);
                    o.witness_found = o.witness.has_value();
                    return o;
                }};
    }

    if (tag == "thm4_poly") {
        const PolyCriterion* crit = find_criterion(q);
        if (!crit) throw unknown();
        return {tag, q, "E", root_scan_budget - 1,
                [crit](u64 p) { return in_criterion_domain(p, *crit); },
                [crit, q](u64 p) {
                    PrimeOutcome o;
                    o.predicate = criterion_predicate(p, *crit);
                    o.witness = represent_definite(p, q);
                    o.witness_found = o.witness.has_value();
                    return o;
                }};
    }

    if (tag == "barrucand_cohn") {
        if (q != 32) throw unknown();
        return {tag, q, "E", root_scan_budget - 1, [](u64 p) { return p % 2 == 1; },
                [](u64 p) {
                    PrimeOutcome o;
                    o.predicate = barrucand_cohn(p);
                    o.witness = represent_definite(p, 32);
                    o.witness_found = o.witness.has_value();
                    return o;
                }};
    }

    if (tag == "thm5_kaplansky") {
        // predicate: p = 9 mod 16; oracle: exactly one of P32, P64 holds.
        if (q != 32) throw unknown();
        return {tag, q, "E", verify_bound_budget, [](u64 p) { return p % 8 == 1; },
                [](u64 p) {
                    PrimeOutcome o;
                    auto w32 = represent_definite(p, 32);
                    auto w64 = represent_definite(p, 64);
                    o.predicate = p % 16 == 9;
                    o.witness_found = w32.has_value() != w64.has_value();
                    o.witness = w32 ? w32 : w64;
                    return o;
                }};
    }

    if (tag == "thm41_q17" || tag == "thm42_q11" || tag == "thm42_q19") {
        const MultiplierRule* rule = nullptr;
        for (const auto& r : multiplier_rules())
            if (r.tag == tag) rule = &r;
        if (!rule || rule->q != q) throw unknown();
        return {tag, q, "E", verify_bound_budget, [rule](u64 p) { return p > rule->floor; },
                [rule](u64 p) {
                    PrimeOutcome o;
                    o.predicate = multiplier_predicate(p, *rule);
                    auto all = multiplier_witnesses(p, *rule);
                    o.witness_found = !all.empty();
                    if (!all.empty()) o.witness = all.front();
                    o.exclusivity_violated = rule->exclusive && all.size() > 1;
                    return o;
                }};
    }

    throw std::invalid_argument("unknown theorem tag '" + tag + "'");
}

// ---------------------------------------------------------------------------
// Verification reports
// ---------------------------------------------------------------------------

struct Mismatch {
    u64 p;
    bool predicate;
    bool witness_found;
    std::optional<Witness> witness;
    std::string kind;  // "biconditional" or "exclusivity"

    friend bool operator==(const Mismatch&, const Mismatch&) = default;
};

struct VerificationReport {
    std::string theorem;
    u64 q = 0;
    std::string family;
    u64 prime_bound = 0;
    u64 checked_count = 0;
    std::vector<Mismatch> mismatches;
    double elapsed_ms = 0;
    std::string table_version = primeforms::table_version;

    bool clean() const { return mismatches.empty(); }
};

inline VerificationReport verify_theorem(const std::string& tag, u64 q, u64 prime_bound,
                                         unsigned workers = default_workers()) {
    const auto start = std::chrono::steady_clock::now();
    const TheoremChecker checker = make_checker(tag, q);
    if (prime_bound > checker.bound_budget)
        throw budget_exceeded("verify: bound " + std::to_string(prime_bound) + " exceeds the budget " +
                              std::to_string(checker.bound_budget) + " for " + tag);

    std::vector<u64> primes;
    for_each_prime(2, prime_bound, [&](u64 p) {
        if (checker.in_domain(p)) primes.push_back(p);
    });

    auto chunks = run_partitioned(primes.size(), workers, [&](std::size_t begin, std::size_t end) {
        std::vector<Mismatch> found;
        for (std::size_t i = begin; i < end; ++i) {
            const u64 p = primes[i];
            const PrimeOutcome o = checker.evaluate(p);
            if (o.predicate != o.witness_found)
                found.push_back({p, o.predicate, o.witness_found, o.witness, "biconditional"});
            if (o.exclusivity_violated)
                found.push_back({p, o.predicate, o.witness_found, o.witness, "exclusivity"});
        }
        return found;
    });

    VerificationReport report;
    report.theorem = tag;
    report.q = q;
    report.family = checker.family;
    report.prime_bound = prime_bound;
    report.checked_count = primes.size();
    for (auto& c : chunks) report.mismatches.insert(report.mismatches.end(), c.begin(), c.end());
    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
}

// ---------------------------------------------------------------------------
// H1(q) vs H2(q) over the primes
// ---------------------------------------------------------------------------

inline constexpr u64 problem_q_budget = 50;

struct FamilyComparison {
    u64 q;
    bool equal;
    std::optional<u64> first_divergence;
    bool divergence_in_H1 = false;
    bool divergence_in_H2 = false;

    friend bool operator==(const FamilyComparison&, const FamilyComparison&) = default;
};

/// First prime <= bound lying in exactly one of H1(q), H2(q).
inline FamilyComparison compare_h1_h2(u64 q, u64 prime_bound, unsigned workers = default_workers()) {
    const auto primes = primes_up_to(prime_bound);
    const FormInstance h1(Family::H1, q), h2(Family::H2, q);
    auto chunks = run_partitioned(primes.size(), workers, [&](std::size_t begin, std::size_t end) {
        std::optional<FamilyComparison> first;
        for (std::size_t i = begin; i < end && !first; ++i) {
            bool a = in_set(primes[i], h1);
            bool b = in_set(primes[i], h2);
            if (a != b) first = FamilyComparison{q, false, primes[i], a, b};
        }
        return first;
    });
    for (auto& c : chunks)
        if (c) return *c;
    return {q, true, std::nullopt, false, false};
}

struct ProblemOneReport {
    u64 q_max;
    u64 prime_bound;
    std::vector<FamilyComparison> verdicts;
};

inline ProblemOneReport explore_problem1(u64 q_max, u64 prime_bound, unsigned workers = default_workers()) {
    if (q_max > problem_q_budget)
        throw budget_exceeded("explore problem1: q_max above " + std::to_string(problem_q_budget));
    if (q_max == 0) throw std::invalid_argument("explore problem1: q_max must be positive");
    ProblemOneReport report{q_max, prime_bound, {}};
    for (u64 q = 1; q <= q_max; ++q) report.verdicts.push_back(compare_h1_h2(q, prime_bound, workers));
    return report;
}

struct ProblemTwoVerdict {
    u64 q1;
    u64 q2;
    u64 prime_bound;
    FamilyComparison q1_result;
    FamilyComparison q2_result;
    FamilyComparison product_result;

    /// Both factors showed equality, so the product is a genuine test case.
    bool premise_holds() const { return q1_result.equal && q2_result.equal; }
};

/// Empirical check of whether equality for coprime q1, q2 carries over to
/// q1*q2. The factors' own verdicts are reported alongside; no proof is
/// claimed either way.
inline ProblemTwoVerdict explore_problem2(u64 q1, u64 q2, u64 prime_bound, unsigned workers = default_workers()) {
    if (q1 == 0 || q2 == 0) throw std::invalid_argument("explore problem2: q1 and q2 must be positive");
    if (gcd_u64(q1, q2) != 1) throw std::invalid_argument("explore problem2: q1 and q2 must be coprime");
    const u64 product = q1 * q2;
    if (product > problem_q_budget)
        throw budget_exceeded("explore problem2: q1*q2 above " + std::to_string(problem_q_budget));
    return {q1,
            q2,
            prime_bound,
            compare_h1_h2(q1, prime_bound, workers),
            compare_h1_h2(q2, prime_bound, workers),
            compare_h1_h2(product, prime_bound, workers)};
}

// ---------------------------------------------------------------------------
// Relations between the prime sets P_q = { odd p : p = a^2 + q b^2 }
// ---------------------------------------------------------------------------

struct SetRelation {
    std::string name;
    u64 lhs_q;
    u64 rhs_q;
    bool proper_subset;  // false: equality
    std::vector<u64> violations;
    std::optional<u64> strictness_witness;  // in P_rhs but not P_lhs

    bool holds() const { return violations.empty() && (!proper_subset || strictness_witness.has_value()); }
};

inline std::vector<SetRelation> set_relations(u64 prime_bound) {
    std::vector<SetRelation> rels = {
        {"P1 = P4", 1, 4, false, {}, {}},
        {"P8 = P16", 8, 16, false, {}, {}},
        {"P5 < P1", 5, 1, true, {}, {}},
        {"P10 < P2", 10, 2, true, {}, {}},
    };
    for_each_prime(3, prime_bound, [&](u64 p) {
        for (auto& r : rels) {
            const bool lhs = represent_definite(p, r.lhs_q).has_value();
            const bool rhs = represent_definite(p, r.rhs_q).has_value();
            if (r.proper_subset) {
                if (lhs && !rhs) r.violations.push_back(p);
                if (rhs && !lhs && !r.strictness_witness) r.strictness_witness = p;
            } else if (lhs != rhs) {
                r.violations.push_back(p);
            }
        }
    });
    return rels;
}

} // namespace primeforms
