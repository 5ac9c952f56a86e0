// Acceptance runner: one PASS/FAIL line per criterion.
//
//   acceptance                 run every criterion
//   acceptance --criterion 5   run one
//
// Exit status is 0 only if every selected criterion passes.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>

#include "oracles.hpp"
#include "primeforms/cli.hpp"
#include "primeforms/primeforms.hpp"

using namespace primeforms;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> details;

    void fail(const std::string& why) {
        pass = false;
        details.push_back(why);
    }
    void note(const std::string& what) { details.push_back(what); }
};

std::string join(const std::vector<u64>& v, std::size_t limit = 12) {
    std::ostringstream s;
    for (std::size_t i = 0; i < v.size() && i < limit; ++i) s << (i ? "," : "") << v[i];
    if (v.size() > limit) s << ",... (" << v.size() << " total)";
    return s.str();
}

std::string fixture_dir = PRIMEFORMS_FIXTURE_DIR;

// 1. Residue rules for E(q), primes up to 1e5.
Outcome definite_rules() {
    Outcome o;
    u64 checked = 0;
    for (const auto& rule : rule_table()) {
        if (rule.family != Family::E) continue;
        auto r = verify_theorem("thm1_E", rule.q, 100000);
        checked += r.checked_count;
        if (!r.clean()) {
            std::vector<u64> ps;
            for (const auto& m : r.mismatches) ps.push_back(m.p);
            o.fail("E(" + std::to_string(rule.q) + ") mismatches at p=" + join(ps));
        }
    }
    o.note(std::to_string(checked) + " (q, p) pairs checked");
    return o;
}

// 2. Residue rules for H1(q), H2(q), q = 1..11, against the expected-findings fixture.
Outcome indefinite_rules() {
    Outcome o;
    std::ifstream f(fixture_dir + "/expected_findings.json");
    if (!f) {
        o.fail("cannot read expected_findings.json from " + fixture_dir);
        return o;
    }
    const json fixture = json::parse(f);
    const u64 bound = fixture.at("bound").get<u64>();
    using Key = std::tuple<std::string, u64, u64>;
    std::set<Key> expected, found;
    for (const auto& e : fixture.at("findings"))
        expected.insert({e.at("theorem").get<std::string>(), e.at("q").get<u64>(), e.at("p").get<u64>()});

    for (const std::string tag : {"thm2_H1", "thm3_H2"})
        for (u64 q = 1; q <= 11; ++q)
            for (const auto& m : verify_theorem(tag, q, bound).mismatches) found.insert({tag, q, m.p});

    std::map<std::pair<std::string, u64>, std::vector<u64>> unexpected, missing;
    for (const auto& k : found)
        if (!expected.count(k)) unexpected[{std::get<0>(k), std::get<1>(k)}].push_back(std::get<2>(k));
    for (const auto& k : expected)
        if (!found.count(k)) missing[{std::get<0>(k), std::get<1>(k)}].push_back(std::get<2>(k));

    for (const auto& [key, ps] : unexpected)
        o.fail("unexpected " + key.first + " q=" + std::to_string(key.second) + " p=" + join(ps));
    for (const auto& [key, ps] : missing)
        o.fail("expected finding not reported: " + key.first + " q=" + std::to_string(key.second) + " p=" + join(ps));
    o.note(std::to_string(found.size()) + " mismatches found, " + std::to_string(expected.size()) + " expected");
    return o;
}

// 3. Polynomial criteria, primes in each criterion's domain up to 1e4.
Outcome polynomial_criteria() {
    Outcome o;
    for (const auto& crit : criterion_table()) {
        auto r = verify_theorem("thm4_poly", crit.q, 10000);
        if (r.clean()) continue;
        std::vector<u64> ps;
        for (const auto& m : r.mismatches) ps.push_back(m.p);
        o.fail("q=" + std::to_string(crit.q) + " predicate true without a representation at p=" + join(ps));
    }
    return o;
}

// 4. x^8 = -4 criterion against the q = 32 polynomial criterion.
Outcome barrucand_cohn_equivalence() {
    Outcome o;
    const auto& c32 = *find_criterion(32);
    std::vector<u64> bad;
    u64 checked = 0;
    for_each_prime(3, 10000, [&](u64 p) {
        ++checked;
        if (barrucand_cohn(p) != criterion_predicate(p, c32)) bad.push_back(p);
    });
    if (!bad.empty()) o.fail("disagreement at p=" + join(bad));
    auto r = verify_theorem("barrucand_cohn", 32, 10000);
    if (!r.clean()) o.fail("x^8 = -4 criterion disagrees with a^2 + 32b^2 witnesses");
    o.note(std::to_string(checked) + " odd primes");
    return o;
}

// 5. P32 / P64 classification of primes 1 mod 8 below 1e5.
Outcome kaplansky() {
    Outcome o;
    std::vector<u64> bad9, bad1;
    for_each_prime(3, 99999, [&](u64 p) {
        if (p % 8 != 1) return;
        auto k = kaplansky_classify(p);
        if (p % 16 == 9 && k.in_P32 == k.in_P64) bad9.push_back(p);
        if (p % 16 == 1 && k.in_P32 != k.in_P64) bad1.push_back(p);
    });
    if (!bad9.empty()) o.fail("p = 9 mod 16 not in exactly one set: " + join(bad9));
    if (!bad1.empty()) o.fail("p = 1 mod 16 in exactly one set: " + join(bad1));
    return o;
}

Outcome multiplier_theorem(const std::string& tag, u64 q, u64 bound) {
    Outcome o;
    auto r = verify_theorem(tag, q, bound);
    for (const auto& m : r.mismatches) o.fail(m.kind + " failure at p=" + std::to_string(m.p));
    o.note(tag + ": " + std::to_string(r.checked_count) + " primes");
    return o;
}

// 6. q = 17 with multipliers 1, 2 to 1e5.
Outcome q17() { return multiplier_theorem("thm41_q17", 17, 100000); }

// 7. q = 11 with multipliers 1, 3 and q = 19 with multiplier 4, to 1e4.
Outcome q11_q19() {
    Outcome a = multiplier_theorem("thm42_q11", 11, 10000);
    Outcome b = multiplier_theorem("thm42_q19", 19, 10000);
    a.pass = a.pass && b.pass;
    a.details.insert(a.details.end(), b.details.begin(), b.details.end());
    return a;
}

// Orbit of (m, n) under the automorphisms of m^2 - mn + n^2.
std::set<std::pair<i64, i64>> eisenstein_orbit(i64 m, i64 n) {
    std::set<std::pair<i64, i64>> seen{{m, n}};
    std::vector<std::pair<i64, i64>> todo{{m, n}};
    while (!todo.empty()) {
        auto [x, y] = todo.back();
        todo.pop_back();
        for (auto next : {std::pair{y, x}, std::pair{-x, -y}, std::pair{x, x - y}})
            if (seen.insert(next).second) todo.push_back(next);
    }
    return seen;
}

// Smallest representative of (x, y) with 3x^2 - y^2 fixed, under sign changes
// and the unit 2 + sqrt(3).
std::pair<i64, i64> reduce_A(i64 x, i64 y) {
    x = std::abs(x);
    y = std::abs(y);
    while (true) {
        i64 nx = std::abs(2 * x - y), ny = std::abs(2 * y - 3 * x);
        if (nx >= x) return {x, y};
        x = nx;
        y = ny;
    }
}

// 8. Trinity sets.
Outcome trinity() {
    Outcome o;
    auto inc = verify_inclusions(10000);
    for (const auto& v : inc.violations) o.fail("inclusion " + v.relation + " fails at t=" + std::to_string(v.t));
    if (!inc.c_outside_ab || !inc.a_outside_bc || !inc.b_outside_ca) o.fail("missing strictness witness");
    else
        o.note("strictness witnesses " + std::to_string(*inc.c_outside_ab) + "," + std::to_string(*inc.a_outside_bc) +
               "," + std::to_string(*inc.b_outside_ca));

    auto eq = sum_of_squares_equivalence_failures(10000);
    if (!eq.empty()) o.fail(std::to_string(eq.size()) + " A-members where B and C membership differ");

    auto primes = twelve_k_plus_one_failures(10000);
    if (!primes.empty()) o.fail("2p in A&B&C disagrees with p = 1 mod 12 at p=" + join(primes));

    for (const auto& f : trinity_fixtures()) {
        if (!fixture_holds(f)) {
            o.fail("printed representation of " + std::to_string(f.p) + " does not evaluate");
            continue;
        }
        auto t = twelve_k_plus_one(f.p);
        if (!t) {
            o.fail("no triple computed for " + std::to_string(f.p));
            continue;
        }
        if (!(t->sum_of_squares == f.sum_of_squares)) o.fail("sum of squares differs for " + std::to_string(f.p));
        // computed C witness (x, y) has x^2 - xy + y^2 = p, the same shape as the printed pair
        if (!eisenstein_orbit(t->eisenstein.x, t->eisenstein.y).count({f.eisenstein.x, f.eisenstein.y}))
            o.fail("printed m^2 - mn + n^2 pair for " + std::to_string(f.p) + " is not equivalent to the computed one");
        if (reduce_A(t->three_x2_minus_y2.x, t->three_x2_minus_y2.y) !=
            reduce_A(f.three_x2_minus_y2.x, f.three_x2_minus_y2.y))
            o.fail("printed 3x^2 - y^2 pair for " + std::to_string(f.p) + " is not equivalent to the computed one");
    }

    std::mt19937_64 rng(8);
    std::uniform_int_distribution<i64> dist(-identity_input_limit, identity_input_limit);
    int identity_failures = 0;
    for (int i = 0; i < 10000; ++i)
        if (!identity_check(dist(rng), dist(rng), dist(rng), dist(rng))) ++identity_failures;
    if (identity_failures) o.fail(std::to_string(identity_failures) + " identity failures");
    return o;
}

// 9. At most one canonical witness per representable prime.
Outcome uniqueness() {
    Outcome o;
    for (const auto& rule : rule_table()) {
        if (rule.family != Family::E) continue;
        std::vector<u64> bad;
        for_each_prime(2, 10000, [&](u64 p) {
            if (!represent_definite(p, rule.q)) return;
            if (count_canonical_witnesses(p, rule.q) != 1) bad.push_back(p);
        });
        if (!bad.empty()) o.fail("q=" + std::to_string(rule.q) + " several witnesses at p=" + join(bad));
    }
    return o;
}

// 10. P1 = P4, P8 = P16, P5 < P1, P10 < P2.
Outcome set_relation_check() {
    Outcome o;
    for (const auto& r : set_relations(10000)) {
        if (!r.violations.empty()) o.fail(r.name + " violated at p=" + join(r.violations));
        if (r.proper_subset && !r.strictness_witness) o.fail(r.name + " has no strictness witness");
        if (r.strictness_witness) o.note(r.name + " strict at " + std::to_string(*r.strictness_witness));
    }
    return o;
}

// 11. H1(q) vs H2(q) on primes, q <= 20.
Outcome problem1() {
    Outcome o;
    auto report = explore_problem1(20, 10000);
    auto verdict = [&](u64 q) { return report.verdicts.at(q - 1); };
    for (u64 q : {1, 2, 5, 10})
        if (!verdict(q).equal) o.fail("q=" + std::to_string(q) + " should be equal");
    for (u64 q : {3, 4, 6, 7, 8, 9, 11}) {
        auto v = verdict(q);
        if (v.equal || !v.first_divergence) o.fail("q=" + std::to_string(q) + " should diverge");
    }
    std::vector<u64> equal;
    for (const auto& v : report.verdicts)
        if (v.equal) equal.push_back(v.q);
    o.note("equal for q=" + join(equal, 20));
    return o;
}

// 12. Indefinite witness search against brute force over 10x the bound.
Outcome indefinite_oracle() {
    Outcome o;
    u64 compared = 0;
    for (u64 q = 2; q <= 20; ++q) {
        u64 r = 0;
        while ((r + 1) * (r + 1) <= q) ++r;
        if (r * r == q) continue;
        const u64 u = oracle::pell(q).second;
        for (u64 n = 1; n <= 2000; ++n) {
            u64 s = 0;
            while ((s + 1) * (s + 1) <= n) ++s;
            const u64 b_limit = 10 * u * (s + 1);
            for (bool h1 : {true, false}) {
                auto ref = oracle::indefinite_rep(n, q, h1, b_limit);
                auto got = represent_indefinite(n, q, h1 ? Family::H1 : Family::H2);
                ++compared;
                const bool same = got.has_value() == ref.has_value() &&
                                  (!got || (got->a == ref->first && got->b == ref->second));
                if (!same) o.fail((h1 ? "H1(" : "H2(") + std::to_string(q) + ") n=" + std::to_string(n));
            }
        }
    }
    o.note(std::to_string(compared) + " comparisons");
    return o;
}

// 13. Reports are reproducible and independent of the worker count.
Outcome determinism() {
    Outcome o;
    auto run = [](std::vector<std::string> args) {
        args.insert(args.begin(), "primeforms");
        std::vector<const char*> argv;
        for (auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
        json j = json::parse(out.str());
        j.erase("elapsed_ms");
        return j.dump(2);
    };
    const std::vector<std::vector<std::string>> cases = {
        {"verify", "--theorem", "thm3_H2", "--q", "8", "--bound", "10000"},
        {"verify", "--theorem", "thm2_H1", "--q", "7", "--bound", "10000"},
        {"verify", "--theorem", "thm1_E", "--q", "13", "--bound", "100000"},
        {"verify", "--theorem", "thm41_q17", "--q", "17", "--bound", "20000"},
    };
    for (const auto& c : cases) {
        auto serial = c, parallel = c;
        serial.insert(serial.end(), {"--workers", "1"});
        parallel.insert(parallel.end(), {"--workers", "8"});
        const std::string first = run(serial), second = run(serial), third = run(parallel);
        if (first != second) o.fail("repeated run differs for " + c[2] + " q=" + c[4]);
        if (first != third) o.fail("parallel run differs for " + c[2] + " q=" + c[4]);
    }
    return o;
}

struct Criterion {
    int id;
    std::string title;
    std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all = {
        {1, "residue rules for a^2 + qb^2, p <= 100000", definite_rules},
        {2, "residue rules for qb^2 - a^2 and a^2 - qb^2 match expected findings, p <= 10000", indefinite_rules},
        {3, "polynomial criteria match representations, p <= 10000", polynomial_criteria},
        {4, "x^8 = -4 criterion equals the q = 32 criterion, p <= 10000", barrucand_cohn_equivalence},
        {5, "P32/P64 classification of primes 1 mod 8, p < 100000", kaplansky},
        {6, "q = 17 with multipliers 1, 2 and exclusivity, p <= 100000", q17},
        {7, "q = 11 (multipliers 1, 3) and q = 19 (multiplier 4), p <= 10000", q11_q19},
        {8, "A/B/C inclusions, sum-of-squares equivalence, 12k+1 primes, printed triples, identities", trinity},
        {9, "unique canonical witness per representable prime, p <= 10000", uniqueness},
        {10, "P1 = P4, P8 = P16, P5 < P1, P10 < P2, p <= 10000", set_relation_check},
        {11, "H1/H2 equality verdicts for q <= 20, p <= 10000", problem1},
        {12, "indefinite search equals brute force over 10x the bound, q <= 20, n <= 2000", indefinite_oracle},
        {13, "verify reports are byte-identical across runs and worker counts", determinism},
    };
    return all;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria"};
    int only = 0;
    app.add_option("--criterion", only, "run a single criterion (1-13)")->check(CLI::Range(1, 13));
    app.add_option("--fixtures", fixture_dir, "directory holding expected_findings.json");
    CLI11_PARSE(app, argc, argv);

    bool all_pass = true;
    for (const auto& c : criteria()) {
        if (only && c.id != only) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        all_pass = all_pass && o.pass;
        std::printf("[%s] criterion %d: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.title.c_str(), secs);
        for (const auto& d : o.details) std::printf("       %s\n", d.c_str());
        std::fflush(stdout);
    }
    return all_pass ? 0 : 1;
}
