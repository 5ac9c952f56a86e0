#pragma once

/// @file trinity.hpp
/// @brief The sets
///   A = { 3x^2 - y^2 },  B = { x^2 + y^2 },  C = { 2(x^2 - xy + y^2) }
/// over the integers: membership with witnesses, the pairwise inclusions
/// A&B < C, B&C < A, C&A < B, and the primes p with 2p in all three.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "primeforms/arith.hpp"
#include "primeforms/errors.hpp"
#include "primeforms/forms.hpp"
#include "primeforms/sieve.hpp"

namespace primeforms {

struct IntPair {
    i64 x;
    i64 y;

    friend bool operator==(const IntPair&, const IntPair&) = default;
};

constexpr i128 value_A(i64 x, i64 y) { return 3 * static_cast<i128>(x) * x - static_cast<i128>(y) * y; }
constexpr i128 value_B(i64 x, i64 y) { return static_cast<i128>(x) * x + static_cast<i128>(y) * y; }
constexpr i128 value_C(i64 x, i64 y) {
    return 2 * (static_cast<i128>(x) * x - static_cast<i128>(x) * y + static_cast<i128>(y) * y);
}

struct TrinityMembership {
    i64 t;
    std::optional<IntPair> a_witness;
    std::optional<IntPair> b_witness;
    std::optional<IntPair> c_witness;

    bool in_A() const { return a_witness.has_value(); }
    bool in_B() const { return b_witness.has_value(); }
    bool in_C() const { return c_witness.has_value(); }
};

inline constexpr u64 default_trinity_budget = u64{1} << 40;

namespace detail {

inline std::optional<IntPair> find_A(i64 t) {
    if (t == 0) return IntPair{0, 0};
    // t > 0: 3x^2 - y^2 = t is H1(3); t < 0: y^2 - 3x^2 = -t is H2(3).
    auto w = t > 0 ? represent_indefinite(static_cast<u64>(t), 3, Family::H1)
                   : represent_indefinite(static_cast<u64>(-t), 3, Family::H2);
    if (!w) return std::nullopt;
    return IntPair{static_cast<i64>(w->b), static_cast<i64>(w->a)};
}

inline std::optional<IntPair> find_B(i64 t) {
    if (t < 0) return std::nullopt;
    if (t == 0) return IntPair{0, 0};
    auto w = represent_definite(static_cast<u64>(t), 1);
    if (!w) return std::nullopt;
    return IntPair{static_cast<i64>(w->a), static_cast<i64>(w->b)};
}

/// x^2 - xy + y^2 = m  <=>  (2x - y)^2 + 3y^2 = 4m.
inline std::optional<IntPair> find_C(i64 t) {
    if (t < 0 || t % 2 != 0) return std::nullopt;
    const u64 four_m = 2 * static_cast<u64>(t);
    for (u64 y = 0; 3 * y * y <= four_m; ++y) {
        auto s = exact_sqrt(four_m - 3 * y * y);
        if (s && (*s + y) % 2 == 0) return IntPair{static_cast<i64>((*s + y) / 2), static_cast<i64>(y)};
    }
    return std::nullopt;
}

} // namespace detail

/// Membership of t in A, B and C with a witness for each set it belongs to.
/// |t| above magnitude_budget is rejected with bound_exceeded.
inline TrinityMembership membership(i64 t, u64 magnitude_budget = default_trinity_budget) {
    u64 magnitude = t < 0 ? static_cast<u64>(-(t + 1)) + 1 : static_cast<u64>(t);
    if (magnitude > magnitude_budget)
        throw bound_exceeded("membership: |t|=" + std::to_string(magnitude) + " exceeds the budget");
    return {t, detail::find_A(t), detail::find_B(t), detail::find_C(t)};
}

struct InclusionViolation {
    i64 t;
    std::string relation;
};

/// Result of scanning [0, N] for the three inclusions and their strictness.
struct InclusionReport {
    u64 bound;
    std::vector<InclusionViolation> violations;
    std::optional<i64> c_outside_ab;  // in C but not in A&B
    std::optional<i64> a_outside_bc;  // in A but not in B&C
    std::optional<i64> b_outside_ca;  // in B but not in C&A

    bool clean() const { return violations.empty() && c_outside_ab && a_outside_bc && b_outside_ca; }
};

inline InclusionReport verify_inclusions(u64 bound) {
    if (bound < 100) throw std::invalid_argument("verify_inclusions: bound must be at least 100");
    InclusionReport report{bound, {}, {}, {}, {}};
    for (u64 i = 0; i <= bound; ++i) {
        const i64 t = static_cast<i64>(i);
        const auto m = membership(t);
        const bool a = m.in_A(), b = m.in_B(), c = m.in_C();
        if (a && b && !c) report.violations.push_back({t, "A&B in C"});
        if (b && c && !a) report.violations.push_back({t, "B&C in A"});
        if (c && a && !b) report.violations.push_back({t, "C&A in B"});
        if (c && !(a && b) && !report.c_outside_ab) report.c_outside_ab = t;
        if (a && !(b && c) && !report.a_outside_bc) report.a_outside_bc = t;
        if (b && !(c && a) && !report.b_outside_ca) report.b_outside_ca = t;
    }
    return report;
}

/// Values t in [-N, N] with t in A for which (t in B) != (t in C).
inline std::vector<i64> sum_of_squares_equivalence_failures(u64 bound) {
    std::vector<i64> out;
    const i64 n = static_cast<i64>(bound);
    for (i64 t = -n; t <= n; ++t) {
        const auto m = membership(t);
        if (m.in_A() && m.in_B() != m.in_C()) out.push_back(t);
    }
    return out;
}

inline constexpr i64 identity_input_limit = i64{1} << 29;

/// Evaluates both sides of
///   (y^2 - 3x^2)(v^2 - 3u^2) = (3ux + vy)^2 - 3(xv + uy)^2,
///   2(x^2 - 3y^2) = 3(x + y)^2 - (x + 3y)^2
/// exactly and reports whether both hold.
inline bool identity_check(i64 x, i64 y, i64 u, i64 v) {
    for (i64 z : {x, y, u, v})
        if (z > identity_input_limit || z < -identity_input_limit)
            throw std::overflow_error("identity_check: inputs must lie within +-2^29");
    const i128 X = x, Y = y, U = u, V = v;
    const i128 product_lhs = (Y * Y - 3 * X * X) * (V * V - 3 * U * U);
    const i128 s = 3 * U * X + V * Y;
    const i128 d = X * V + U * Y;
    const i128 product_rhs = s * s - 3 * d * d;
    const i128 double_lhs = 2 * (X * X - 3 * Y * Y);
    const i128 double_rhs = 3 * (X + Y) * (X + Y) - (X + 3 * Y) * (X + 3 * Y);
    return product_lhs == product_rhs && double_lhs == double_rhs;
}

/// 2p written in each of the three shapes:
///   a^2 + b^2 = 2p,  m^2 - mn + n^2 = p,  3x^2 - y^2 = 2p.
struct TrinityTriple {
    IntPair sum_of_squares;
    IntPair eisenstein;
    IntPair three_x2_minus_y2;
};

/// For a prime p = 1 mod 12, witnesses that 2p lies in A, B and C. Pairs are
/// ordered (smaller, larger) for the first two shapes.
inline std::optional<TrinityTriple> twelve_k_plus_one(u64 p) {
    if (p <= 3 || !is_prime(p)) throw std::invalid_argument("twelve_k_plus_one: p must be a prime > 3");
    if (p % 12 != 1) return std::nullopt;
    const auto m = membership(static_cast<i64>(2 * p));
    if (!m.in_A() || !m.in_B() || !m.in_C())
        throw std::logic_error("twelve_k_plus_one: 2p missing from a set for p=" + std::to_string(p));
    auto ordered = [](IntPair w) {
        if (w.x < 0) w.x = -w.x;
        if (w.y < 0) w.y = -w.y;
        return w.x <= w.y ? w : IntPair{w.y, w.x};
    };
    return TrinityTriple{ordered(*m.b_witness), ordered(*m.c_witness), *m.a_witness};
}

/// Primes 3 < p <= bound for which (2p in A&B&C) disagrees with p = 1 mod 12.
inline std::vector<u64> twelve_k_plus_one_failures(u64 bound) {
    std::vector<u64> out;
    for (u64 p : primes_up_to(bound)) {
        if (p <= 3) continue;
        const auto m = membership(static_cast<i64>(2 * p));
        const bool in_all = m.in_A() && m.in_B() && m.in_C();
        if (in_all != (p % 12 == 1)) out.push_back(p);
    }
    return out;
}

/// Printed representations of 13, 37 and 61 in the three shapes, kept
/// verbatim and checked by evaluation.
struct TrinityFixture {
    u64 p;
    IntPair sum_of_squares;    // p = (a^2 + b^2) / 2
    IntPair eisenstein;        // p = m^2 - mn + n^2
    IntPair three_x2_minus_y2; // p = (3x^2 - y^2) / 2
};

inline const std::vector<TrinityFixture>& trinity_fixtures() {
    static const std::vector<TrinityFixture> fixtures = {
        {13, {1, 5}, {3, 4}, {3, 1}},
        {37, {5, 7}, {3, 7}, {5, 1}},
        {61, {1, 11}, {4, 9}, {9, 11}},
    };
    return fixtures;
}

inline bool fixture_holds(const TrinityFixture& f) {
    const i128 two_p = 2 * static_cast<i128>(f.p);
    const auto& e = f.eisenstein;
    const i128 eis = static_cast<i128>(e.x) * e.x - static_cast<i128>(e.x) * e.y + static_cast<i128>(e.y) * e.y;
    return value_B(f.sum_of_squares.x, f.sum_of_squares.y) == two_p && eis == static_cast<i128>(f.p) &&
           value_A(f.three_x2_minus_y2.x, f.three_x2_minus_y2.y) == two_p;
}

} // namespace primeforms
