#pragma once

/// @file forms.hpp
/// @brief Witness search for the three families
///   E(q)  = { a^2 + q b^2 },
///   H1(q) = { q b^2 - a^2 },
///   H2(q) = { a^2 - q b^2 },
/// restricted to positive integers, plus the constructive machinery around
/// them: short vectors from a modular square root, Euler-style multiplier
/// descent, and the Pell unit that bounds indefinite searches.
///
/// A witness is always canonical: a, b >= 0, smallest b first, then smallest a.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "primeforms/arith.hpp"
#include "primeforms/errors.hpp"

namespace primeforms {

enum class Family { E, H1, H2 };

constexpr std::string_view family_name(Family f) {
    switch (f) {
        case Family::E: return "E";
        case Family::H1: return "H1";
        case Family::H2: return "H2";
    }
    return "?";
}

inline std::optional<Family> parse_family(std::string_view s) {
    if (s == "E") return Family::E;
    if (s == "H1") return Family::H1;
    if (s == "H2") return Family::H2;
    return std::nullopt;
}

/// A family together with its parameter q >= 1.
struct FormInstance {
    Family family;
    u64 q;

    FormInstance(Family f, u64 q_) : family(f), q(q_) {
        if (q_ == 0) throw std::invalid_argument("FormInstance: q must be positive");
    }

    /// Exact value of the form at (a, b).
    i128 evaluate(i64 a, i64 b) const {
        i128 aa = static_cast<i128>(a) * a;
        i128 qbb = static_cast<i128>(q) * b * b;
        switch (family) {
            case Family::E: return aa + qbb;
            case Family::H1: return qbb - aa;
            case Family::H2: return aa - qbb;
        }
        return 0;
    }

    friend bool operator==(const FormInstance&, const FormInstance&) = default;
};

/// form(a, b) = multiplier * target. multiplier == 1 is a plain representation.
struct Witness {
    u64 a = 0;
    u64 b = 0;
    u64 multiplier = 1;
    u64 target = 0;

    friend bool operator==(const Witness&, const Witness&) = default;
};

inline bool witness_holds(const Witness& w, const FormInstance& inst) {
    if (w.a > static_cast<u64>(INT64_MAX) || w.b > static_cast<u64>(INT64_MAX)) return false;
    i128 lhs = inst.evaluate(static_cast<i64>(w.a), static_cast<i64>(w.b));
    i128 rhs = static_cast<i128>(w.multiplier) * w.target;
    return lhs == rhs;
}

namespace detail {

/// Compiled in when PRIMEFORMS_CHECK_WITNESSES is defined (test builds).
inline const Witness& audit(const Witness& w, const FormInstance& inst) {
#ifdef PRIMEFORMS_CHECK_WITNESSES
    if (!witness_holds(w, inst))
        throw std::logic_error("witness audit failed for " + std::string(family_name(inst.family)) +
                               "(" + std::to_string(inst.q) + ") at n=" + std::to_string(w.target));
#else
    (void)inst;
#endif
    return w;
}

inline u64 checked_product(u64 x, u64 y, const char* who) {
    u128 r = static_cast<u128>(x) * y;
    if (r > UINT64_MAX) throw bound_exceeded(std::string(who) + ": product exceeds 64 bits");
    return static_cast<u64>(r);
}

} // namespace detail

/// Short vector (a, b) != (0, 0) with a = x0*b (mod p) and |a|, |b| <= floor(sqrt(p)).
/// Truncated Euclid on (p, x0): the first remainder at or below sqrt(p)
/// together with its cofactor.
struct ThuePair {
    i64 a;
    i64 b;
};

inline ThuePair thue_small_pair(u64 x0, u64 p) {
    detail::require_odd_prime(p, "thue_small_pair");
    if (x0 >= p) throw std::invalid_argument("thue_small_pair: x0 must lie in [0, p)");
    const u64 m = isqrt(p);
    i128 r0 = p, r1 = x0;
    i128 t0 = 0, t1 = 1;
    while (r1 > static_cast<i128>(m)) {
        i128 q = r0 / r1;
        i128 r2 = r0 - q * r1;
        i128 t2 = t0 - q * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    return {static_cast<i64>(r1), static_cast<i64>(t1)};
}

/// Exhaustive search for a^2 + q b^2 = multiplier * n over 0 <= b <= sqrt(N/q).
inline std::optional<Witness> represent_definite(u64 n, u64 q, u64 multiplier = 1) {
    if (q == 0 || multiplier == 0) throw std::invalid_argument("represent_definite: q and multiplier must be positive");
    const u64 total = detail::checked_product(n, multiplier, "represent_definite");
    const FormInstance inst(Family::E, q);
    for (u64 b = 0;; ++b) {
        u128 qbb = static_cast<u128>(q) * b * b;
        if (qbb > total) break;
        if (auto a = exact_sqrt(total - static_cast<u64>(qbb)))
            return detail::audit(Witness{*a, b, multiplier, n}, inst);
    }
    return std::nullopt;
}

/// Number of (a, b) with a, b >= 0 and a^2 + q b^2 = p. For q = 1 the pairs
/// are unordered.
inline u64 count_canonical_witnesses(u64 p, u64 q) {
    if (q == 0) throw std::invalid_argument("count_canonical_witnesses: q must be positive");
    u64 count = 0;
    for (u64 b = 0; static_cast<u128>(q) * b * b <= p; ++b) {
        auto a = exact_sqrt(p - q * b * b);
        if (!a) continue;
        if (q == 1 && *a > b) continue;
        ++count;
    }
    return count;
}

/// a^2 + q b^2 = l*p built from x0 = sqrt(-q) mod p and the short vector of
/// x0. Since |a|, |b| <= sqrt(p), the multiplier satisfies 1 <= l <= q.
/// Returns nullopt when -q is a non-residue mod p.
inline std::optional<Witness> pigeonhole_multiple(u64 p, u64 q) {
    detail::require_odd_prime(p, "pigeonhole_multiple");
    if (q == 0) throw std::invalid_argument("pigeonhole_multiple: q must be positive");
    if (q % p == 0) return std::nullopt;
    auto x0 = sqrt_mod(-static_cast<i64>(q % p), p);
    if (!x0) return std::nullopt;
    auto [a, b] = thue_small_pair(*x0, p);
    u64 ua = static_cast<u64>(a < 0 ? -a : a);
    u64 ub = static_cast<u64>(b < 0 ? -b : b);
    u128 value = static_cast<u128>(ua) * ua + static_cast<u128>(q) * ub * ub;
    if (value % p != 0) throw std::logic_error("pigeonhole_multiple: value not divisible by p");
    Witness w{ua, ub, static_cast<u64>(value / p), p};
    return detail::audit(w, FormInstance(Family::E, q));
}

/// Divides a definite witness by g = gcd(a, b). g^2 must divide the multiplier.
inline Witness primitive_part(const Witness& w) {
    u64 g = gcd_u64(w.a, w.b);
    if (g <= 1) return w;
    u64 gg = g * g;
    if (w.multiplier % gg != 0)
        throw std::invalid_argument("primitive_part: gcd^2 does not divide the multiplier");
    return Witness{w.a / g, w.b / g, w.multiplier / gg, w.target};
}

/// Auxiliary representation c^2 + q d^2 = L with multiplier | L, used to
/// lower a multiplier from l to L / l.
struct AuxiliaryRep {
    u64 q;
    u64 multiplier;
    u64 c;
    u64 d;
};

inline const std::vector<AuxiliaryRep>& auxiliary_table() {
    static const std::vector<AuxiliaryRep> table = {
        {17, 13, 3, 1},  // 26 = 3^2 + 17*1^2
        {17, 9, 1, 1},   // 18 = 1^2 + 17*1^2
    };
    return table;
}

/// One reduction of a^2 + q b^2 = l*p (gcd(a, b) = 1, l > 1) to a
/// representation with a strictly smaller multiplier.
///
/// l = q with q | a gives p = b^2 + q (a/q)^2 directly. Otherwise an
/// auxiliary representation L = c^2 + q d^2 with l | L is composed with the
/// witness after scaling by k = L/l:
///   (k^2 l p) * L = (k a c +- q k b d)^2 + q (k a d -+ k b c)^2,
/// and L divides both components for one choice of sign, leaving k*p.
inline Witness descent_step(const Witness& w, u64 q) {
    const FormInstance inst(Family::E, q);
    if (!witness_holds(w, inst)) throw std::invalid_argument("descent_step: input is not a witness");
    if (w.multiplier <= 1) throw std::invalid_argument("descent_step: multiplier must exceed 1");
    if (gcd_u64(w.a, w.b) != 1) throw std::invalid_argument("descent_step: gcd(a, b) must be 1");

    if (w.multiplier == q && w.a % q == 0)
        return detail::audit(Witness{w.b, w.a / q, 1, w.target}, inst);

    const auto& table = auxiliary_table();
    auto it = std::find_if(table.begin(), table.end(), [&](const AuxiliaryRep& r) {
        return r.q == q && r.multiplier == w.multiplier;
    });
    if (it == table.end())
        throw not_applicable("descent_step: no auxiliary representation for q=" + std::to_string(q) +
                             ", multiplier=" + std::to_string(w.multiplier));

    const i128 big_l = static_cast<i128>(it->c) * it->c + static_cast<i128>(q) * it->d * it->d;
    const i128 k = big_l / static_cast<i128>(w.multiplier);
    const i128 x = k * static_cast<i128>(w.a);
    const i128 y = k * static_cast<i128>(w.b);
    const i128 c = it->c, d = it->d, qq = q;

    for (int sign : {1, -1}) {
        i128 first = x * c + sign * qq * y * d;
        i128 second = x * d - sign * y * c;
        if (first % big_l != 0 || second % big_l != 0) continue;
        i128 e = first / big_l;
        i128 f = second / big_l;
        if (e < 0) e = -e;
        if (f < 0) f = -f;
        Witness out{static_cast<u64>(e), static_cast<u64>(f), static_cast<u64>(k), w.target};
        if (!witness_holds(out, inst) || out.multiplier >= w.multiplier) continue;
        return detail::audit(out, inst);
    }
    throw not_applicable("descent_step: auxiliary representation does not divide either composition");
}

/// Periodic continued fraction of sqrt(q): [a0; period...], where the period
/// ends with 2*a0.
struct CFExpansion {
    u64 q;
    u64 a0;
    std::vector<u64> period;
};

inline CFExpansion cf_sqrt(u64 q) {
    if (q < 2 || exact_sqrt(q)) throw std::invalid_argument("cf_sqrt: q must be a non-square >= 2");
    const u64 a0 = isqrt(q);
    CFExpansion cf{q, a0, {}};
    u64 m = 0, d = 1, a = a0;
    while (a != 2 * a0) {
        m = d * a - m;
        d = (q - m * m) / d;
        a = (a0 + m) / d;
        cf.period.push_back(a);
    }
    return cf;
}

/// Minimal (t, u), u >= 1, with t^2 - q u^2 = 1.
struct PellSolution {
    u64 t;
    u64 u;
    u64 q;
};

inline PellSolution pell_fundamental(u64 q) {
    const CFExpansion cf = cf_sqrt(q);
    // Convergents h/k of sqrt(q); the first with h^2 - q k^2 = 1 is minimal.
    u128 h_prev = 1, h = cf.a0;
    u128 k_prev = 0, k = 1;
    std::size_t i = 0;
    while (true) {
        if (h <= UINT64_MAX && k <= UINT64_MAX) {
            u128 hh = h * h;
            u128 qkk = static_cast<u128>(q) * k * k;
            if (hh == qkk + 1) return PellSolution{static_cast<u64>(h), static_cast<u64>(k), q};
        } else {
            throw bound_exceeded("pell_fundamental: solution exceeds 64 bits for q=" + std::to_string(q));
        }
        u128 a = cf.period[i % cf.period.size()];
        ++i;
        u128 h_next = a * h + h_prev;
        u128 k_next = a * k + k_prev;
        h_prev = h;
        h = h_next;
        k_prev = k;
        k = k_next;
    }
}

namespace detail {

/// Square q = s^2: enumerate n = d1 * d2, d1 <= d2, with
///   H2: d1 = a - s b, d2 = a + s b;   H1: d1 = s b - a, d2 = s b + a.
inline std::optional<Witness> represent_square_q(u64 n, u64 q, u64 s, Family family) {
    std::optional<Witness> best;
    for (u64 d1 = 1; d1 * d1 <= n; ++d1) {
        if (n % d1 != 0) continue;
        u64 d2 = n / d1;
        if ((d1 + d2) % 2 != 0) continue;
        u64 half_sum = (d1 + d2) / 2;
        u64 half_diff = (d2 - d1) / 2;
        Witness w{0, 0, 1, n};
        if (family == Family::H2) {
            if (half_diff % s != 0) continue;
            w.a = half_sum;
            w.b = half_diff / s;
        } else {
            if (half_sum % s != 0) continue;
            w.a = half_diff;
            w.b = half_sum / s;
        }
        if (!best || w.b < best->b || (w.b == best->b && w.a < best->a)) best = w;
    }
    if (best) audit(*best, FormInstance(family, q));
    return best;
}

} // namespace detail

/// Search bound for b used by represent_indefinite: u * (floor(sqrt(n)) + 1),
/// with (t, u) the fundamental Pell solution of q.
inline u64 indefinite_search_bound(u64 n, u64 q) {
    const PellSolution pell = pell_fundamental(q);
    const u64 bound = detail::checked_product(pell.u, isqrt(n) + 1, "indefinite_search_bound");
    u128 top = static_cast<u128>(bound) * bound * q + n;
    if (bound > UINT32_MAX || top > UINT64_MAX)
        throw bound_exceeded("represent_indefinite: b^2 q overflows for n=" + std::to_string(n) +
                             ", q=" + std::to_string(q));
    return bound;
}

/// Witness for q b^2 - a^2 = n (H1) or a^2 - q b^2 = n (H2).
inline std::optional<Witness> represent_indefinite(u64 n, u64 q, Family family) {
    if (family == Family::E) throw std::invalid_argument("represent_indefinite: family must be H1 or H2");
    if (n == 0 || q == 0) throw std::invalid_argument("represent_indefinite: n and q must be positive");
    if (auto s = exact_sqrt(q)) return detail::represent_square_q(n, q, *s, family);

    const u64 bound = indefinite_search_bound(n, q);
    const FormInstance inst(family, q);
    for (u64 b = 0; b <= bound; ++b) {
        u64 qbb = q * b * b;
        if (family == Family::H2) {
            if (auto a = exact_sqrt(n + qbb)) return detail::audit(Witness{*a, b, 1, n}, inst);
        } else if (qbb >= n) {
            if (auto a = exact_sqrt(qbb - n)) return detail::audit(Witness{*a, b, 1, n}, inst);
        }
    }
    return std::nullopt;
}

/// Canonical witness for n in the family, or nullopt.
inline std::optional<Witness> represent(u64 n, const FormInstance& inst) {
    if (n == 0) throw std::invalid_argument("represent: n must be positive");
    if (inst.family == Family::E) return represent_definite(n, inst.q, 1);
    return represent_indefinite(n, inst.q, inst.family);
}

inline bool in_set(u64 n, const FormInstance& inst) { return represent(n, inst).has_value(); }

} // namespace primeforms
