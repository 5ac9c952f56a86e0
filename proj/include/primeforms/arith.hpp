#pragma once

/// @file arith.hpp
/// @brief Modular arithmetic kernel: mul/pow mod, extended gcd, deterministic
/// Miller-Rabin, Legendre and Jacobi symbols, modular square roots.
///
/// Everything works in 64-bit unsigned words. Products are widened to 128 bits
/// before reduction, so any modulus up to 2^64-1 is safe.

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace primeforms {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

inline constexpr u64 max_prime_candidate = (u64{1} << 63) - 1;

/// Reduces a signed value into [0, modulus).
constexpr u64 reduce_mod(i64 value, u64 modulus) {
    if (value >= 0) return static_cast<u64>(value) % modulus;
    // -(value+1) avoids negating INT64_MIN.
    u64 neg = static_cast<u64>(-(value + 1)) + 1;
    u64 r = neg % modulus;
    return r == 0 ? 0 : modulus - r;
}

constexpr u64 mul_mod(u64 a, u64 b, u64 modulus) {
    return static_cast<u64>(static_cast<u128>(a) * b % modulus);
}

/// base^exponent mod modulus for an already-reduced unsigned base.
constexpr u64 pow_mod_u(u64 base, u64 exponent, u64 modulus) {
    if (modulus == 1) return 0;
    u64 b = base % modulus;
    u64 result = 1;
    while (exponent != 0) {
        if (exponent & 1u) result = mul_mod(result, b, modulus);
        b = mul_mod(b, b, modulus);
        exponent >>= 1;
    }
    return result;
}

inline u64 pow_mod(i64 base, u64 exponent, u64 modulus) {
    if (modulus == 0) throw std::invalid_argument("pow_mod: modulus must be positive");
    return pow_mod_u(reduce_mod(base, modulus), exponent, modulus);
}

struct GcdResult {
    i64 g;
    i64 s;
    i64 t;
};

/// g = gcd(a, b) = s*a + t*b with g >= 0.
inline GcdResult ext_gcd(i64 a, i64 b) {
    i64 old_r = a, r = b;
    i64 old_s = 1, s = 0;
    i64 old_t = 0, t = 1;
    while (r != 0) {
        i64 q = old_r / r;
        old_r = std::exchange(r, old_r - q * r);
        old_s = std::exchange(s, old_s - q * s);
        old_t = std::exchange(t, old_t - q * t);
    }
    if (old_r < 0) return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

constexpr u64 gcd_u64(u64 a, u64 b) {
    while (b != 0) a = std::exchange(b, a % b);
    return a;
}

/// Inverse of a modulo m, if gcd(a, m) = 1.
inline std::optional<u64> inverse_mod(i64 a, u64 modulus) {
    if (modulus == 0 || modulus > static_cast<u64>(INT64_MAX))
        throw std::invalid_argument("inverse_mod: modulus out of range");
    auto [g, s, t] = ext_gcd(static_cast<i64>(reduce_mod(a, modulus)), static_cast<i64>(modulus));
    (void)t;
    if (g != 1) return std::nullopt;
    return reduce_mod(s, modulus);
}

namespace detail {

inline bool miller_rabin_round(u64 n, u64 d, int s, u64 witness) {
    u64 x = pow_mod_u(witness % n, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

} // namespace detail

/// Deterministic for every 64-bit input: the first twelve prime bases are
/// known to have no common strong pseudoprime below 3.3e24.
inline bool is_prime(u64 n) {
    if (n < 2) return false;
    constexpr u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 p : small) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1u) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : small)
        if (!detail::miller_rabin_round(n, d, s, a)) return false;
    return true;
}

/// A value that passed is_prime. Only obtainable through make().
class PrimeCandidate {
public:
    static std::optional<PrimeCandidate> make(u64 value) {
        if (value > max_prime_candidate || !is_prime(value)) return std::nullopt;
        return PrimeCandidate(value);
    }
    constexpr u64 value() const { return value_; }
    constexpr operator u64() const { return value_; }

private:
    constexpr explicit PrimeCandidate(u64 v) : value_(v) {}
    u64 value_;
};

enum class SymbolValue : int { minus_one = -1, zero = 0, plus_one = 1 };

constexpr int to_int(SymbolValue s) { return static_cast<int>(s); }

constexpr SymbolValue symbol_from_int(int v) {
    return v > 0 ? SymbolValue::plus_one : (v < 0 ? SymbolValue::minus_one : SymbolValue::zero);
}

namespace detail {

inline void require_odd_prime(u64 p, const char* who) {
    if (p < 3 || (p & 1u) == 0 || p > max_prime_candidate || !is_prime(p))
        throw std::invalid_argument(std::string(who) + ": modulus must be an odd prime, got " +
                                    std::to_string(p));
}

} // namespace detail

/// Legendre symbol via Euler's criterion a^((p-1)/2) mod p.
inline SymbolValue legendre(i64 a, u64 p) {
    detail::require_odd_prime(p, "legendre");
    u64 r = reduce_mod(a, p);
    if (r == 0) return SymbolValue::zero;
    u64 e = pow_mod_u(r, (p - 1) / 2, p);
    if (e == 1) return SymbolValue::plus_one;
    if (e == p - 1) return SymbolValue::minus_one;
    throw std::logic_error("legendre: Euler criterion produced " + std::to_string(e));
}

/// Jacobi symbol (a|n) for odd n >= 1, computed with the reciprocity law.
inline int jacobi(i64 a, u64 n) {
    if (n == 0 || (n & 1u) == 0)
        throw std::invalid_argument("jacobi: denominator must be odd and positive");
    u64 x = reduce_mod(a, n);
    int sign = 1;
    while (x != 0) {
        while ((x & 1u) == 0) {
            x >>= 1;
            u64 r = n & 7u;
            if (r == 3 || r == 5) sign = -sign;
        }
        std::swap(x, n);
        if ((x & 3u) == 3 && (n & 3u) == 3) sign = -sign;
        x %= n;
    }
    return n == 1 ? sign : 0;
}

/// (p|q)(q|p) for distinct odd primes. Throws std::logic_error if the
/// product disagrees with (-1)^((p-1)/2 * (q-1)/2).
inline SymbolValue reciprocity_product(u64 p, u64 q) {
    detail::require_odd_prime(p, "reciprocity_product");
    detail::require_odd_prime(q, "reciprocity_product");
    if (p == q) throw std::invalid_argument("reciprocity_product: primes must be distinct");
    int product = to_int(legendre(static_cast<i64>(p), q)) * to_int(legendre(static_cast<i64>(q), p));
    int expected = (((p - 1) / 2) % 2 == 1 && ((q - 1) / 2) % 2 == 1) ? -1 : 1;
    if (product != expected)
        throw std::logic_error("reciprocity_product: symbols violate reciprocity");
    return symbol_from_int(product);
}

/// Square root of a modulo an odd prime (Tonelli-Shanks). Returns the smaller
/// of the two roots, or nullopt when a is a non-residue.
inline std::optional<u64> sqrt_mod(i64 a, u64 p) {
    detail::require_odd_prime(p, "sqrt_mod");
    u64 n = reduce_mod(a, p);
    if (n == 0) return u64{0};
    if (legendre(static_cast<i64>(n), p) != SymbolValue::plus_one) return std::nullopt;

    u64 q = p - 1;
    int s = 0;
    while ((q & 1u) == 0) {
        q >>= 1;
        ++s;
    }
    u64 z = 2;
    while (legendre(static_cast<i64>(z), p) != SymbolValue::minus_one) ++z;

    u64 m = static_cast<u64>(s);
    u64 c = pow_mod_u(z, q, p);
    u64 t = pow_mod_u(n, q, p);
    u64 r = pow_mod_u(n, (q + 1) / 2, p);
    while (t != 1) {
        u64 i = 0;
        u64 tt = t;
        while (tt != 1) {
            tt = mul_mod(tt, tt, p);
            ++i;
        }
        u64 b = c;
        for (u64 j = 0; j + 1 < m - i; ++j) b = mul_mod(b, b, p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    return r <= p - r ? r : p - r;
}

/// floor(sqrt(n)), exact for all 64-bit inputs.
constexpr u64 isqrt(u64 n) {
    if (n < 2) return n;
    // Integer Newton iteration from a start point >= sqrt(n).
    u64 x = u64{1} << ((std::bit_width(n) + 1) / 2);
    while (true) {
        u64 y = (x + n / x) / 2;
        if (y >= x) return x;
        x = y;
    }
}

/// Exact square root when n is a perfect square.
constexpr std::optional<u64> exact_sqrt(u64 n) {
    u64 r = isqrt(n);
    if (r * r == n) return r;
    return std::nullopt;
}

} // namespace primeforms
