#pragma once

/// @file sieve.hpp
/// @brief Segmented sieve of Eratosthenes for prime ranges.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "primeforms/arith.hpp"

namespace primeforms {

inline constexpr u64 sieve_segment_size = u64{1} << 16;

/// Calls fn(p) for every prime p in [lo, hi], in increasing order.
template <typename Fn>
void for_each_prime(u64 lo, u64 hi, Fn&& fn) {
    if (hi < 2 || lo > hi) return;
    lo = std::max<u64>(lo, 2);
    const u64 root = isqrt(hi);

    // Base primes up to sqrt(hi) with a plain sieve.
    std::vector<bool> small_composite(root + 1, false);
    std::vector<u64> base;
    for (u64 i = 2; i <= root; ++i) {
        if (small_composite[i]) continue;
        base.push_back(i);
        for (u64 j = i * i; j <= root; j += i) small_composite[j] = true;
    }

    std::vector<char> composite(sieve_segment_size);
    for (u64 seg_lo = lo; seg_lo <= hi; seg_lo += sieve_segment_size) {
        const u64 seg_hi = std::min(hi, seg_lo + sieve_segment_size - 1);
        std::fill(composite.begin(), composite.end(), 0);
        for (u64 p : base) {
            if (p * p > seg_hi) break;
            u64 start = std::max(p * p, (seg_lo + p - 1) / p * p);
            for (u64 j = start; j <= seg_hi; j += p) composite[j - seg_lo] = 1;
        }
        for (u64 n = seg_lo; n <= seg_hi; ++n)
            if (!composite[n - seg_lo]) fn(n);
        if (seg_hi == hi) break;
    }
}

inline std::vector<u64> primes_up_to(u64 bound) {
    std::vector<u64> out;
    for_each_prime(2, bound, [&](u64 p) { out.push_back(p); });
    return out;
}

} // namespace primeforms
