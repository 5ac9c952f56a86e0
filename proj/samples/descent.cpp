// Walks primes p = 1 mod 4 with (-17|p) = 1 from the short-vector multiple
// l*p = a^2 + 17 b^2 down to l in {1, 2}.
//
//   ./sample_descent [limit]

#include <cstdlib>
#include <iostream>

#include "primeforms/forms.hpp"
#include "primeforms/sieve.hpp"

int main(int argc, char** argv) {
    using namespace primeforms;
    const u64 limit = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 400;
    constexpr u64 q = 17;

    for_each_prime(19, limit, [&](u64 p) {
        if (p % 4 != 1) return;
        auto start = pigeonhole_multiple(p, q);
        if (!start) return;
        Witness w = primitive_part(*start);
        std::cout << p << ": " << w.multiplier << "p = " << w.a << "^2 + 17*" << w.b << "^2";
        while (w.multiplier > 2) {
            try {
                w = descent_step(w, q);
            } catch (const not_applicable&) {
                std::cout << "  (no reduction on file)";
                break;
            }
            std::cout << "  ->  " << w.multiplier << "p = " << w.a << "^2 + 17*" << w.b << "^2";
        }
        std::cout << '\n';
    });
}
