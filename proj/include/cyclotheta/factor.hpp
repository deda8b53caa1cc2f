#pragma once

#include <gmpxx.h>

#include <utility>
#include <vector>

namespace cyclotheta {

struct Factorization {
    std::vector<std::pair<mpz_class, int>> primes; // sorted ascending
    mpz_class unfactored = 1;                      // composite cofactor if budget ran out
    bool complete() const { return unfactored == 1; }
    std::vector<mpz_class> prime_set() const;
};

bool is_probable_prime(const mpz_class& n);

// Trial division to 10^6, then Pollard rho with Brent cycle detection.
// `budget_ms` caps rho time per remaining composite; leftovers go to
// `unfactored`. Factors n >= 1; n = 0 or negative uses |n| with n=0 illegal.
Factorization factorize(const mpz_class& n, long budget_ms = 60000);

mpz_class next_prime(const mpz_class& n);

} // namespace cyclotheta
