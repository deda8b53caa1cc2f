#include "cyclotheta/factor.hpp"

#include <algorithm>
#include <chrono>
#include <map>

#include "cyclotheta/errors.hpp"

namespace cyclotheta {

std::vector<mpz_class> Factorization::prime_set() const {
    std::vector<mpz_class> s;
    s.reserve(primes.size());
    for (auto& [p, e] : primes) s.push_back(p);
    return s;
}

bool is_probable_prime(const mpz_class& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

mpz_class next_prime(const mpz_class& n) {
    mpz_class p;
    mpz_nextprime(p.get_mpz_t(), n.get_mpz_t());
    return p;
}

namespace {

using Clock = std::chrono::steady_clock;

// Brent's variant of Pollard rho; returns a nontrivial factor or 0 on timeout.
mpz_class rho_brent(const mpz_class& n, Clock::time_point deadline) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(0x5eed0f00dULL + mpz_fdiv_ui(n.get_mpz_t(), 1000003));
    for (int attempt = 0; attempt < 64; attempt++) {
        mpz_class y = rng.get_z_range(n - 2) + 1;
        mpz_class c = rng.get_z_range(n - 2) + 1;
        mpz_class m = 128, g = 1, r = 1, q = 1, x, ys;
        while (g == 1) {
            if (Clock::now() > deadline) return 0;
            x = y;
            for (mpz_class i = 0; i < r; i++) y = (y * y + c) % n;
            mpz_class k = 0;
            while (k < r && g == 1) {
                ys = y;
                mpz_class lim = std::min(m, mpz_class(r - k));
                for (mpz_class i = 0; i < lim; i++) {
                    y = (y * y + c) % n;
                    q = q * (x > y ? x - y : y - x) % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
            }
            r *= 2;
        }
        if (g == n) {
            // backtrack one step at a time
            g = 1;
            while (g == 1) {
                ys = (ys * ys + c) % n;
                mpz_class d = x > ys ? x - ys : ys - x;
                mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
            }
        }
        if (g != n) return g;
    }
    return 0;
}

void factor_rec(const mpz_class& n, std::map<mpz_class, int>& out, mpz_class& unf,
                Clock::time_point deadline) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        out[n]++;
        return;
    }
    mpz_class d = rho_brent(n, deadline);
    if (d == 0 || d == 1 || d == n) {
        unf *= n;
        return;
    }
    factor_rec(d, out, unf, deadline);
    factor_rec(n / d, out, unf, deadline);
}

} // namespace

Factorization factorize(const mpz_class& n_in, long budget_ms) {
    if (n_in == 0) throw ParameterError("factorize(0)");
    mpz_class n = abs(n_in);
    Factorization f;
    if (n == 1) return f;

    std::map<mpz_class, int> found;
    for (long p : {2L, 3L, 5L}) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            found[p]++;
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        }
    }
    // wheel over 6k+-1 up to 10^6
    for (long p = 7; p <= 1000000 && n > 1; p += 6) {
        for (long c : {p, p + 4}) {
            if (mpz_class(c) * c > n) break;
            while (mpz_divisible_ui_p(n.get_mpz_t(), c)) {
                found[c]++;
                mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), c);
            }
        }
        mpz_class sq = mpz_class(p) * p;
        if (sq > n) break;
    }
    if (n > 1) {
        if (n <= mpz_class(1000000) * 1000000 || is_probable_prime(n)) {
            // below trial bound squared, the remainder is prime
            found[n]++;
        } else {
            mpz_class unf = 1;
            auto deadline = Clock::now() + std::chrono::milliseconds(budget_ms);
            factor_rec(n, found, unf, deadline);
            f.unfactored = unf;
        }
    }
    for (auto& [p, e] : found) f.primes.emplace_back(p, e);
    return f;
}

} // namespace cyclotheta
