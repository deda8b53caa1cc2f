#include <doctest.h>

#include <random>

#include "cyclotheta/factor.hpp"
#include "cyclotheta/intmat.hpp"

using namespace cyclotheta;

TEST_CASE("bareiss determinant basics") {
    CHECK(det_bareiss(BigIntMatrix::identity(4)) == 1);
    BigIntMatrix m(2, 2);
    m.at(0, 0) = 1; m.at(0, 1) = 1;
    m.at(1, 0) = 1; m.at(1, 1) = 0;
    CHECK(det_bareiss(m) == -1);
    // row swap path
    BigIntMatrix s(3, 3);
    s.at(0, 1) = 2; s.at(1, 0) = 3; s.at(2, 2) = 5;
    CHECK(det_bareiss(s) == -30);
    // singular
    BigIntMatrix z(3, 3);
    z.at(0, 0) = 1; z.at(1, 0) = 2; z.at(2, 0) = 3;
    CHECK(det_bareiss(z) == 0);
}

TEST_CASE("crt determinant agrees with bareiss") {
    std::mt19937_64 rng(2024);
    const int n = 60; // above the bareiss dispatch threshold
    BigIntMatrix m(n, n);
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) m.at(i, j) = (long)(rng() % 19) - 9;
    CHECK(det_exact(m) == det_bareiss(m));
}

TEST_CASE("det_mod_u64 matches exact determinant") {
    std::mt19937_64 rng(11);
    const int n = 8;
    BigIntMatrix m(n, n);
    std::vector<std::uint64_t> rm((size_t)n * n);
    mpz_class q = next_prime(mpz_class(1) << 61);
    long ql = (long)mpz_get_ui(q.get_mpz_t());
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) {
            long v = (long)(rng() % 41) - 20;
            m.at(i, j) = v;
            rm[(size_t)i * n + j] = (std::uint64_t)(v < 0 ? v + ql : v);
        }
    mpz_class d = det_bareiss(m) % q;
    if (d < 0) d += q;
    CHECK(mpz_class(det_mod_u64(n, mpz_get_ui(q.get_mpz_t()), rm)) == d);
}

TEST_CASE("rank over F_p") {
    FpMatrix m(5, 3, 4);
    // row2 is a scalar multiple of row1 mod 5; row3 is independent
    long rows[3][4] = {{1, 2, 3, 4}, {2, 4, 1, 3}, {0, 0, 1, 1}};
    for (int i = 0; i < 3; i++)
        for (int j = 0; j < 4; j++) m.at(i, j) = rows[i][j];
    CHECK(rank_mod_p(m) == 2);
    FpMatrix id(7, 4, 4);
    for (int i = 0; i < 4; i++) id.at(i, i) = 1;
    CHECK(rank_mod_p(id) == 4);
}

TEST_CASE("factorization") {
    Factorization f = factorize(mpz_class("9600"));
    REQUIRE(f.complete());
    REQUIRE(f.primes.size() == 3);
    CHECK(f.primes[0] == std::pair<mpz_class, int>{2, 7});
    CHECK(f.primes[1] == std::pair<mpz_class, int>{3, 1});
    CHECK(f.primes[2] == std::pair<mpz_class, int>{5, 2});

    // needs rho or the below-trial-bound-squared shortcut
    mpz_class big = mpz_class("1000003") * mpz_class("1000033");
    Factorization g = factorize(big);
    REQUIRE(g.complete());
    CHECK(g.primes.size() == 2);
    CHECK(g.primes[0].first == 1000003);
    CHECK(g.primes[1].first == 1000033);

    CHECK(factorize(1).primes.empty());
    CHECK(factorize(-12).primes.size() == 2);
    CHECK_THROWS_AS(factorize(0), ParameterError);
    CHECK(is_probable_prime(mpz_class("58057291")));
    Factorization h = factorize(mpz_class("1216387") * 109621);
    REQUIRE(h.complete());
    REQUIRE(h.primes.size() == 2);
    CHECK(h.primes[0].first == 109621);
    CHECK(h.primes[1].first == 1216387);
}

TEST_CASE("submatrix and multiplication") {
    BigIntMatrix a(2, 3), b(3, 2);
    long va[2][3] = {{1, 2, 3}, {4, 5, 6}};
    long vb[3][2] = {{7, 8}, {9, 10}, {11, 12}};
    for (int i = 0; i < 2; i++)
        for (int j = 0; j < 3; j++) a.at(i, j) = va[i][j];
    for (int i = 0; i < 3; i++)
        for (int j = 0; j < 2; j++) b.at(i, j) = vb[i][j];
    BigIntMatrix c = a * b;
    CHECK(c.at(0, 0) == 58);
    CHECK(c.at(1, 1) == 154);
    BigIntMatrix s = a.submatrix({1}, {0, 2});
    CHECK(s.at(0, 0) == 4);
    CHECK(s.at(0, 1) == 6);
    CHECK(a.transpose().at(2, 1) == 6);
}
