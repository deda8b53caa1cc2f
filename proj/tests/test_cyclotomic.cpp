#include <doctest.h>

#include <random>

#include "cyclotheta/cmgeom.hpp"
#include "cyclotheta/cyclotomic.hpp"

using namespace cyclotheta;

namespace {

CycElt random_elt(std::mt19937_64& rng, CycParams p, long spread = 9) {
    std::vector<mpz_class> c((size_t)(p.ell - 1));
    for (auto& x : c) x = (long)(rng() % (2 * (unsigned long)spread + 1)) - spread;
    return CycElt(p, std::move(c));
}

// |embed(a,1) - (x+iy)| < 2^tol_exp
bool embeds_close(const CycElt& a, const Real& x, const Real& y, long tol_exp, long prec) {
    CComplex v = embed(a, 1, prec);
    Real dr = r_sub(v.re, x, prec), di = r_sub(v.im, y, prec);
    Real d = r_hypot(dr, di, 64, MPFR_RNDU);
    return r_less(d, r_ldexp(r_from_si(1, 64), tol_exp));
}

} // namespace

TEST_CASE("cyc_mul reduces through the canonical basis") {
    CycParams p5(5);
    // zeta * zeta^4 = 1
    CHECK(CycElt::zeta_pow(p5, 1) * CycElt::zeta_pow(p5, 4) == CycElt::one(p5));

    // (1 - zeta)(1 - zeta^2) = 3 at ell = 3
    CycParams p3(3);
    CycElt a = CycElt::one(p3) - CycElt::zeta_pow(p3, 1);
    CycElt b = CycElt::one(p3) - CycElt::zeta_pow(p3, 2);
    CHECK(a * b == CycElt::from_integer(p3, 3));
    // numeric oracle: evaluate the product at zeta = e(1/3)
    CHECK(embeds_close(a * b, r_from_si(3, 192), r_from_si(0, 192), -90, 192));

    std::mt19937_64 rng(42);
    for (int t = 0; t < 20; t++) {
        CycElt x = random_elt(rng, p5);
        CHECK(x * CycElt::one(p5) == x);
    }
}

TEST_CASE("galois action permutes exponents") {
    CycParams p5(5), p7(7);
    CHECK(galois_apply(CycElt::zeta_pow(p5, 1), 2) == CycElt::zeta_pow(p5, 2));
    CycElt real_elt = CycElt::zeta_pow(p5, 1) + CycElt::zeta_pow(p5, 4);
    CHECK(galois_apply(real_elt, 4) == real_elt);
    CHECK(galois_apply(CycElt::zeta_pow(p7, 2), 4) == CycElt::zeta_pow(p7, 1)); // 8 mod 7
    CHECK_THROWS_AS(galois_apply(CycElt::zeta_pow(p5, 1), 5), ParameterError);
}

TEST_CASE("galois composition law") {
    std::mt19937_64 rng(7);
    for (long ell : {5L, 7L, 11L}) {
        CycParams cp(ell);
        CycElt a = random_elt(rng, cp);
        for (long i = 1; i < ell; i++)
            for (long j = 1; j < ell; j++)
                CHECK(galois_apply(galois_apply(a, j), i) == galois_apply(a, (i * j) % ell));
    }
}

TEST_CASE("trace and norm") {
    CycParams p5(5), p7(7);
    CHECK(trace(CycElt::zeta_pow(p5, 1)) == -1);
    CHECK(trace(CycElt::one(p7)) == 6);
    CHECK(field_norm(CycElt::one(p5) - CycElt::zeta_pow(p5, 1)) == 5);
    CHECK(field_norm(CycElt::one(p7) - CycElt::zeta_pow(p7, 1)) == 7);

    // numeric oracle: trace = sum of the ell-1 embeddings, within 2^-40 at 128 bits
    std::mt19937_64 rng(99);
    for (long ell : {5L, 7L, 11L}) {
        CycParams cp(ell);
        CycElt a = random_elt(rng, cp);
        CComplex acc = cc_zero(128);
        for (long i = 1; i < ell; i++) acc = cc_add(acc, embed(a, i, 128), 128);
        Real expect = r_from_mpq(trace(a), 128);
        Real diff = r_hypot(r_sub(acc.re, expect, 128), acc.im, 64, MPFR_RNDU);
        CHECK(r_less(diff, r_ldexp(r_from_si(1, 64), -40)));
    }
}

TEST_CASE("reflex maps phi_plus and phi_star") {
    CycParams p5(5), p3(3);
    // inverses of {1,2} mod 5 are {1,3}
    CHECK(phi_plus(CycElt::zeta_pow(p5, 1)) ==
          CycElt::zeta_pow(p5, 1) + CycElt::zeta_pow(p5, 3));
    CHECK(phi_plus(CycElt::zeta_pow(p3, 1)) == CycElt::zeta_pow(p3, 1));
    CHECK(phi_plus(CycElt::one(p5)) == CycElt::from_integer(p5, 2));

    CHECK(phi_star(CycElt::zeta_pow(p5, 1)) == CycElt::zeta_pow(p5, 4));
    std::mt19937_64 rng(3);
    CycElt a3 = random_elt(rng, p3);
    CHECK(phi_star(a3) == a3);
    CycElt ps = phi_star(CycElt::zeta_pow(p5, 1));
    CHECK(ps * ps.conj() == CycElt::one(p5));
}

TEST_CASE("phi_star multiplicative, phi_plus additive, norm identity") {
    std::mt19937_64 rng(1234);
    for (int t = 0; t < 100; t++) {
        long ell = std::vector<long>{5, 7, 11}[(size_t)(rng() % 3)];
        CycParams cp(ell);
        CycElt a = random_elt(rng, cp, 5), b = random_elt(rng, cp, 5);
        CHECK(phi_star(a * b) == phi_star(a) * phi_star(b));
        CHECK(phi_plus(a + b) == phi_plus(a) + phi_plus(b));
        CycElt lhs = phi_star(a) * phi_star(a).conj();
        CHECK(lhs.is_rational());
        CHECK(lhs.to_rational() == field_norm(a));
    }
}

TEST_CASE("ring laws on random elements") {
    std::mt19937_64 rng(555);
    for (long ell : {5L, 7L}) {
        CycParams cp(ell);
        for (int t = 0; t < 25; t++) {
            CycElt a = random_elt(rng, cp), b = random_elt(rng, cp), c = random_elt(rng, cp);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * b == b * a);
            CHECK(a * (b + c) == a * b + a * c);
            CHECK((a + b) + c == a + (b + c));
        }
    }
}

TEST_CASE("cyclotomic units xi_a") {
    CycParams p5(5), p7(7);
    CycElt xi2 = cyclotomic_unit(p5, 2);
    CHECK(galois_apply(xi2, 4) == xi2);
    CHECK(field_norm(xi2) == 1);

    // numeric oracle for ell = 7, a = 3: the defining formula evaluates to
    // sin(3 pi/7)/sin(pi/7) under the first embedding
    const long prec = 192;
    CycElt xi3 = cyclotomic_unit(p7, 3);
    Real pi = r_pi(prec);
    Real s3(prec), c3(prec), s1(prec), c1(prec);
    r_sin_cos(s3, c3, r_div_si(r_mul_si(pi, 3, prec), 7, prec), prec);
    r_sin_cos(s1, c1, r_div_si(pi, 7, prec), prec);
    Real expect = r_div(s3, s1, prec);
    CHECK(expect.sgn() > 0);
    CHECK(embeds_close(xi3, expect, r_from_si(0, prec), -100, prec));

    // every valid xi_a is a real unit
    for (long ell : {5L, 7L, 11L, 13L}) {
        CycParams cp(ell);
        for (long a = 2; 2 * a < ell; a++) {
            CycElt xi = cyclotomic_unit(cp, a);
            CHECK(galois_apply(xi, ell - 1) == xi);
            mpq_class nm = field_norm(xi);
            CHECK((nm == 1 || nm == -1));
        }
    }
    CHECK_THROWS_AS(cyclotomic_unit(p5, 1), ParameterError);
    CHECK_THROWS_AS(cyclotomic_unit(p5, 3), ParameterError);
}

TEST_CASE("residue rings and multiplicative order") {
    CycParams p5(5);
    CycElt xi2 = cyclotomic_unit(p5, 2);
    ResidueElt r14 = residue_reduce(xi2, 14);
    CHECK(multiplicative_order(r14) == 48);
    CHECK(r14.pow(48).is_one());

    ResidueElt r98 = residue_reduce(xi2, 98);
    CHECK_FALSE(r98.pow(48).is_one());

    ResidueElt one = ResidueElt::one(p5, 21);
    CHECK(multiplicative_order(one) == 1);

    ResidueElt seven = residue_reduce(CycElt::from_integer(p5, 7), 14);
    CHECK_THROWS_AS(multiplicative_order(seven), NonInvertibleError);
}

TEST_CASE("rational detection, power basis, json round trips") {
    std::mt19937_64 rng(777);
    CycParams p7(7);
    CHECK(CycElt::from_integer(p7, -4).is_rational());
    CHECK(CycElt::from_rational(p7, mpq_class(3, 2)).to_rational() == mpq_class(3, 2));
    CHECK_FALSE(CycElt::zeta_pow(p7, 2).is_rational());

    for (int t = 0; t < 20; t++) {
        CycElt a = random_elt(rng, p7);
        CHECK(CycElt::from_power_basis(p7, a.to_power_basis()) == a);
        CHECK(CycElt::from_json(a.to_json()) == a);
    }
    CycElt r = rho(7);
    CHECK(CycElt::from_json(r.to_json()) == r);
    CHECK(CycElt::from_power_basis(p7, r.to_power_basis()) == r);
}
