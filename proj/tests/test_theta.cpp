#include <doctest.h>

#include <omp.h>

#include <random>

#include "cyclotheta/theta.hpp"

using namespace cyclotheta;

namespace {

CMPoint point_i(int n, long prec) {
    CMatrix z(n, n, prec);
    for (int i = 0; i < n; i++) z.at(i, i) = cc_from_si(0, 1, prec);
    return certify_siegel_point(z, prec);
}

CMPoint random_point(std::mt19937_64& rng, int n, long prec) {
    CMatrix z(n, n, prec);
    std::vector<std::vector<mpq_class>> x((size_t)n, std::vector<mpq_class>((size_t)n));
    std::vector<std::vector<mpq_class>> y((size_t)n, std::vector<mpq_class>((size_t)n));
    for (int i = 0; i < n; i++)
        for (int j = i; j < n; j++) {
            x[(size_t)i][(size_t)j] = mpq_class((long)(rng() % 17) - 8, 8);
            x[(size_t)j][(size_t)i] = x[(size_t)i][(size_t)j];
            if (i != j) {
                y[(size_t)i][(size_t)j] = mpq_class((long)(rng() % 9) - 4, 16);
                y[(size_t)j][(size_t)i] = y[(size_t)i][(size_t)j];
            }
        }
    for (int i = 0; i < n; i++) {
        mpq_class d = 1 + mpq_class((long)(rng() % 8), 8);
        for (int j = 0; j < n; j++)
            if (j != i) d += abs(y[(size_t)i][(size_t)j]);
        y[(size_t)i][(size_t)i] = d;
    }
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++)
            z.at(i, j) = cc_from_mpq(x[(size_t)i][(size_t)j], y[(size_t)i][(size_t)j], prec);
    return certify_siegel_point(z, prec);
}

bool close_within(const CComplex& a, const CComplex& b, long slack_exp, long prec) {
    Mag gap = cc_dist_upper(a, b, prec);
    Mag allow = mag_add(mag_add(a.err, b.err), Mag::pow2(slack_exp));
    return !mag_less(allow, gap);
}

} // namespace

TEST_CASE("theta constant at z = i matches the closed form") {
    const long prec = 256;
    CMPoint z = point_i(1, prec);
    ThetaValue tv = theta_constant(z, Characteristic::zero(1), prec);

    // oracle 1: direct summation of sum_k exp(-pi k^2) at independent precision
    Real pi = r_pi(300);
    CComplex acc = cc_one(300);
    for (long k = 1; k <= 40; k++) {
        Real t = r_exp(r_mul_si(pi, -k * k, 300), 300);
        acc.re = r_add(acc.re, r_ldexp(t, 1), 300);
    }
    CHECK(r_less(r_abs(r_sub(tv.v.re, acc.re, 300)), r_from_str("1e-60", 64)));

    // oracle 2: pi^(1/4)/Gamma(3/4)
    Real g(300);
    Real tq = r_from_mpq(mpq_class(3, 4), 300);
    mpfr_gamma(g.get(), tq.get(), MPFR_RNDN);
    Real closed = r_div(r_sqrt(r_sqrt(pi, 300), 300), g, 300);
    CHECK(r_less(r_abs(r_sub(tv.v.re, closed, 300)), r_from_str("1e-50", 64)));
    CHECK(r_less(r_abs(tv.v.im), r_from_str("1e-50", 64)));
}

TEST_CASE("odd half-integral characteristic vanishes identically") {
    const long prec = 192;
    CMPoint z = point_i(1, prec);
    Characteristic c{{mpq_class(1, 2)}, {mpq_class(1, 2)}};
    CHECK(vanishes_identically(c));
    ThetaValue tv = theta_constant(z, c, prec);
    CHECK(mag_less(cc_mag_upper(tv.v), Mag::pow2(-150)));

    Characteristic c2{{mpq_class(1, 2)}, {mpq_class(0)}};
    CHECK_FALSE(vanishes_identically(c2));
    ThetaValue tv2 = theta_constant(z, c2, prec);
    CHECK(cc_mag_lower(tv2.v).sgn() > 0);
}

TEST_CASE("product structure at diagonal z") {
    const long prec = 192;
    CMPoint z2 = point_i(2, prec);
    CMPoint z1 = point_i(1, prec);
    ThetaValue t2 = theta_constant(z2, Characteristic::zero(2), prec);
    ThetaValue t1 = theta_constant(z1, Characteristic::zero(1), prec);
    CHECK(close_within(t2.v, cc_mul(t1.v, t1.v, prec), -prec + 16, prec));
}

TEST_CASE("igusa criterion exact examples") {
    CHECK(vanishes_identically(Characteristic{{mpq_class(1, 2)}, {mpq_class(1, 2)}}));
    CHECK_FALSE(vanishes_identically(Characteristic{{mpq_class(1, 2)}, {mpq_class(0)}}));
    Characteristic c{{mpq_class(1, 2), mpq_class(1, 2)}, {mpq_class(1, 2), mpq_class(0)}};
    CHECK(vanishes_identically(c));
    // non-half-integral never vanishes identically
    CHECK_FALSE(vanishes_identically(Characteristic{{mpq_class(1, 3)}, {mpq_class(1, 2)}}));
}

TEST_CASE("phi quotient basics") {
    const long prec = 160;
    std::mt19937_64 rng(17);
    CMPoint z = random_point(rng, 2, prec);
    ThetaValue one = phi_quotient(z, Characteristic::zero(2), prec);
    CHECK(close_within(one.v, cc_one(prec), -prec + 8, prec));

    Characteristic c{{mpq_class(1, 5), mpq_class(0)}, {mpq_class(2, 5), mpq_class(1, 5)}};
    Characteristic neg{{-c.r[0], -c.r[1]}, {-c.s[0], -c.s[1]}};
    ThetaValue a = phi_quotient(z, c, prec);
    ThetaValue b = phi_quotient(z, neg, prec);
    CHECK(close_within(a.v, b.v, -prec + 8, prec));
}

TEST_CASE("quasiperiod multiplier exponents") {
    Characteristic c0{{mpq_class(0)}, {mpq_class(0)}};
    CHECK(quasiperiod_multiplier(c0, {3}, {5}) == 0);
    Characteristic c1{{mpq_class(1, 3)}, {mpq_class(0)}};
    CHECK(quasiperiod_multiplier(c1, {0}, {1}) == mpq_class(1, 3));
    Characteristic c2{{mpq_class(1, 5), mpq_class(2, 5)}, {mpq_class(0), mpq_class(0)}};
    CHECK(quasiperiod_multiplier(c2, {0, 0}, {3, 1}) == 0); // (3 + 2)/5 = 1 = 0 mod 1
}

TEST_CASE("transform pair exact examples") {
    // gamma = identity
    Characteristic c{{mpq_class(1, 3)}, {mpq_class(1, 5)}};
    auto [c_id, e_id] = transform_pair(BigIntMatrix::identity(2), c);
    CHECK(c_id.r[0] == c.r[0]);
    CHECK(c_id.s[0] == c.s[0]);
    CHECK(e_id == 0);

    // gamma = J: (r, s) -> (s, -r), exponent r s mod 1
    BigIntMatrix J = symplectic_J(1);
    auto [cj, ej] = transform_pair(J, c);
    CHECK(cj.r[0] == mpq_class(1, 5));
    CHECK(cj.s[0] == mpq_class(-1, 3));
    CHECK(ej == mpq_class(1, 15));

    // gamma = [[1,0],[2,1]]: (r,s) -> (r + 2s, s), exponent -s^2 mod 1
    BigIntMatrix g(2, 2);
    g.at(0, 0) = 1; g.at(1, 0) = 2; g.at(1, 1) = 1;
    CHECK(theta_transform_admissible(g));
    auto [cg, eg] = transform_pair(g, c);
    CHECK(cg.r[0] == mpq_class(1, 3) + 2 * mpq_class(1, 5));
    CHECK(cg.s[0] == mpq_class(1, 5));
    mpq_class want = -mpq_class(1, 25);
    want += 1; // reduced mod 1
    CHECK(eg == want);

    // C odd diagonal violates the admissibility condition
    BigIntMatrix bad(2, 2);
    bad.at(0, 0) = 1; bad.at(1, 0) = 1; bad.at(1, 1) = 1;
    CHECK(is_symplectic(bad));
    CHECK_FALSE(theta_transform_admissible(bad));
    CHECK_THROWS_AS(transform_pair(bad, c), ParameterError);
}

TEST_CASE("transformation law numeric witness") {
    const long prec = 160;
    // z = i, gamma = [[1,0],[2,1]], r = 1/3, s = 1/5
    CMPoint z = point_i(1, prec);
    BigIntMatrix g(2, 2);
    g.at(0, 0) = 1; g.at(1, 0) = 2; g.at(1, 1) = 1;
    Characteristic c{{mpq_class(1, 3)}, {mpq_class(1, 5)}};
    auto [cp, expo] = transform_pair(g, c);
    CMPoint gz = apply_symplectic(g, z, prec);
    ThetaValue lhs = phi_quotient(gz, c, prec);
    ThetaValue rhs = phi_quotient(z, cp, prec);
    CComplex rhs_full = cc_mul(cc_e_mpq(expo, prec), rhs.v, prec);
    CHECK(close_within(lhs.v, rhs_full, -prec / 2, prec));
}

TEST_CASE("parallel sum is deterministic and matches the serial reference") {
    const long prec = 192;
    std::mt19937_64 rng(23);
    CMPoint z = random_point(rng, 2, prec);
    Characteristic c{{mpq_class(1, 5), mpq_class(2, 5)}, {mpq_class(3, 5), mpq_class(0)}};

    int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    ThetaValue t1 = theta_constant(z, c, prec);
    omp_set_num_threads(4);
    ThetaValue t4 = theta_constant(z, c, prec);
    omp_set_num_threads(saved);
    CHECK(r_cmp(t1.v.re, t4.v.re) == 0);
    CHECK(r_cmp(t1.v.im, t4.v.im) == 0);

    ThetaValue ref = theta_constant_reference(z, c, prec);
    CHECK(close_within(t1.v, ref.v, -prec, prec));
}

TEST_CASE("tail bound soundness: enlarging the box stays within err") {
    // evaluating at two precisions changes R; the lower-precision enclosure
    // must contain the higher-precision value
    std::mt19937_64 rng(29);
    for (int t = 0; t < 5; t++) {
        int n = 1 + (int)(rng() % 2);
        CMPoint zlo = random_point(rng, n, 128);
        ThetaValue lo = theta_constant(zlo, Characteristic::zero((size_t)n), 128);
        CMPoint zhi = certify_siegel_point(zlo.z, 224);
        ThetaValue hi = theta_constant(zhi, Characteristic::zero((size_t)n), 224);
        // midpoint distance must stay within the summed certified radii
        Real dr = r_sub(lo.v.re, hi.v.re, 224), di = r_sub(lo.v.im, hi.v.im, 224);
        Mag mid_gap(r_hypot(dr, di, 64, MPFR_RNDU));
        Mag allow = mag_add(lo.v.err, hi.v.err);
        CHECK(!mag_less(allow, mid_gap));
    }
}

TEST_CASE("precision ladder rejects non-certified points") {
    CMatrix z(1, 1, 128);
    z.at(0, 0) = cc_from_si(2, 0, 128); // real point, Im = 0
    CHECK_THROWS_AS(certify_siegel_point(z, 128), PrecisionExhausted);
    CMatrix w(2, 2, 128);
    w.at(0, 0) = cc_from_si(0, 1, 128);
    w.at(1, 1) = cc_from_si(0, 1, 128);
    w.at(0, 1) = cc_from_si(1, 0, 128);
    w.at(1, 0) = cc_from_si(0, 0, 128); // blatantly asymmetric
    CHECK_THROWS_AS(certify_siegel_point(w, 128), ConsistencyError);
}
