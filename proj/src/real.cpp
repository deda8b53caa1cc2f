#include "cyclotheta/real.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace cyclotheta {

Real r_from_si(long x, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_si(r.get(), x, MPFR_RNDN);
    return r;
}

Real r_from_mpz(const mpz_class& x, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Real r(prec);
    mpfr_set_z(r.get(), x.get_mpz_t(), rnd);
    return r;
}

Real r_from_mpq(const mpq_class& x, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Real r(prec);
    mpfr_set_q(r.get(), x.get_mpq_t(), rnd);
    return r;
}

Real r_from_d(double x, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_d(r.get(), x, MPFR_RNDN);
    return r;
}

Real r_from_str(const std::string& s, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_str(r.get(), s.c_str(), 10, MPFR_RNDN);
    return r;
}

Real r_pi(mpfr_prec_t prec) {
    Real r(prec);
    mpfr_const_pi(r.get(), MPFR_RNDN);
    return r;
}

Real r_two_pi(mpfr_prec_t prec) {
    Real r = r_pi(prec + 2);
    Real out(prec);
    mpfr_mul_2si(out.get(), r.get(), 1, MPFR_RNDN);
    return out;
}

#define BINOP(name, mpfr_fn)                                                    \
    Real name(const Real& a, const Real& b, mpfr_prec_t prec, mpfr_rnd_t rnd) { \
        Real r(prec);                                                           \
        mpfr_fn(r.get(), a.get(), b.get(), rnd);                                \
        return r;                                                               \
    }

BINOP(r_add, mpfr_add)
BINOP(r_sub, mpfr_sub)
BINOP(r_mul, mpfr_mul)
BINOP(r_div, mpfr_div)
BINOP(r_hypot, mpfr_hypot)

#undef BINOP

Real r_mul_si(const Real& a, long b, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Real r(prec);
    mpfr_mul_si(r.get(), a.get(), b, rnd);
    return r;
}

Real r_div_si(const Real& a, long b, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Real r(prec);
    mpfr_div_si(r.get(), a.get(), b, rnd);
    return r;
}

Real r_div_mpz(const Real& a, const mpz_class& b, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Real r(prec);
    mpfr_div_z(r.get(), a.get(), b.get_mpz_t(), rnd);
    return r;
}

Real r_neg(const Real& a) {
    Real r(a.prec());
    mpfr_neg(r.get(), a.get(), MPFR_RNDN);
    return r;
}

Real r_abs(const Real& a) {
    Real r(a.prec());
    mpfr_abs(r.get(), a.get(), MPFR_RNDN);
    return r;
}

Real r_sqrt(const Real& a, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Real r(prec);
    mpfr_sqrt(r.get(), a.get(), rnd);
    return r;
}

Real r_exp(const Real& a, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Real r(prec);
    mpfr_exp(r.get(), a.get(), rnd);
    return r;
}

Real r_ldexp(const Real& a, long e) {
    Real r(a.prec());
    mpfr_mul_2si(r.get(), a.get(), e, MPFR_RNDN);
    return r;
}

void r_sin_cos(Real& s, Real& c, const Real& a, mpfr_prec_t prec) {
    Real so(prec), co(prec);
    mpfr_sin_cos(so.get(), co.get(), a.get(), MPFR_RNDN);
    s = std::move(so);
    c = std::move(co);
}

int r_cmp(const Real& a, const Real& b) { return mpfr_cmp(a.get(), b.get()); }
bool r_less(const Real& a, const Real& b) { return mpfr_less_p(a.get(), b.get()) != 0; }

std::string r_dec(const Real& a) {
    if (a.is_zero()) return "0";
    // digits so that parsing back at the same precision is lossless
    long digits = (long)(a.prec() * 0.3010299957) + 3;
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", (int)digits, a.get());
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

// ---- Mag --------------------------------------------------------------

Mag Mag::from_d(double d) {
    Mag m;
    mpfr_set_d(m.m_.get(), d < 0 ? -d : d, MPFR_RNDU);
    return m;
}

Mag Mag::from_mpz(const mpz_class& z) {
    Mag m;
    mpfr_set_z(m.m_.get(), z.get_mpz_t(), MPFR_RNDU);
    mpfr_abs(m.m_.get(), m.m_.get(), MPFR_RNDU);
    return m;
}

Mag Mag::pow2(long e) {
    Mag m;
    mpfr_set_si(m.m_.get(), 1, MPFR_RNDU);
    mpfr_mul_2si(m.m_.get(), m.m_.get(), e, MPFR_RNDU);
    return m;
}

Mag mag_add(const Mag& a, const Mag& b) {
    Mag r;
    mpfr_add(r.m_.get(), a.m_.get(), b.m_.get(), MPFR_RNDU);
    return r;
}

Mag mag_mul(const Mag& a, const Mag& b) {
    Mag r;
    mpfr_mul(r.m_.get(), a.m_.get(), b.m_.get(), MPFR_RNDU);
    return r;
}

Mag mag_mul_real(const Mag& a, const Real& b) {
    Mag r;
    mpfr_mul(r.m_.get(), a.m_.get(), b.get(), MPFR_RNDU);
    mpfr_abs(r.m_.get(), r.m_.get(), MPFR_RNDU);
    return r;
}

Mag mag_div(const Mag& a, const Real& positive_lower) {
    Mag r;
    mpfr_div(r.m_.get(), a.m_.get(), positive_lower.get(), MPFR_RNDU);
    return r;
}

Mag mag_max(const Mag& a, const Mag& b) {
    Mag r;
    mpfr_max(r.m_.get(), a.m_.get(), b.m_.get(), MPFR_RNDU);
    return r;
}

Mag mag_ldexp(const Mag& a, long e) {
    Mag r;
    mpfr_mul_2si(r.m_.get(), a.m_.get(), e, MPFR_RNDU);
    return r;
}

Mag mag_expm1(const Mag& a) {
    Mag r;
    mpfr_expm1(r.m_.get(), a.m_.get(), MPFR_RNDU);
    return r;
}

Mag mag_exp_of_real(const Real& x) {
    Mag r;
    mpfr_exp(r.m_.get(), x.get(), MPFR_RNDU);
    return r;
}

bool mag_less(const Mag& a, const Mag& b) {
    return mpfr_less_p(a.m_.get(), b.m_.get()) != 0;
}

Mag mag_abs_upper(const Real& a) { return Mag(a); }

Real abs_lower(const Real& a) {
    Real r(Mag::kPrec);
    mpfr_abs(r.get(), a.get(), MPFR_RNDD);
    return r;
}

} // namespace cyclotheta
