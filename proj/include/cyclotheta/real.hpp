#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

namespace cyclotheta {

// RAII value wrapper over mpfr_t with an explicit per-value precision.
// Arithmetic goes through the free functions below, which take the result
// precision explicitly; convenience operators round to nearest at the
// larger operand precision.
class Real {
public:
    explicit Real(mpfr_prec_t prec = 64) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        v_[0] = o.v_[0];
        mpfr_init2(o.v_, MPFR_PREC_MIN);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sgn() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // mpfr exponent: |x| in [2^(e-1), 2^e); 0 for zero.
    long exp2_of() const { return is_zero() ? mpfr_get_emin() : mpfr_get_exp(v_); }

private:
    mpfr_t v_;
};

// -- constructors ------------------------------------------------------
Real r_from_si(long x, mpfr_prec_t prec);
Real r_from_mpz(const mpz_class& x, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);
Real r_from_mpq(const mpq_class& x, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);
Real r_from_d(double x, mpfr_prec_t prec);
Real r_from_str(const std::string& s, mpfr_prec_t prec);
Real r_pi(mpfr_prec_t prec);       // correctly rounded const_pi
Real r_two_pi(mpfr_prec_t prec);

// -- arithmetic at explicit precision ----------------------------------
Real r_add(const Real& a, const Real& b, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);
Real r_sub(const Real& a, const Real& b, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);
Real r_mul(const Real& a, const Real& b, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);
Real r_div(const Real& a, const Real& b, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);
Real r_mul_si(const Real& a, long b, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);
Real r_div_si(const Real& a, long b, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);
Real r_div_mpz(const Real& a, const mpz_class& b, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);
Real r_neg(const Real& a);
Real r_abs(const Real& a);
Real r_sqrt(const Real& a, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);
Real r_exp(const Real& a, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);
Real r_ldexp(const Real& a, long e);
void r_sin_cos(Real& s, Real& c, const Real& a, mpfr_prec_t prec); // RNDN
Real r_hypot(const Real& a, const Real& b, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);

int r_cmp(const Real& a, const Real& b);
bool r_less(const Real& a, const Real& b);

// decimal string with enough digits to round-trip at the value's precision
std::string r_dec(const Real& a);

// convenience operators: RNDN at max operand precision
inline Real operator+(const Real& a, const Real& b) { return r_add(a, b, std::max(a.prec(), b.prec())); }
inline Real operator-(const Real& a, const Real& b) { return r_sub(a, b, std::max(a.prec(), b.prec())); }
inline Real operator*(const Real& a, const Real& b) { return r_mul(a, b, std::max(a.prec(), b.prec())); }
inline Real operator/(const Real& a, const Real& b) { return r_div(a, b, std::max(a.prec(), b.prec())); }
inline Real operator-(const Real& a) { return r_neg(a); }

// Nonnegative upper-bound magnitude: low-precision mpfr with all operations
// rounded up, used for certified absolute error radii. The huge mpfr
// exponent range matters here (errors like 2^-5000 are routine).
class Mag {
public:
    static constexpr mpfr_prec_t kPrec = 64;
    Mag() : m_(kPrec) {}
    explicit Mag(const Real& upper) : m_(kPrec) {
        mpfr_abs(m_.get(), upper.get(), MPFR_RNDU);
    }
    static Mag zero() { return Mag(); }
    static Mag from_d(double d);
    static Mag from_mpz(const mpz_class& z);
    static Mag pow2(long e); // 2^e
    const Real& real() const { return m_; }
    bool is_zero() const { return m_.is_zero(); }
    double to_double() const { return m_.to_double(); }
    long exp2_of() const { return m_.exp2_of(); }

private:
    Real m_;
    friend Mag mag_add(const Mag&, const Mag&);
    friend Mag mag_mul(const Mag&, const Mag&);
    friend Mag mag_div(const Mag&, const Real&);
    friend Mag mag_max(const Mag&, const Mag&);
    friend Mag mag_ldexp(const Mag&, long);
    friend Mag mag_expm1(const Mag&);
    friend Mag mag_exp_of_real(const Real&);
    friend Mag mag_mul_real(const Mag&, const Real&);
    friend bool mag_less(const Mag&, const Mag&);
};

Mag mag_add(const Mag& a, const Mag& b);
Mag mag_mul(const Mag& a, const Mag& b);
Mag mag_mul_real(const Mag& a, const Real& b); // |b| rounded up
Mag mag_div(const Mag& a, const Real& positive_lower); // a / lb, rounded up
Mag mag_max(const Mag& a, const Mag& b);
Mag mag_ldexp(const Mag& a, long e);
Mag mag_expm1(const Mag& a);         // upper bound of e^a - 1
Mag mag_exp_of_real(const Real& x);  // upper bound of e^x (x any sign)
bool mag_less(const Mag& a, const Mag& b);

// |a| rounded up / down at Mag precision
Mag mag_abs_upper(const Real& a);
Real abs_lower(const Real& a);

} // namespace cyclotheta
