#pragma once

#include <vector>

#include "cyclotheta/errors.hpp"
#include "cyclotheta/real.hpp"

namespace cyclotheta {

/*
 * Certified complex arithmetic in midpoint-radius style: each value carries
 * one absolute error radius `err` with |true - value| <= err (complex
 * modulus). Value parts round to nearest at the value precision; all radius
 * bookkeeping rounds up at Mag precision, so enclosures stay sound as long
 * as mpfr's correct-rounding contract holds.
 */
struct CComplex {
    Real re, im;
    Mag err;

    explicit CComplex(mpfr_prec_t prec = 64) : re(prec), im(prec), err() {}
    mpfr_prec_t prec() const { return re.prec(); }
};

CComplex cc_zero(mpfr_prec_t prec);
CComplex cc_one(mpfr_prec_t prec);
CComplex cc_from_si(long re, long im, mpfr_prec_t prec);
CComplex cc_from_mpq(const mpq_class& re, const mpq_class& im, mpfr_prec_t prec);

CComplex cc_add(const CComplex& a, const CComplex& b, mpfr_prec_t prec);
CComplex cc_sub(const CComplex& a, const CComplex& b, mpfr_prec_t prec);
CComplex cc_mul(const CComplex& a, const CComplex& b, mpfr_prec_t prec);
CComplex cc_div(const CComplex& a, const CComplex& b, mpfr_prec_t prec); // throws PrecisionExhausted
CComplex cc_neg(const CComplex& a);
CComplex cc_conj(const CComplex& a);
CComplex cc_mul_si(const CComplex& a, long k, mpfr_prec_t prec);
CComplex cc_div_mpz(const CComplex& a, const mpz_class& k, mpfr_prec_t prec);

Mag cc_mag_upper(const CComplex& a);   // upper bound of |true value|
Real cc_mag_lower(const CComplex& a);  // lower bound of |true value| (may be <= 0)
Mag cc_dist_upper(const CComplex& a, const CComplex& b, mpfr_prec_t prec);
Real cc_dist_lower(const CComplex& a, const CComplex& b, mpfr_prec_t prec);

// e(w) = exp(2*pi*i*w) for certified complex w; two_pi at >= prec bits.
CComplex cc_e(const CComplex& w, const Real& two_pi, mpfr_prec_t prec);
// e(q) for an exact rational exponent (unit-circle value, rounding error only)
CComplex cc_e_mpq(const mpq_class& q, mpfr_prec_t prec);

// round an enclosure to a lower output precision, folding the rounding into err
CComplex cc_round_to(const CComplex& a, mpfr_prec_t prec);

// Certified real value (used for symmetric matrices of imaginary parts).
struct RealErr {
    Real v;
    Mag err;
    explicit RealErr(mpfr_prec_t prec = 64) : v(prec), err() {}
};

RealErr re_add(const RealErr& a, const RealErr& b, mpfr_prec_t prec);
RealErr re_sub(const RealErr& a, const RealErr& b, mpfr_prec_t prec);
RealErr re_mul(const RealErr& a, const RealErr& b, mpfr_prec_t prec);

// Dense complex matrix with certified entries, row-major.
class CMatrix {
public:
    CMatrix() : rows_(0), cols_(0) {}
    CMatrix(int rows, int cols, mpfr_prec_t prec)
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, CComplex(prec)) {}
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    CComplex& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const CComplex& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

private:
    int rows_, cols_;
    std::vector<CComplex> a_;
};

CMatrix cm_mul(const CMatrix& a, const CMatrix& b, mpfr_prec_t prec);
CMatrix cm_sub(const CMatrix& a, const CMatrix& b, mpfr_prec_t prec);

// Solve A X = B by LU with partial pivoting plus one step of certified
// residual refinement. Throws PrecisionExhausted when a pivot cannot be
// separated from zero.
CMatrix cm_solve(const CMatrix& A, const CMatrix& B, mpfr_prec_t prec);

Mag cm_max_entry_mag(const CMatrix& a);

// Certified lower bound for the smallest eigenvalue of a symmetric real
// matrix given as certified entries: approximate Jacobi diagonalization at
// working precision, then a Gershgorin bound on the certified congruence
// Q^T A Q divided by an upper bound on the largest eigenvalue of Q^T Q.
// Returns a (possibly non-positive) certified lower bound.
Real sym_lambda_min_lower(const std::vector<std::vector<RealErr>>& A, mpfr_prec_t prec);

} // namespace cyclotheta
