#pragma once

#include <json.hpp>
#include <utility>
#include <vector>

#include "cyclotheta/cmgeom.hpp"
#include "cyclotheta/cnum.hpp"

namespace cyclotheta {

// Theta characteristic (r, s), exact rational vectors of equal length.
struct Characteristic {
    std::vector<mpq_class> r, s;
    size_t dim() const { return r.size(); }
    static Characteristic zero(size_t n) {
        return Characteristic{std::vector<mpq_class>(n, 0), std::vector<mpq_class>(n, 0)};
    }
};

struct ThetaValue {
    CComplex v;
    mpfr_prec_t prec = 0;
    nlohmann::json to_json() const;
};

/*
 * Theta constant: sum over x in Z^n of e((1/2) (x+r)^T z (x+r) + (x+r)^T s),
 * truncated to the box |x+r|_inf <= R with R chosen so that the certified
 * tail (via the positive-definiteness witness lambda_min of Im z) stays
 * below 2^(-prec-20). The parallel version splits on the first coordinate
 * and combines the slice sums in a fixed order, so the result is
 * bit-identical for any thread count; the reference version accumulates one
 * term at a time in plain lexicographic order and is kept for testing and
 * benchmarking.
 */
ThetaValue theta_constant(const CMPoint& z, const Characteristic& c, mpfr_prec_t prec);
ThetaValue theta_constant_reference(const CMPoint& z, const Characteristic& c, mpfr_prec_t prec);

// Phi_(r,s)(z) = Theta(0,z;r,s)/Theta(0,z;0,0); throws PoleOrPrecision when
// the denominator cannot be separated from zero at this precision.
ThetaValue phi_quotient(const CMPoint& z, const Characteristic& c, mpfr_prec_t prec);

// Igusa criterion: the theta constant vanishes identically iff r, s are
// half-integral and e(2 r.s) = -1. Exact rational test.
bool vanishes_identically(const Characteristic& c);

// Exponent t of the quasi-periodicity law Phi_(r+a,s+b) = e(t) Phi_(r,s),
// t = r.b mod 1.
mpq_class quasiperiod_multiplier(const Characteristic& c, const std::vector<long>& a,
                                 const std::vector<long>& b);

// For gamma in Sp_2n(Z) with {A^T C}, {B^T D} in 2Z^n: the transformed
// characteristic gamma^T (r;s) and the exponent ((r.s - r'.s')/2 mod 1) of
// Phi_(r,s)(gamma z) = e(exponent) Phi_(r',s')(z).
std::pair<Characteristic, mpq_class> transform_pair(const BigIntMatrix& gamma,
                                                    const Characteristic& c);

bool is_symplectic(const BigIntMatrix& gamma);
bool theta_transform_admissible(const BigIntMatrix& gamma);

// gamma(z) = (Az+B)(Cz+D)^-1, re-certified as a Siegel point.
CMPoint apply_symplectic(const BigIntMatrix& gamma, const CMPoint& z, mpfr_prec_t prec);

} // namespace cyclotheta
