#pragma once

#include <gmpxx.h>

#include <json.hpp>
#include <vector>

#include "cyclotheta/errors.hpp"

namespace cyclotheta {

// Parameters of the cyclotomic field k = Q(zeta_ell), ell an odd prime.
struct CycParams {
    long ell;
    long n; // (ell-1)/2

    explicit CycParams(long ell_);
    bool operator==(const CycParams& o) const { return ell == o.ell; }
};

/*
 * Exact element of (1/denom) Z[zeta] written in the Z-basis
 * {zeta, zeta^2, ..., zeta^(ell-1)}; the basis omits 1, which is
 * represented as -(zeta + ... + zeta^(ell-1)). Normalized so that
 * gcd(coeffs, denom) = 1 and denom >= 1.
 */
class CycElt {
public:
    CycElt() : params_(3), coeffs_(2, 0), denom_(1) {}
    CycElt(CycParams params, std::vector<mpz_class> coeffs, mpz_class denom = 1);

    static CycElt zero(CycParams p);
    static CycElt one(CycParams p);
    static CycElt from_integer(CycParams p, const mpz_class& v);
    static CycElt from_rational(CycParams p, const mpq_class& v);
    static CycElt zeta_pow(CycParams p, long k); // zeta^k, any k (k mod ell; k=0 gives 1)

    const CycParams& params() const { return params_; }
    long ell() const { return params_.ell; }
    // coefficient of zeta^j, 1 <= j <= ell-1 (numerator over denom)
    const mpz_class& coeff(long j) const { return coeffs_[j - 1]; }
    const mpz_class& denom() const { return denom_; }

    bool is_zero() const;
    bool is_integral() const { return denom_ == 1; }
    bool is_rational() const;
    mpq_class to_rational() const; // throws ConsistencyError if not rational

    CycElt conj() const;

    bool operator==(const CycElt& o) const;
    bool operator!=(const CycElt& o) const { return !(*this == o); }
    CycElt operator+(const CycElt& o) const;
    CycElt operator-(const CycElt& o) const;
    CycElt operator-() const;
    CycElt operator*(const CycElt& o) const;
    CycElt pow(const mpz_class& e) const; // e >= 0

    // power-basis view {1, zeta, ..., zeta^(ell-2)}, for debugging
    std::vector<mpq_class> to_power_basis() const;
    static CycElt from_power_basis(CycParams p, const std::vector<mpq_class>& c);

    nlohmann::json to_json() const;
    static CycElt from_json(const nlohmann::json& j);

private:
    void normalize();
    CycParams params_;
    std::vector<mpz_class> coeffs_; // index j-1 holds coeff of zeta^j
    mpz_class denom_;
};

CycElt cyc_mul(const CycElt& a, const CycElt& b);
// Galois action zeta^j -> zeta^(i*j mod ell); i != 0 mod ell.
CycElt galois_apply(const CycElt& a, long i);
mpq_class trace(const CycElt& a);      // sum over all ell-1 Galois images
mpq_class field_norm(const CycElt& a); // product over all ell-1 Galois images
// phi^+(a) = sum_{i=1..n} a^(phi_i^-1)
CycElt phi_plus(const CycElt& a);
// phi^*(a) = prod_{i=1..n} a^(phi_i^-1)
CycElt phi_star(const CycElt& a);
// Real cyclotomic unit xi_a = zeta^((1-a)/2) (1-zeta^a)/(1-zeta); the
// half-integral power is resolved through zeta_2ell = -zeta^((ell+1)/2).
CycElt cyclotomic_unit(CycParams p, long a);

// Residue-ring element in O_k / m O_k, same basis, coefficients in [0, m).
class ResidueElt {
public:
    ResidueElt(CycParams params, mpz_class modulus);
    static ResidueElt one(CycParams p, const mpz_class& m);

    const CycParams& params() const { return params_; }
    const mpz_class& modulus() const { return m_; }
    mpz_class& coeff(long j) { return c_[j - 1]; }
    const mpz_class& coeff(long j) const { return c_[j - 1]; }

    bool operator==(const ResidueElt& o) const;
    bool is_one() const;
    ResidueElt operator*(const ResidueElt& o) const;
    ResidueElt pow(const mpz_class& e) const;

private:
    CycParams params_;
    mpz_class m_;
    std::vector<mpz_class> c_;
};

// Reduce a mod m; the denominator must be invertible mod m.
ResidueElt residue_reduce(const CycElt& a, const mpz_class& m);
// Least e > 0 with r^e = 1, via the group exponent of (O_k/mO_k)^* derived
// from the splitting of each prime q | m (order of q mod ell), then prime
// stripping. Throws NonInvertibleError if r is not a unit.
mpz_class multiplicative_order(const ResidueElt& r);

} // namespace cyclotheta
