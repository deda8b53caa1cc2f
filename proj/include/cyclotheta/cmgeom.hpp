#pragma once

#include <json.hpp>

#include "cyclotheta/cnum.hpp"
#include "cyclotheta/cyclotomic.hpp"
#include "cyclotheta/intmat.hpp"

namespace cyclotheta {

// rho = (zeta - zeta^-1)/ell; purely imaginary, -rho^2 totally positive,
// Im(rho^phi_i) > 0 for i <= n, Tr(rho x) integral on O_k.
CycElt rho(long ell);

// The Z-basis e_1..e_2n of O_k: e_i = zeta^(2i) for i <= n and
// e_(n+i) = zeta + zeta^3 + ... + zeta^(2i-1).
std::vector<CycElt> cm_basis(long ell);

// E(v(a), v(b)) = Tr(rho a conj(b)); exact integer for integral a, b.
mpz_class riemann_form(long ell, const CycElt& a, const CycElt& b);
// Gram matrix (E(v(e_i), v(e_j)))_ij; equals J.
BigIntMatrix riemann_gram(long ell);
BigIntMatrix symplectic_J(int n);

// Numeric embedding phi_t: zeta -> e(t/ell), certified.
CComplex embed(const CycElt& a, long t, mpfr_prec_t prec);

// CM point z = Omega_2^-1 Omega_1 in the Siegel upper half-space, stored
// with certified entries, exactly symmetric values, and a certified
// positive lower bound on the smallest eigenvalue of Im z.
struct CMPoint {
    long n = 0;
    mpfr_prec_t prec = 0;
    CMatrix z;
    Real lambda_min_lower{Mag::kPrec};
    nlohmann::json to_json() const;
};

CMPoint cm_point(long ell, mpfr_prec_t prec);
// Certify an arbitrary matrix as a Siegel point (symmetry within error,
// positive-definite imaginary part); used by tests and the transformation law.
CMPoint certify_siegel_point(const CMatrix& z, mpfr_prec_t prec);

// Regular representation h(alpha) in the e-basis: alpha e_i = sum_j h_ij e_j.
// Exact rational matrix num/den; den = 1 for integral alpha.
struct RegRep {
    BigIntMatrix num;
    mpz_class den = 1;
    bool integral() const { return den == 1; }
};

RegRep regular_rep(long ell, const CycElt& alpha);

struct HIdentityReport {
    bool conj_identity;     // h(conj a) = J h(a)^T J^-1, exact
    Mag intertwine_residual; // max entry of Phi(a) Omega - Omega h(a)^T
    Mag omega_scale;         // max entry magnitude of Omega
    bool intertwine_ok;      // residual <= 2^(-P+20) * scale
    bool pass() const { return conj_identity && intertwine_ok; }
};

HIdentityReport check_h_identities(long ell, const CycElt& alpha, mpfr_prec_t prec);

} // namespace cyclotheta
