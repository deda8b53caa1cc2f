#pragma once

#include <json.hpp>
#include <utility>
#include <vector>

#include "cyclotheta/cmgeom.hpp"
#include "cyclotheta/factor.hpp"
#include "cyclotheta/intmat.hpp"
#include "cyclotheta/rayclass.hpp"
#include "cyclotheta/theta.hpp"

namespace cyclotheta {

// Family of n+1 integral characteristic rows (r_i, s_i), each of length n.
struct CharFamily {
    long ell;
    std::vector<std::vector<long>> r, s; // n+1 vectors of length n
};

// r_i = (1,0,...,0) for every i; (s_i)_j = 1 if j < i, else 0.
CharFamily default_family(long ell);

// The pair (a_(1,j); b_(1,j)) = 2 h(phi^+(zeta^j))^T (r_i; s_i), split into
// halves; every entry must come out even.
std::pair<std::vector<mpz_class>, std::vector<mpz_class>>
ab_vectors(long ell, long i, long j, const CharFamily& fam);

struct AMatrix {
    long ell;
    BigIntMatrix a; // (n+1) x (n+1), a_ij = -r_i.s_i + (r_i.b - a.s_i)/2
    nlohmann::json to_json(bool with_factors) const;
};

AMatrix a_matrix(long ell, const CharFamily& fam);

// Galois multiplier exponents of the adjoined root of unity for ell = 5.
std::vector<long> zeta_row(long ell);

// The matrix, augmented for ell = 5 by the zeta row, that drives the orbit:
// rows/terms selected per the supported construction for (ell, p).
struct OrbitSystem {
    BigIntMatrix multipliers;      // k x k exponent matrix
    std::vector<long> phi_indices; // which family rows contribute theta terms
    bool zeta_term;                // leading zeta_(p^(2mu-alpha)) term (ell = 5)
};

struct SubmatrixReport {
    long ell, p;
    std::string description;
    mpz_class det;
    Factorization factors;
    bool coprime_to_p;
    nlohmann::json to_json() const;
};

// The designated sub-determinant checks for the supported (ell, p) pairs:
// (7,5) full matrix, (11,3) rows 1..5 x cols 2..6, (13,5) rows 1..6 x
// cols 2..7, and (5, p) the zeta-augmented 3x3 system.
SubmatrixReport submatrix_checks(long ell, long p);

struct OrbitReport {
    long ell, p, mu, alpha;
    mpfr_prec_t prec_used = 0;
    std::vector<ThetaValue> values;  // the theta-quotient terms v_i
    std::vector<CComplex> conjugates; // all p^k predicted conjugates S_c
    CComplex conjugate_zero;          // the c = 0 conjugate, exactly sum(values)
    size_t conjugate_count = 0;
    Real min_distance{Mag::kPrec}; // lower bound over pairs of |S_c - S_c'|
    Mag max_err;                   // largest certified radius among conjugates
    bool distinct = false;
    nlohmann::json to_json() const;
};

// Evaluates the generator terms v_i = Phi_(r_i/p^mu, s_i/p^mu)(z_ell)^(p^alpha),
// forms all p^k predicted conjugates S_c = sum_i e((Mc)_i / p) v_i and checks
// pairwise separation beyond 4x the summed certified radii, escalating the
// precision (doubling, capped) until the verdict is certified.
OrbitReport orbit(long ell, long p, long mu, long alpha, mpfr_prec_t prec);

// precision cap for escalation ladders; CYCLOTHETA_PREC_CAP overrides 1024
mpfr_prec_t precision_cap();

} // namespace cyclotheta
