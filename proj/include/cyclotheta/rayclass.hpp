#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "cyclotheta/cyclotomic.hpp"
#include "cyclotheta/intmat.hpp"

namespace cyclotheta {

struct RayParams {
    long ell;
    long p;
    long mu;
    RayParams(long ell_, long p_, long mu_);
};

// Table of real class numbers h_ell^+; defaults to 1 for ell <= 67 and can
// be extended from a JSON map { "ell": h } for larger ell.
class HPlusTable {
public:
    static HPlusTable defaults();
    void load_json(const nlohmann::json& j);
    mpz_class lookup(long ell) const; // throws UnsupportedParameters if unknown

private:
    std::map<long, mpz_class> overrides_;
};

// alpha_{mu,i}: 1 + 2p^mu zeta^i for i <= n+1, and
// 1 + 2p^mu (zeta^n + zeta^(n+1) - zeta^i - zeta^-i) for n+2 <= i <= 2n.
CycElt alpha_generator(const RayParams& params, long i);

// 2n x 2n integer matrix of the zeta^j coefficients of the alpha's;
// det(B) = (-1)^(n-1).
BigIntMatrix matrix_B(const RayParams& params);

// n x n 0/1 matrix, n_ij = 1 iff i*j mod ell lands in {1..n}.
BigIntMatrix matrix_N(long ell);

// (n+1) x 2n matrix over F_p, m_ij = coefficient of zeta^j in phi^+(zeta^i);
// cross-checked against the i*j^-1 membership rule entrywise.
FpMatrix matrix_M(long ell, long p);

struct H1S2Row {
    long a;
    mpz_class order;         // multiplicative order of xi_a mod 2p
    std::vector<long> image; // coefficients of (xi_a^order - 1)/(2p) mod p
    bool nonzero;
};

// A relation xi_a^x = xi_b^y (mod 2p) whose unit xi_a^-x xi_b^y lies in S_1
// beyond the single-power sublattice; its image can enlarge the span.
struct H1S2MixedRow {
    long a, b;
    mpz_class x, y;
    std::vector<long> image;
};

struct H1S2Report {
    long ell, p;
    std::vector<H1S2Row> rows;        // single powers, the table's shape
    std::vector<H1S2MixedRow> mixed;  // kernel generators beyond single powers
    int dimension;   // rank of the full image span (exact for n-1 <= 2,
                     // pairwise lower bound beyond that)
    bool below_full; // dimension < n-1
    bool exact_span; // false when only the pairwise lower bound was computed
    nlohmann::json to_json() const;
};

H1S2Report h1s2(long ell, long p, const HPlusTable& hplus = HPlusTable::defaults());

struct GaloisPrediction {
    long ell, p;
    int rank_M;
    mpz_class det_N;
    bool p_divides_detN;
    int h1s2_dim;
    mpz_class galois_order; // p^rank_M = |Gal(K_mu/k_mu)| for every mu
    bool ray_class_equality; // K_mu = k_{mu+1} for all mu
    nlohmann::json to_json() const;
};

GaloisPrediction galois_predictions(long ell, long p,
                                    const HPlusTable& hplus = HPlusTable::defaults());

} // namespace cyclotheta
