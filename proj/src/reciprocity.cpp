#include "cyclotheta/reciprocity.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>

namespace cyclotheta {

CharFamily default_family(long ell) {
    CycParams cp(ell);
    const long n = cp.n;
    CharFamily fam;
    fam.ell = ell;
    for (long i = 1; i <= n + 1; i++) {
        std::vector<long> r((size_t)n, 0), s((size_t)n, 0);
        r[0] = 1;
        for (long j = 1; j <= n; j++)
            if (j < i) s[(size_t)(j - 1)] = 1;
        fam.r.push_back(std::move(r));
        fam.s.push_back(std::move(s));
    }
    return fam;
}

std::pair<std::vector<mpz_class>, std::vector<mpz_class>>
ab_vectors(long ell, long i, long j, const CharFamily& fam) {
    CycParams cp(ell);
    const long n = cp.n;
    if (i < 1 || i > n + 1 || j < 1 || j > n + 1) throw ParameterError("index out of range");
    RegRep h = regular_rep(ell, phi_plus(CycElt::zeta_pow(cp, j)));
    if (!h.integral()) throw ConsistencyError("h(phi_plus(zeta^j)) not integral");
    std::vector<mpz_class> v((size_t)(2 * n));
    for (long k = 0; k < n; k++) {
        v[(size_t)k] = fam.r[(size_t)(i - 1)][(size_t)k];
        v[(size_t)(n + k)] = fam.s[(size_t)(i - 1)][(size_t)k];
    }
    std::vector<mpz_class> w = h.num.transpose().mul_vec(v);
    std::vector<mpz_class> a((size_t)n), b((size_t)n);
    for (long k = 0; k < n; k++) {
        a[(size_t)k] = 2 * w[(size_t)k];
        b[(size_t)k] = 2 * w[(size_t)(n + k)];
        if (mpz_odd_p(a[(size_t)k].get_mpz_t()) || mpz_odd_p(b[(size_t)k].get_mpz_t()))
            throw ConsistencyError("ab_vectors produced an odd entry");
    }
    return {a, b};
}

AMatrix a_matrix(long ell, const CharFamily& fam) {
    CycParams cp(ell);
    const long n = cp.n;
    AMatrix A;
    A.ell = ell;
    A.a = BigIntMatrix((int)(n + 1), (int)(n + 1));
    for (long j = 1; j <= n + 1; j++) {
        RegRep h = regular_rep(ell, phi_plus(CycElt::zeta_pow(cp, j)));
        BigIntMatrix ht = h.num.transpose();
        for (long i = 1; i <= n + 1; i++) {
            std::vector<mpz_class> v((size_t)(2 * n));
            for (long k = 0; k < n; k++) {
                v[(size_t)k] = fam.r[(size_t)(i - 1)][(size_t)k];
                v[(size_t)(n + k)] = fam.s[(size_t)(i - 1)][(size_t)k];
            }
            std::vector<mpz_class> w = ht.mul_vec(v); // (a;b)/2
            // a_ij = -r_i.s_i + (r_i.b - a.s_i)/2 with (a;b) = 2w
            mpz_class rs = 0, cross = 0;
            for (long k = 0; k < n; k++) {
                rs += mpz_class(fam.r[(size_t)(i - 1)][(size_t)k]) * fam.s[(size_t)(i - 1)][(size_t)k];
                cross += mpz_class(fam.r[(size_t)(i - 1)][(size_t)k]) * w[(size_t)(n + k)] -
                         w[(size_t)k] * fam.s[(size_t)(i - 1)][(size_t)k];
            }
            A.a.at((int)(i - 1), (int)(j - 1)) = -rs + cross;
        }
    }
    return A;
}

nlohmann::json AMatrix::to_json(bool with_factors) const {
    nlohmann::json j;
    j["l"] = ell;
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < a.rows(); i++) {
        nlohmann::json row = nlohmann::json::array();
        for (int k = 0; k < a.cols(); k++) row.push_back(mpz_get_si(a.at(i, k).get_mpz_t()));
        rows.push_back(row);
    }
    j["matrix"] = rows;
    mpz_class det = det_exact(a);
    j["det"] = det.get_str();
    if (with_factors && det != 0) {
        Factorization f = factorize(det);
        nlohmann::json fs = nlohmann::json::array();
        for (auto& [p, e] : f.primes) fs.push_back(nlohmann::json::array({p.get_str(), e}));
        j["factors"] = fs;
        j["unfactored"] = f.unfactored.get_str();
    }
    return j;
}

std::vector<long> zeta_row(long ell) {
    if (ell != 5) throw UnsupportedParameters("zeta augmentation defined only for ell = 5");
    return {-2, -2, -2};
}

namespace {

BigIntMatrix augmented_matrix_5(const AMatrix& A) {
    BigIntMatrix M(3, 3);
    auto zr = zeta_row(5);
    for (int j = 0; j < 3; j++) {
        M.at(0, j) = zr[(size_t)j];
        M.at(1, j) = A.a.at(0, j);
        M.at(2, j) = A.a.at(2, j);
    }
    return M;
}

} // namespace

nlohmann::json SubmatrixReport::to_json() const {
    nlohmann::json j;
    j["l"] = ell;
    j["p"] = p;
    j["description"] = description;
    j["det"] = det.get_str();
    nlohmann::json fs = nlohmann::json::array();
    for (auto& [q, e] : factors.primes) fs.push_back(nlohmann::json::array({q.get_str(), e}));
    j["factors"] = fs;
    j["coprime_to_p"] = coprime_to_p;
    return j;
}

SubmatrixReport submatrix_checks(long ell, long p) {
    AMatrix A = a_matrix(ell, default_family(ell));
    SubmatrixReport rep;
    rep.ell = ell;
    rep.p = p;
    BigIntMatrix sub;
    if (ell == 7 && p == 5) {
        sub = A.a;
        rep.description = "full A_7";
    } else if (ell == 11 && p == 3) {
        sub = A.a.submatrix({0, 1, 2, 3, 4}, {1, 2, 3, 4, 5});
        rep.description = "A_11 rows 1-5, columns 2-6";
    } else if (ell == 13 && p == 5) {
        sub = A.a.submatrix({0, 1, 2, 3, 4, 5}, {1, 2, 3, 4, 5, 6});
        rep.description = "A_13 rows 1-6, columns 2-7";
    } else if (ell == 5 && p != 5 && p % 2 == 1 && p >= 3) {
        sub = augmented_matrix_5(A);
        rep.description = "zeta-augmented 3x3 system for ell = 5";
    } else {
        throw ParameterError("no designated sub-determinant for this (ell, p)");
    }
    rep.det = det_exact(sub);
    rep.factors = factorize(rep.det);
    rep.coprime_to_p = rep.det % p != 0;
    return rep;
}

mpfr_prec_t precision_cap() {
    const char* env = std::getenv("CYCLOTHETA_PREC_CAP");
    if (env != nullptr) {
        long v = std::atol(env);
        if (v >= 64) return (mpfr_prec_t)v;
    }
    return 1024;
}

nlohmann::json OrbitReport::to_json() const {
    nlohmann::json j;
    j["l"] = ell;
    j["p"] = p;
    j["mu"] = mu;
    j["alpha"] = alpha;
    j["prec"] = (long)prec_used;
    nlohmann::json vals = nlohmann::json::array();
    for (auto& v : values) vals.push_back(v.to_json());
    j["values"] = vals;
    j["conjugates"] = conjugate_count;
    j["min_distance"] = r_dec(min_distance);
    j["max_err_exp"] = max_err.is_zero() ? (long)-999999 : max_err.exp2_of();
    j["distinct"] = distinct;
    return j;
}

namespace {

OrbitReport orbit_once(long ell, long p, long mu, long alpha, mpfr_prec_t prec,
                       const CharFamily& fam, const BigIntMatrix& mult,
                       const std::vector<long>& phi_idx, bool zeta_term) {
    CycParams cp(ell);
    OrbitReport rep;
    rep.ell = ell;
    rep.p = p;
    rep.mu = mu;
    rep.alpha = alpha;
    rep.prec_used = prec;

    CMPoint z = cm_point(ell, prec);
    mpz_class pmu, palpha;
    mpz_ui_pow_ui(pmu.get_mpz_t(), (unsigned long)p, (unsigned long)mu);
    mpz_ui_pow_ui(palpha.get_mpz_t(), (unsigned long)p, (unsigned long)alpha);

    std::vector<CComplex> terms;
    if (zeta_term) {
        // zeta_(p^(2mu-alpha)) joins as the leading generator term
        mpz_class ord;
        mpz_ui_pow_ui(ord.get_mpz_t(), (unsigned long)p, (unsigned long)(2 * mu - alpha));
        mpq_class q(1, ord);
        CComplex root = cc_e_mpq(q, prec);
        terms.push_back(root);
        ThetaValue tv;
        tv.v = root;
        tv.prec = prec;
        rep.values.push_back(tv);
    }
    for (long idx : phi_idx) {
        Characteristic c = Characteristic::zero((size_t)cp.n);
        for (long k = 0; k < cp.n; k++) {
            c.r[(size_t)k] = mpq_class(fam.r[(size_t)idx][(size_t)k], pmu);
            c.s[(size_t)k] = mpq_class(fam.s[(size_t)idx][(size_t)k], pmu);
            c.r[(size_t)k].canonicalize();
            c.s[(size_t)k].canonicalize();
        }
        ThetaValue v = phi_quotient(z, c, prec);
        if (palpha != 1) {
            CComplex acc = v.v;
            for (mpz_class t = 1; t < palpha; t++) acc = cc_mul(acc, v.v, prec);
            v.v = acc;
        }
        terms.push_back(v.v);
        rep.values.push_back(v);
    }

    const int k = (int)terms.size();
    long total = 1;
    for (int t = 0; t < k; t++) total *= p;
    rep.conjugate_count = (size_t)total;

    // precompute the p-th roots of unity; exponent 0 is exactly one
    std::vector<CComplex> roots;
    roots.push_back(cc_one(prec));
    for (long e = 1; e < p; e++) roots.push_back(cc_e_mpq(mpq_class(e, p), prec));

    std::vector<CComplex> conj((size_t)total, cc_zero(prec));
#pragma omp parallel for schedule(static)
    for (long ci = 0; ci < total; ci++) {
        std::vector<long> cvec((size_t)k);
        long rem = ci;
        for (int t = 0; t < k; t++) {
            cvec[(size_t)t] = rem % p;
            rem /= p;
        }
        CComplex s = cc_zero(prec);
        for (int i = 0; i < k; i++) {
            long e = 0;
            for (int t = 0; t < k; t++)
                e += mpz_get_si(mult.at(i, t).get_mpz_t()) % p * cvec[(size_t)t];
            e = ((e % p) + p) % p;
            CComplex term = (e == 0) ? terms[(size_t)i] : cc_mul(roots[(size_t)e], terms[(size_t)i], prec);
            s = cc_add(s, term, prec);
        }
        conj[(size_t)ci] = s;
    }

    // pairwise separation: midpoint distance must exceed 4x the summed radii
    Real min_dist(Mag::kPrec);
    mpfr_set_inf(min_dist.get(), 1);
    bool distinct = true;
    Mag max_err = Mag::zero();
    for (long a = 0; a < total; a++) max_err = mag_max(max_err, conj[(size_t)a].err);

#pragma omp parallel
    {
        Real local_min(Mag::kPrec);
        mpfr_set_inf(local_min.get(), 1);
        bool local_ok = true;
#pragma omp for schedule(dynamic, 8)
        for (long a = 0; a < total; a++) {
            for (long b = a + 1; b < total; b++) {
                const CComplex &x = conj[(size_t)a], &y = conj[(size_t)b];
                Real dre(Mag::kPrec), dim(Mag::kPrec), d(Mag::kPrec);
                mpfr_sub(dre.get(), x.re.get(), y.re.get(), MPFR_RNDD);
                mpfr_sub(dim.get(), x.im.get(), y.im.get(), MPFR_RNDD);
                mpfr_hypot(d.get(), dre.get(), dim.get(), MPFR_RNDD);
                if (r_less(d, local_min)) local_min = d;
                Mag gate = mag_ldexp(mag_add(x.err, y.err), 2);
                if (!mag_less(gate, Mag(d))) local_ok = false;
            }
        }
#pragma omp critical
        {
            if (r_less(local_min, min_dist)) min_dist = local_min;
            if (!local_ok) distinct = false;
        }
    }
    rep.min_distance = min_dist;
    rep.max_err = max_err;
    rep.distinct = distinct;
    rep.conjugate_zero = conj[0];
    rep.conjugates = std::move(conj);
    return rep;
}

} // namespace

OrbitReport orbit(long ell, long p, long mu, long alpha, mpfr_prec_t prec) {
    CycParams cp(ell);
    RayParams rp(ell, p, mu); // validates p, mu
    if (alpha < 0 || alpha > mu - 1) throw ParameterError("alpha must lie in [0, mu-1]");
    HPlusTable hplus = HPlusTable::defaults();
    mpz_class hp = hplus.lookup(ell);
    if (cp.n % p == 0 || mpz_divisible_ui_p(hp.get_mpz_t(), (unsigned long)p))
        throw UnsupportedParameters("orbit hypothesis requires p coprime to ell*h+*n");

    CharFamily fam = default_family(ell);
    AMatrix A = a_matrix(ell, fam);
    BigIntMatrix mult;
    std::vector<long> phi_idx;
    bool zeta_term = false;
    if (ell == 5) {
        mult = augmented_matrix_5(A);
        phi_idx = {0, 2};
        zeta_term = true;
    } else {
        mpz_class det = det_exact(A.a);
        if (det == 0 || mpz_divisible_ui_p(det.get_mpz_t(), (unsigned long)p))
            throw UnsupportedParameters("orbit hypothesis requires p coprime to det(A_ell)");
        mult = A.a;
        for (long i = 0; i <= cp.n; i++) phi_idx.push_back(i);
    }
    {
        mpz_class detm = det_exact(mult);
        if (detm == 0 || mpz_divisible_ui_p(detm.get_mpz_t(), (unsigned long)p))
            throw UnsupportedParameters("multiplier matrix singular mod p");
    }

    mpfr_prec_t cap = precision_cap();
    mpfr_prec_t P = std::max<mpfr_prec_t>(prec, 64);
    while (true) {
        try {
            OrbitReport rep = orbit_once(ell, p, mu, alpha, P, fam, mult, phi_idx, zeta_term);
            if (rep.distinct) return rep;
            if (P >= cap)
                throw InconclusiveAtPrecision(
                    "conjugates not separated beyond certified error at the precision cap");
        } catch (const PrecisionExhausted&) {
            if (P >= cap) throw;
        }
        P = std::min<mpfr_prec_t>(cap, P * 2);
    }
}

} // namespace cyclotheta
