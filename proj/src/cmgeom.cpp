#include "cyclotheta/cmgeom.hpp"

#include <algorithm>

namespace cyclotheta {

CycElt rho(long ell) {
    CycParams cp(ell);
    CycElt num = CycElt::zeta_pow(cp, 1) - CycElt::zeta_pow(cp, ell - 1);
    return CycElt::from_rational(cp, mpq_class(1, ell)) * num;
}

std::vector<CycElt> cm_basis(long ell) {
    CycParams cp(ell);
    std::vector<CycElt> e;
    e.reserve(2 * cp.n);
    for (long i = 1; i <= cp.n; i++) e.push_back(CycElt::zeta_pow(cp, 2 * i));
    CycElt acc = CycElt::zero(cp);
    for (long i = 1; i <= cp.n; i++) {
        acc = acc + CycElt::zeta_pow(cp, 2 * i - 1);
        e.push_back(acc);
    }
    return e;
}

mpz_class riemann_form(long ell, const CycElt& a, const CycElt& b) {
    mpq_class t = trace(rho(ell) * a * b.conj());
    if (t.get_den() != 1)
        throw ConsistencyError("Riemann form value not integral");
    return t.get_num();
}

BigIntMatrix riemann_gram(long ell) {
    auto e = cm_basis(ell);
    const int m = (int)e.size();
    BigIntMatrix g(m, m);
    for (int i = 0; i < m; i++)
        for (int j = 0; j < m; j++) g.at(i, j) = riemann_form(ell, e[i], e[j]);
    return g;
}

BigIntMatrix symplectic_J(int n) {
    BigIntMatrix j(2 * n, 2 * n);
    for (int i = 0; i < n; i++) {
        j.at(i, n + i) = -1;
        j.at(n + i, i) = 1;
    }
    return j;
}

CComplex embed(const CycElt& a, long t, mpfr_prec_t prec) {
    const long ell = a.ell();
    mpfr_prec_t wp = prec + 16;
    CComplex acc = cc_zero(wp);
    for (long j = 1; j <= ell - 1; j++) {
        if (a.coeff(j) == 0) continue;
        long k = (t * j) % ell;
        CComplex root = cc_e_mpq(mpq_class(k, ell), wp);
        CComplex term(wp);
        term.re = r_mul(r_from_mpz(a.coeff(j), wp), root.re, wp);
        term.im = r_mul(r_from_mpz(a.coeff(j), wp), root.im, wp);
        Mag cmag = Mag::from_mpz(a.coeff(j));
        term.err = mag_add(mag_mul(root.err, cmag),
                           mag_ldexp(mag_add(mag_abs_upper(term.re), mag_abs_upper(term.im)),
                                     -(long)wp + 2));
        acc = cc_add(acc, term, wp);
    }
    if (a.denom() != 1) acc = cc_div_mpz(acc, a.denom(), wp);
    return cc_round_to(acc, prec);
}

nlohmann::json CMPoint::to_json() const {
    nlohmann::json j;
    j["n"] = n;
    j["prec"] = (long)prec;
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < z.rows(); i++) {
        nlohmann::json row = nlohmann::json::array();
        for (int k = 0; k < z.cols(); k++) {
            const CComplex& c = z.at(i, k);
            nlohmann::json e;
            e["re"] = r_dec(c.re);
            e["im"] = r_dec(c.im);
            e["err_exp"] = c.err.is_zero() ? (long)-999999 : c.err.exp2_of();
            row.push_back(e);
        }
        rows.push_back(row);
    }
    j["entries"] = rows;
    j["lambda_min"] = r_dec(lambda_min_lower);
    return j;
}

CMPoint certify_siegel_point(const CMatrix& zin, mpfr_prec_t prec) {
    const int n = zin.rows();
    if (zin.cols() != n) throw ParameterError("Siegel point must be square");
    CMatrix z(n, n, prec);
    // symmetry check within certified error, then exact symmetrization
    for (int i = 0; i < n; i++)
        for (int j = i; j < n; j++) {
            const CComplex &a = zin.at(i, j), &b = zin.at(j, i);
            Mag gap = cc_dist_upper(a, b, prec);
            Mag allow = mag_add(mag_add(a.err, b.err),
                                mag_ldexp(mag_add(cc_mag_upper(a), Mag::pow2(0)), -(long)prec + 8));
            if (i != j && mag_less(allow, gap))
                throw ConsistencyError("matrix not symmetric within certified error");
            CComplex m(prec);
            m.re = r_ldexp(r_add(a.re, b.re, prec), -1);
            m.im = r_ldexp(r_add(a.im, b.im, prec), -1);
            Mag half_gap = mag_ldexp(gap, -1);
            m.err = mag_add(mag_max(a.err, b.err), half_gap);
            z.at(i, j) = m;
            z.at(j, i) = m;
        }
    std::vector<std::vector<RealErr>> y(n, std::vector<RealErr>(n, RealErr(prec)));
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) {
            y[i][j].v = z.at(i, j).im;
            y[i][j].err = z.at(i, j).err;
        }
    Real lam = sym_lambda_min_lower(y, prec);
    if (lam.sgn() <= 0)
        throw PrecisionExhausted("imaginary part not certified positive definite");
    CMPoint pt;
    pt.n = n;
    pt.prec = prec;
    pt.z = z;
    pt.lambda_min_lower = lam;
    return pt;
}

CMPoint cm_point(long ell, mpfr_prec_t prec) {
    if (prec < 64) throw ParameterError("precision must be >= 64 bits");
    CycParams cp(ell);
    const int n = (int)cp.n;
    mpfr_prec_t wp = prec + 32;
    auto e = cm_basis(ell);
    CMatrix omega1(n, n, wp), omega2(n, n, wp);
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) {
            omega1.at(i, j) = embed(e[(size_t)j], i + 1, wp);
            omega2.at(i, j) = embed(e[(size_t)(n + j)], i + 1, wp);
        }
    CMatrix z = cm_solve(omega2, omega1, wp);
    CMatrix zr(n, n, prec);
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) zr.at(i, j) = cc_round_to(z.at(i, j), prec);
    return certify_siegel_point(zr, prec);
}

RegRep regular_rep(long ell, const CycElt& alpha) {
    CycParams cp(ell);
    const long n = cp.n;
    auto e = cm_basis(ell);
    RegRep h;
    h.num = BigIntMatrix((int)(2 * n), (int)(2 * n));
    h.den = 1;
    std::vector<std::vector<mpz_class>> rows((size_t)2 * n);
    std::vector<mpz_class> dens((size_t)2 * n);
    for (long i = 0; i < 2 * n; i++) {
        CycElt prod = alpha * e[(size_t)i];
        // zeta-coefficients to e-coordinates: zeta^(2k) = e_k,
        // zeta^(2k-1) = e_(n+k) - e_(n+k-1) with e_n+0 = 0
        std::vector<mpz_class>& r = rows[(size_t)i];
        r.resize((size_t)2 * n);
        for (long k = 1; k <= n; k++) r[(size_t)(k - 1)] = prod.coeff(2 * k);
        for (long k = 1; k <= n; k++) {
            mpz_class c = prod.coeff(2 * k - 1);
            if (2 * k + 1 <= 2 * n) c -= prod.coeff(2 * k + 1);
            r[(size_t)(n + k - 1)] = c;
        }
        dens[(size_t)i] = prod.denom();
        mpz_lcm(h.den.get_mpz_t(), h.den.get_mpz_t(), dens[(size_t)i].get_mpz_t());
    }
    for (long i = 0; i < 2 * n; i++) {
        mpz_class scale = h.den / dens[(size_t)i];
        for (long j = 0; j < 2 * n; j++) h.num.at((int)i, (int)j) = rows[(size_t)i][(size_t)j] * scale;
    }
    return h;
}

HIdentityReport check_h_identities(long ell, const CycElt& alpha, mpfr_prec_t prec) {
    CycParams cp(ell);
    const int n = (int)cp.n;
    HIdentityReport rep;

    RegRep ha = regular_rep(ell, alpha);
    RegRep hc = regular_rep(ell, alpha.conj());
    BigIntMatrix J = symplectic_J(n);
    // J^-1 = -J, so the identity reads  hc = - J ha^T J  (cross-multiplied dens)
    BigIntMatrix rhs = J * ha.num.transpose() * J;
    BigIntMatrix lhs = hc.num;
    bool ok = true;
    for (int i = 0; i < 2 * n && ok; i++)
        for (int j = 0; j < 2 * n && ok; j++)
            if (lhs.at(i, j) * ha.den != -rhs.at(i, j) * hc.den) ok = false;
    rep.conj_identity = ok;

    // Phi(alpha) Omega = Omega h(alpha)^T at working precision
    mpfr_prec_t wp = prec + 16;
    auto e = cm_basis(ell);
    CMatrix omega(n, 2 * n, wp);
    for (int i = 0; i < n; i++)
        for (int j = 0; j < 2 * n; j++) omega.at(i, j) = embed(e[(size_t)j], i + 1, wp);
    CMatrix lhsM(n, 2 * n, wp);
    for (int i = 0; i < n; i++) {
        CComplex phi = embed(alpha, i + 1, wp);
        for (int j = 0; j < 2 * n; j++) lhsM.at(i, j) = cc_mul(phi, omega.at(i, j), wp);
    }
    CMatrix ht(2 * n, 2 * n, wp);
    for (int i = 0; i < 2 * n; i++)
        for (int j = 0; j < 2 * n; j++) {
            CComplex c(wp);
            c.re = r_from_mpz(ha.num.at(j, i), wp);
            if (ha.den != 1) c = cc_div_mpz(c, ha.den, wp);
            ht.at(i, j) = c;
        }
    CMatrix rhsM = cm_mul(omega, ht, wp);
    rep.intertwine_residual = cm_max_entry_mag(cm_sub(lhsM, rhsM, wp));
    rep.omega_scale = cm_max_entry_mag(omega);
    Mag allow = mag_ldexp(mag_max(rep.omega_scale, Mag::pow2(0)), -(long)prec + 20);
    rep.intertwine_ok = !mag_less(allow, rep.intertwine_residual);
    return rep;
}

} // namespace cyclotheta
