#include "cyclotheta/cnum.hpp"

#include <algorithm>
#include <cmath>

namespace cyclotheta {

namespace {

// upper bound of rounding slop for a freshly computed complex value:
// a handful of nearest-rounded mpfr operations each err <= 2^-prec * |result|.
Mag round_slop(const Real& re, const Real& im, mpfr_prec_t prec, int ops = 4) {
    Mag m = mag_add(mag_abs_upper(re), mag_abs_upper(im));
    long shift = -(long)prec + 2;
    while (ops > 4) { shift++; ops /= 2; }
    return mag_ldexp(m, shift);
}

Mag round_slop_r(const Real& v, mpfr_prec_t prec) {
    return mag_ldexp(mag_abs_upper(v), -(long)prec + 2);
}

} // namespace

CComplex cc_zero(mpfr_prec_t prec) { return CComplex(prec); }

CComplex cc_one(mpfr_prec_t prec) {
    CComplex c(prec);
    mpfr_set_si(c.re.get(), 1, MPFR_RNDN);
    return c;
}

CComplex cc_from_si(long re, long im, mpfr_prec_t prec) {
    CComplex c(prec);
    mpfr_set_si(c.re.get(), re, MPFR_RNDN);
    mpfr_set_si(c.im.get(), im, MPFR_RNDN);
    return c;
}

CComplex cc_from_mpq(const mpq_class& re, const mpq_class& im, mpfr_prec_t prec) {
    CComplex c(prec);
    c.re = r_from_mpq(re, prec);
    c.im = r_from_mpq(im, prec);
    c.err = round_slop(c.re, c.im, prec);
    return c;
}

CComplex cc_add(const CComplex& a, const CComplex& b, mpfr_prec_t prec) {
    CComplex c(prec);
    c.re = r_add(a.re, b.re, prec);
    c.im = r_add(a.im, b.im, prec);
    c.err = mag_add(mag_add(a.err, b.err), round_slop(c.re, c.im, prec));
    return c;
}

CComplex cc_sub(const CComplex& a, const CComplex& b, mpfr_prec_t prec) {
    CComplex c(prec);
    c.re = r_sub(a.re, b.re, prec);
    c.im = r_sub(a.im, b.im, prec);
    c.err = mag_add(mag_add(a.err, b.err), round_slop(c.re, c.im, prec));
    return c;
}

CComplex cc_mul(const CComplex& a, const CComplex& b, mpfr_prec_t prec) {
    mpfr_prec_t wp = prec + 4;
    CComplex c(prec);
    Real t1 = r_mul(a.re, b.re, wp), t2 = r_mul(a.im, b.im, wp);
    Real t3 = r_mul(a.re, b.im, wp), t4 = r_mul(a.im, b.re, wp);
    c.re = r_sub(t1, t2, prec);
    c.im = r_add(t3, t4, prec);
    Mag ma = mag_add(mag_abs_upper(a.re), mag_abs_upper(a.im));
    Mag mb = mag_add(mag_abs_upper(b.re), mag_abs_upper(b.im));
    Mag prop = mag_add(mag_add(mag_mul(ma, b.err), mag_mul(mb, a.err)),
                       mag_mul(a.err, b.err));
    c.err = mag_add(prop, round_slop(c.re, c.im, prec, 8));
    return c;
}

CComplex cc_div(const CComplex& a, const CComplex& b, mpfr_prec_t prec) {
    Real lb = cc_mag_lower(b);
    if (lb.sgn() <= 0)
        throw PrecisionExhausted("divisor not separated from zero at current precision");
    mpfr_prec_t wp = prec + 8;
    Real den = r_add(r_mul(b.re, b.re, wp), r_mul(b.im, b.im, wp), wp);
    Real nre = r_add(r_mul(a.re, b.re, wp), r_mul(a.im, b.im, wp), wp);
    Real nim = r_sub(r_mul(a.im, b.re, wp), r_mul(a.re, b.im, wp), wp);
    CComplex q(prec);
    q.re = r_div(nre, den, prec);
    q.im = r_div(nim, den, prec);
    // |a/b - q~| <= (a.err + |a|/|b| * b.err) / |b|  + rounding
    Mag ma = mag_add(mag_abs_upper(a.re), mag_abs_upper(a.im));
    Mag qmag = mag_div(ma, lb);
    Mag prop = mag_div(mag_add(a.err, mag_mul(qmag, b.err)), lb);
    q.err = mag_add(prop, round_slop(q.re, q.im, prec, 16));
    return q;
}

CComplex cc_neg(const CComplex& a) {
    CComplex c = a;
    mpfr_neg(c.re.get(), c.re.get(), MPFR_RNDN);
    mpfr_neg(c.im.get(), c.im.get(), MPFR_RNDN);
    return c;
}

CComplex cc_conj(const CComplex& a) {
    CComplex c = a;
    mpfr_neg(c.im.get(), c.im.get(), MPFR_RNDN);
    return c;
}

CComplex cc_mul_si(const CComplex& a, long k, mpfr_prec_t prec) {
    CComplex c(prec);
    c.re = r_mul_si(a.re, k, prec);
    c.im = r_mul_si(a.im, k, prec);
    Mag kk = Mag::from_d(k < 0 ? -(double)k : (double)k);
    c.err = mag_add(mag_mul(a.err, kk), round_slop(c.re, c.im, prec));
    return c;
}

CComplex cc_div_mpz(const CComplex& a, const mpz_class& k, mpfr_prec_t prec) {
    CComplex c(prec);
    c.re = r_div_mpz(a.re, k, prec);
    c.im = r_div_mpz(a.im, k, prec);
    Real lowk = abs_lower(r_from_mpz(k, Mag::kPrec, MPFR_RNDD));
    c.err = mag_add(mag_div(a.err, lowk), round_slop(c.re, c.im, prec));
    return c;
}

Mag cc_mag_upper(const CComplex& a) {
    Mag h(r_hypot(a.re, a.im, Mag::kPrec, MPFR_RNDU));
    return mag_add(h, a.err);
}

Real cc_mag_lower(const CComplex& a) {
    Real h = r_hypot(a.re, a.im, Mag::kPrec, MPFR_RNDD);
    Real lb(Mag::kPrec);
    mpfr_sub(lb.get(), h.get(), a.err.real().get(), MPFR_RNDD);
    return lb;
}

Mag cc_dist_upper(const CComplex& a, const CComplex& b, mpfr_prec_t prec) {
    return cc_mag_upper(cc_sub(a, b, prec));
}

Real cc_dist_lower(const CComplex& a, const CComplex& b, mpfr_prec_t prec) {
    return cc_mag_lower(cc_sub(a, b, prec));
}

CComplex cc_e(const CComplex& w, const Real& two_pi, mpfr_prec_t prec) {
    mpfr_prec_t wp = prec + 8;
    Real theta = r_mul(two_pi, w.re, wp);
    Real negexp = r_mul(two_pi, w.im, wp);
    Real m(wp);
    mpfr_neg(m.get(), negexp.get(), MPFR_RNDN);
    m = r_exp(m, wp);
    Real s(wp), c(wp);
    r_sin_cos(s, c, theta, wp);
    CComplex out(prec);
    out.re = r_mul(m, c, prec);
    out.im = r_mul(m, s, prec);

    // upper bound for |e(w_true)| = exp(-2*pi*(im - err)) rounded up
    Real expo(Mag::kPrec);
    mpfr_fma(expo.get(), two_pi.get(), w.err.real().get(), expo.get(), MPFR_RNDU); // 2pi*err
    Real low_im(Mag::kPrec);
    mpfr_mul(low_im.get(), two_pi.get(), w.im.get(), MPFR_RNDD);
    mpfr_sub(expo.get(), expo.get(), low_im.get(), MPFR_RNDU);
    Mag mod_up = mag_exp_of_real(expo);

    // propagation: |e(w+d)-e(w)| <= |e(w)| (e^{2 pi |d|} - 1)
    Mag twopi_err = mag_mul_real(w.err, two_pi);
    Mag prop = mag_mul(mod_up, mag_expm1(twopi_err));
    // argument rounding: theta carries relative error ~2^-wp, absolute up to
    // ulp(theta); sin/cos then shift by that phase
    long theta_exp = theta.exp2_of();
    Mag phase = mag_mul(mod_up, Mag::pow2(theta_exp - (long)wp + 4));
    Mag slop = mag_mul(mod_up, Mag::pow2(-(long)prec + 4));
    out.err = mag_add(mag_add(prop, phase), slop);
    return out;
}

CComplex cc_e_mpq(const mpq_class& q, mpfr_prec_t prec) {
    CComplex w(prec + 8);
    w.re = r_from_mpq(q, prec + 8);
    w.err = mag_ldexp(mag_abs_upper(w.re), -(long)prec - 7);
    return cc_e(w, r_two_pi(prec + 8), prec);
}

CComplex cc_round_to(const CComplex& a, mpfr_prec_t prec) {
    if (a.prec() <= prec) return a;
    CComplex c(prec);
    mpfr_set(c.re.get(), a.re.get(), MPFR_RNDN);
    mpfr_set(c.im.get(), a.im.get(), MPFR_RNDN);
    c.err = mag_add(a.err, round_slop(c.re, c.im, prec));
    return c;
}

RealErr re_add(const RealErr& a, const RealErr& b, mpfr_prec_t prec) {
    RealErr c(prec);
    c.v = r_add(a.v, b.v, prec);
    c.err = mag_add(mag_add(a.err, b.err), round_slop_r(c.v, prec));
    return c;
}

RealErr re_sub(const RealErr& a, const RealErr& b, mpfr_prec_t prec) {
    RealErr c(prec);
    c.v = r_sub(a.v, b.v, prec);
    c.err = mag_add(mag_add(a.err, b.err), round_slop_r(c.v, prec));
    return c;
}

RealErr re_mul(const RealErr& a, const RealErr& b, mpfr_prec_t prec) {
    RealErr c(prec);
    c.v = r_mul(a.v, b.v, prec);
    Mag prop = mag_add(mag_add(mag_mul(mag_abs_upper(a.v), b.err),
                               mag_mul(mag_abs_upper(b.v), a.err)),
                       mag_mul(a.err, b.err));
    c.err = mag_add(prop, round_slop_r(c.v, prec));
    return c;
}

CMatrix cm_mul(const CMatrix& a, const CMatrix& b, mpfr_prec_t prec) {
    CMatrix c(a.rows(), b.cols(), prec);
    for (int i = 0; i < a.rows(); i++)
        for (int j = 0; j < b.cols(); j++) {
            CComplex acc = cc_zero(prec);
            for (int k = 0; k < a.cols(); k++)
                acc = cc_add(acc, cc_mul(a.at(i, k), b.at(k, j), prec), prec);
            c.at(i, j) = acc;
        }
    return c;
}

CMatrix cm_sub(const CMatrix& a, const CMatrix& b, mpfr_prec_t prec) {
    CMatrix c(a.rows(), a.cols(), prec);
    for (int i = 0; i < a.rows(); i++)
        for (int j = 0; j < a.cols(); j++) c.at(i, j) = cc_sub(a.at(i, j), b.at(i, j), prec);
    return c;
}

Mag cm_max_entry_mag(const CMatrix& a) {
    Mag m = Mag::zero();
    for (int i = 0; i < a.rows(); i++)
        for (int j = 0; j < a.cols(); j++) m = mag_max(m, cc_mag_upper(a.at(i, j)));
    return m;
}

namespace {

// plain LU solve, no refinement; destroys its arguments
CMatrix lu_solve_raw(CMatrix A, CMatrix X, mpfr_prec_t prec) {
    const int n = A.rows();
    const int m = X.cols();
    for (int k = 0; k < n; k++) {
        int piv = k;
        Real best = cc_mag_lower(A.at(k, k));
        for (int i = k + 1; i < n; i++) {
            Real cand = cc_mag_lower(A.at(i, k));
            if (r_less(best, cand)) { best = cand; piv = i; }
        }
        if (best.sgn() <= 0)
            throw PrecisionExhausted("LU pivot not separated from zero");
        if (piv != k) {
            for (int j = 0; j < n; j++) std::swap(A.at(k, j), A.at(piv, j));
            for (int j = 0; j < m; j++) std::swap(X.at(k, j), X.at(piv, j));
        }
        for (int i = k + 1; i < n; i++) {
            CComplex f = cc_div(A.at(i, k), A.at(k, k), prec);
            for (int j = k + 1; j < n; j++)
                A.at(i, j) = cc_sub(A.at(i, j), cc_mul(f, A.at(k, j), prec), prec);
            for (int j = 0; j < m; j++)
                X.at(i, j) = cc_sub(X.at(i, j), cc_mul(f, X.at(k, j), prec), prec);
        }
    }
    for (int k = n - 1; k >= 0; k--) {
        for (int j = 0; j < m; j++) {
            CComplex acc = X.at(k, j);
            for (int t = k + 1; t < n; t++)
                acc = cc_sub(acc, cc_mul(A.at(k, t), X.at(t, j), prec), prec);
            X.at(k, j) = cc_div(acc, A.at(k, k), prec);
        }
    }
    return X;
}

CMatrix strip_err(const CMatrix& a) {
    CMatrix c = a;
    for (int i = 0; i < c.rows(); i++)
        for (int j = 0; j < c.cols(); j++) c.at(i, j).err = Mag::zero();
    return c;
}

} // namespace

CMatrix cm_solve(const CMatrix& A, const CMatrix& B, mpfr_prec_t prec) {
    CMatrix X0 = lu_solve_raw(A, B, prec);
    // one certified refinement step: the true solution is
    // mid(X0) + A^-1 (B - A mid(X0)), and the second term is enclosed by
    // solving against the certified residual.
    CMatrix X0m = strip_err(X0);
    CMatrix R = cm_sub(B, cm_mul(A, X0m, prec), prec);
    CMatrix D = lu_solve_raw(A, R, prec);
    CMatrix out(X0.rows(), X0.cols(), prec);
    for (int i = 0; i < out.rows(); i++)
        for (int j = 0; j < out.cols(); j++)
            out.at(i, j) = cc_add(X0m.at(i, j), D.at(i, j), prec);
    return out;
}

namespace {

// cyclic Jacobi sweeps on the value parts only; accumulates rotations in Q
void jacobi_plain(std::vector<std::vector<Real>>& a, std::vector<std::vector<Real>>& q,
                  int n, mpfr_prec_t prec) {
    Real thresh = r_ldexp(r_from_si(1, prec), -(long)prec + 8);
    for (int sweep = 0; sweep < 60; sweep++) {
        Real off = r_from_si(0, prec);
        for (int p = 0; p < n; p++)
            for (int qq = p + 1; qq < n; qq++) off = r_add(off, r_abs(a[p][qq]), prec);
        if (r_less(off, thresh)) break;
        for (int p = 0; p < n; p++) {
            for (int qi = p + 1; qi < n; qi++) {
                if (a[p][qi].is_zero()) continue;
                // rotation angle from tan(2t) = 2 a_pq / (a_qq - a_pp)
                Real apq = a[p][qi];
                Real diff = r_sub(a[qi][qi], a[p][p], prec);
                Real t(prec);
                if (diff.is_zero()) {
                    t = r_from_si(apq.sgn() >= 0 ? 1 : -1, prec);
                } else {
                    Real theta = r_div(diff, r_ldexp(apq, 1), prec);
                    Real at = r_abs(theta);
                    Real root = r_sqrt(r_add(r_mul(theta, theta, prec), r_from_si(1, prec), prec), prec);
                    t = r_div(r_from_si(1, prec), r_add(at, root, prec), prec);
                    if (theta.sgn() < 0) t = r_neg(t);
                }
                Real c = r_div(r_from_si(1, prec),
                               r_sqrt(r_add(r_mul(t, t, prec), r_from_si(1, prec), prec), prec), prec);
                Real s = r_mul(t, c, prec);
                for (int k = 0; k < n; k++) {
                    Real akp = a[k][p], akq = a[k][qi];
                    a[k][p] = r_sub(r_mul(c, akp, prec), r_mul(s, akq, prec), prec);
                    a[k][qi] = r_add(r_mul(s, akp, prec), r_mul(c, akq, prec), prec);
                }
                for (int k = 0; k < n; k++) {
                    Real apk = a[p][k], aqk = a[qi][k];
                    a[p][k] = r_sub(r_mul(c, apk, prec), r_mul(s, aqk, prec), prec);
                    a[qi][k] = r_add(r_mul(s, apk, prec), r_mul(c, aqk, prec), prec);
                }
                for (int k = 0; k < n; k++) {
                    Real qkp = q[k][p], qkq = q[k][qi];
                    q[k][p] = r_sub(r_mul(c, qkp, prec), r_mul(s, qkq, prec), prec);
                    q[k][qi] = r_add(r_mul(s, qkp, prec), r_mul(c, qkq, prec), prec);
                }
            }
        }
    }
}

} // namespace

Real sym_lambda_min_lower(const std::vector<std::vector<RealErr>>& A, mpfr_prec_t prec) {
    const int n = (int)A.size();
    if (n == 0) throw ParameterError("empty matrix");
    if (n == 1) {
        Real lb(Mag::kPrec);
        mpfr_sub(lb.get(), A[0][0].v.get(), A[0][0].err.real().get(), MPFR_RNDD);
        return lb;
    }
    std::vector<std::vector<Real>> a(n, std::vector<Real>(n, Real(prec)));
    std::vector<std::vector<Real>> q(n, std::vector<Real>(n, Real(prec)));
    for (int i = 0; i < n; i++) {
        for (int j = 0; j < n; j++) a[i][j] = A[i][j].v;
        q[i][i] = r_from_si(1, prec);
    }
    jacobi_plain(a, q, n, prec);

    // B = Q^T A Q and G = Q^T Q with certified propagation
    std::vector<std::vector<RealErr>> Qc(n, std::vector<RealErr>(n, RealErr(prec)));
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) {
            Qc[i][j].v = q[i][j];
            Qc[i][j].err = mag_ldexp(mag_abs_upper(q[i][j]), -(long)prec + 1);
        }
    auto mul3 = [&](bool with_a) {
        std::vector<std::vector<RealErr>> t(n, std::vector<RealErr>(n, RealErr(prec)));
        std::vector<std::vector<RealErr>> out(n, std::vector<RealErr>(n, RealErr(prec)));
        if (with_a) {
            for (int i = 0; i < n; i++)
                for (int j = 0; j < n; j++) {
                    RealErr acc(prec);
                    for (int k = 0; k < n; k++) acc = re_add(acc, re_mul(A[i][k], Qc[k][j], prec), prec);
                    t[i][j] = acc;
                }
        } else {
            t = Qc;
        }
        for (int i = 0; i < n; i++)
            for (int j = 0; j < n; j++) {
                RealErr acc(prec);
                for (int k = 0; k < n; k++) acc = re_add(acc, re_mul(Qc[k][i], t[k][j], prec), prec);
                out[i][j] = acc;
            }
        return out;
    };
    auto B = mul3(true);
    auto G = mul3(false);

    // Gershgorin: lambda_min(B) and lambda_max(G) bounds with entry radii
    Real b_low(Mag::kPrec);
    mpfr_set_inf(b_low.get(), 1);
    Real g_up(Mag::kPrec);
    mpfr_set_inf(g_up.get(), -1);
    for (int i = 0; i < n; i++) {
        Mag rowb = B[i][i].err, rowg = G[i][i].err;
        for (int j = 0; j < n; j++) {
            if (j == i) continue;
            rowb = mag_add(rowb, mag_add(mag_abs_upper(B[i][j].v), B[i][j].err));
            rowg = mag_add(rowg, mag_add(mag_abs_upper(G[i][j].v), G[i][j].err));
        }
        Real lo(Mag::kPrec), hi(Mag::kPrec);
        mpfr_sub(lo.get(), B[i][i].v.get(), rowb.real().get(), MPFR_RNDD);
        mpfr_add(hi.get(), G[i][i].v.get(), rowg.real().get(), MPFR_RNDU);
        if (r_less(lo, b_low)) b_low = lo;
        if (r_less(g_up, hi)) g_up = hi;
    }
    if (b_low.sgn() <= 0) return b_low;
    if (g_up.sgn() <= 0) throw ConsistencyError("Q^T Q bound non-positive");
    // generalized Rayleigh: lambda_min(A) >= lambda_min(B)/lambda_max(G)
    Real out(Mag::kPrec);
    mpfr_div(out.get(), b_low.get(), g_up.get(), MPFR_RNDD);
    return out;
}

} // namespace cyclotheta
