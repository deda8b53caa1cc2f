#include "cyclotheta/theta.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>

namespace cyclotheta {

nlohmann::json ThetaValue::to_json() const {
    nlohmann::json j;
    j["re"] = r_dec(v.re);
    j["im"] = r_dec(v.im);
    j["err_exp"] = v.err.is_zero() ? (long)-999999 : v.err.exp2_of();
    j["prec"] = (long)prec;
    return j;
}

namespace {

// lower bound of pi * lambda at Mag precision
Real pi_lambda_lower(const Real& lambda_low) {
    Real pi_low(Mag::kPrec);
    mpfr_const_pi(pi_low.get(), MPFR_RNDD);
    Real out(Mag::kPrec);
    mpfr_mul(out.get(), pi_low.get(), lambda_low.get(), MPFR_RNDD);
    return out;
}

// Sum_{k>=R} (2k+3)^n exp(-pi lambda k^2), certified upper bound.
Mag tail_bound(const Real& pi_lambda_low, int n, long R) {
    Mag acc = Mag::zero();
    Mag huge = Mag::pow2(100000);
    for (long k = R; k < R + 4000; k++) {
        mpz_class cnt;
        mpz_ui_pow_ui(cnt.get_mpz_t(), (unsigned long)(2 * k + 3), (unsigned long)n);
        Real expo(Mag::kPrec);
        mpfr_mul_si(expo.get(), pi_lambda_low.get(), k, MPFR_RNDD);
        mpfr_mul_si(expo.get(), expo.get(), -k, MPFR_RNDU);
        Mag term = mag_mul(Mag::from_mpz(cnt), mag_exp_of_real(expo));
        acc = mag_add(acc, term);
        // geometric remainder once the shell ratio drops below 1/2:
        // ratio <= ((2k+5)/(2k+3))^n * exp(-pi lambda (2k+1)) <= 2^n * exp(...)
        Real rexp(Mag::kPrec);
        mpfr_mul_si(rexp.get(), pi_lambda_low.get(), -(2 * k + 1), MPFR_RNDU);
        Mag ratio = mag_ldexp(mag_exp_of_real(rexp), n);
        if (mag_less(ratio, Mag::from_d(0.5)))
            return mag_add(acc, term); // remainder <= term * ratio/(1-ratio) <= term
    }
    return huge;
}

struct ThetaPlan {
    mpz_class d;                  // common denominator of (r, s)
    std::vector<mpz_class> m;     // d * r
    std::vector<mpz_class> s_int; // d * s
    std::vector<long> lo, hi;     // box bounds for x
    long R;
    Mag tail;
};

ThetaPlan make_plan(const CMPoint& z, const Characteristic& c, mpfr_prec_t prec) {
    const int n = (int)c.dim();
    if ((long)n != z.n) throw ParameterError("characteristic dimension mismatch");
    if (z.lambda_min_lower.sgn() <= 0)
        throw ParameterError("Siegel point lacks a positive lambda_min certificate");
    ThetaPlan plan;
    plan.d = 1;
    for (auto& q : c.r) mpz_lcm(plan.d.get_mpz_t(), plan.d.get_mpz_t(), q.get_den().get_mpz_t());
    for (auto& q : c.s) mpz_lcm(plan.d.get_mpz_t(), plan.d.get_mpz_t(), q.get_den().get_mpz_t());
    for (int i = 0; i < n; i++) {
        plan.m.push_back(c.r[(size_t)i].get_num() * (plan.d / c.r[(size_t)i].get_den()));
        plan.s_int.push_back(c.s[(size_t)i].get_num() * (plan.d / c.s[(size_t)i].get_den()));
    }

    Real pl = pi_lambda_lower(z.lambda_min_lower);
    double pld = pl.to_double();
    long target_exp = -(long)prec - 20;
    long R = std::max<long>(2, (long)std::ceil(std::sqrt(((double)prec + 30.0) * 0.6931 /
                                                         std::max(pld, 1e-12))));
    Mag target = Mag::pow2(target_exp);
    Mag tail = tail_bound(pl, n, R);
    while (mag_less(target, tail)) {
        R += 1 + R / 8;
        tail = tail_bound(pl, n, R);
        if (R > 1000000) throw PrecisionExhausted("theta truncation radius runaway");
    }
    plan.R = R;
    plan.tail = tail;
    for (int i = 0; i < n; i++) {
        // x_i in [ceil(-R - r_i), floor(R - r_i)]
        mpq_class ri(plan.m[(size_t)i], plan.d);
        ri.canonicalize();
        mpq_class a = -mpq_class(R) - ri, b = mpq_class(R) - ri;
        mpz_class lo, hi;
        mpz_cdiv_q(lo.get_mpz_t(), a.get_num().get_mpz_t(), a.get_den().get_mpz_t());
        mpz_fdiv_q(hi.get_mpz_t(), b.get_num().get_mpz_t(), b.get_den().get_mpz_t());
        plan.lo.push_back(mpz_get_si(lo.get_mpz_t()));
        plan.hi.push_back(mpz_get_si(hi.get_mpz_t()));
    }
    return plan;
}

// one term: e( ((1/2) u^T z u + u^T s_int) / d^2 ) with u = d*x + m
CComplex theta_term(const CMPoint& z, const ThetaPlan& plan, const std::vector<long>& x,
                    const Real& two_pi, const mpz_class& d2, mpfr_prec_t wp) {
    const int n = (int)x.size();
    std::vector<long> u((size_t)n);
    for (int i = 0; i < n; i++) {
        mpz_class ui = plan.d * x[(size_t)i] + plan.m[(size_t)i];
        u[(size_t)i] = mpz_get_si(ui.get_mpz_t());
    }
    CComplex diag = cc_zero(wp);
    CComplex off = cc_zero(wp);
    for (int i = 0; i < n; i++) {
        if (u[(size_t)i] != 0)
            diag = cc_add(diag, cc_mul_si(z.z.at(i, i), u[(size_t)i] * u[(size_t)i], wp), wp);
        for (int j = i + 1; j < n; j++) {
            long f = u[(size_t)i] * u[(size_t)j];
            if (f != 0) off = cc_add(off, cc_mul_si(z.z.at(i, j), f, wp), wp);
        }
    }
    // halving is exact in binary
    diag.re = r_ldexp(diag.re, -1);
    diag.im = r_ldexp(diag.im, -1);
    diag.err = mag_ldexp(diag.err, -1);
    CComplex w = cc_add(diag, off, wp);
    mpz_class lin = 0;
    for (int i = 0; i < n; i++) lin += u[(size_t)i] * plan.s_int[(size_t)i];
    CComplex linc(wp);
    linc.re = r_from_mpz(lin, wp);
    linc.err = mag_ldexp(mag_abs_upper(linc.re), -(long)wp + 1);
    w = cc_add(w, linc, wp);
    if (d2 != 1) w = cc_div_mpz(w, d2, wp);
    return cc_e(w, two_pi, wp);
}

ThetaValue finish(const CComplex& total, const ThetaPlan& plan, mpfr_prec_t prec) {
    CComplex out = cc_round_to(total, prec);
    out.err = mag_add(out.err, plan.tail);
    // success contract: the certified radius is far below the requested scale
    Mag gate = mag_mul(Mag::pow2(-(long)prec / 2), mag_max(Mag::pow2(0), cc_mag_upper(out)));
    if (mag_less(gate, out.err))
        throw PrecisionExhausted("theta error bound exceeds success threshold");
    ThetaValue tv;
    tv.v = out;
    tv.prec = prec;
    return tv;
}

} // namespace

ThetaValue theta_constant(const CMPoint& z, const Characteristic& c, mpfr_prec_t prec) {
    ThetaPlan plan = make_plan(z, c, prec);
    const int n = (int)c.dim();
    mpfr_prec_t wp = prec + 64;
    Real two_pi = r_two_pi(wp);
    mpz_class d2 = plan.d * plan.d;

    const long lo0 = plan.lo[0], hi0 = plan.hi[0];
    const long slices = hi0 - lo0 + 1;
    std::vector<CComplex> partial((size_t)std::max<long>(slices, 0), cc_zero(wp));

#pragma omp parallel for schedule(dynamic)
    for (long si = 0; si < slices; si++) {
        std::vector<long> x((size_t)n);
        x[0] = lo0 + si;
        CComplex acc = cc_zero(wp);
        // odometer over the remaining coordinates, lexicographic
        for (int i = 1; i < n; i++) x[(size_t)i] = plan.lo[(size_t)i];
        while (true) {
            acc = cc_add(acc, theta_term(z, plan, x, two_pi, d2, wp), wp);
            int k = n - 1;
            while (k >= 1) {
                if (x[(size_t)k] < plan.hi[(size_t)k]) {
                    x[(size_t)k]++;
                    for (int t = k + 1; t < n; t++) x[(size_t)t] = plan.lo[(size_t)t];
                    break;
                }
                k--;
            }
            if (k < 1) break;
        }
        partial[(size_t)si] = acc;
    }
    CComplex total = cc_zero(wp);
    for (long si = 0; si < slices; si++) total = cc_add(total, partial[(size_t)si], wp);
    return finish(total, plan, prec);
}

ThetaValue theta_constant_reference(const CMPoint& z, const Characteristic& c, mpfr_prec_t prec) {
    ThetaPlan plan = make_plan(z, c, prec);
    const int n = (int)c.dim();
    mpfr_prec_t wp = prec + 64;
    Real two_pi = r_two_pi(wp);
    mpz_class d2 = plan.d * plan.d;

    std::vector<long> x((size_t)n);
    for (int i = 0; i < n; i++) x[(size_t)i] = plan.lo[(size_t)i];
    CComplex total = cc_zero(wp);
    while (true) {
        total = cc_add(total, theta_term(z, plan, x, two_pi, d2, wp), wp);
        int k = n - 1;
        while (k >= 0) {
            if (x[(size_t)k] < plan.hi[(size_t)k]) {
                x[(size_t)k]++;
                for (int t = k + 1; t < n; t++) x[(size_t)t] = plan.lo[(size_t)t];
                break;
            }
            k--;
        }
        if (k < 0) break;
    }
    return finish(total, plan, prec);
}

ThetaValue phi_quotient(const CMPoint& z, const Characteristic& c, mpfr_prec_t prec) {
    ThetaValue num = theta_constant(z, c, prec);
    ThetaValue den = theta_constant(z, Characteristic::zero(c.dim()), prec);
    ThetaValue out;
    out.prec = prec;
    try {
        out.v = cc_div(num.v, den.v, prec);
    } catch (const PrecisionExhausted&) {
        throw PoleOrPrecision("theta denominator not separated from zero; z may be a zero of "
                              "Theta(0,z;0,0) or precision is insufficient");
    }
    return out;
}

bool vanishes_identically(const Characteristic& c) {
    mpz_class t = 0;
    for (size_t i = 0; i < c.dim(); i++) {
        mpq_class r2 = 2 * c.r[i], s2 = 2 * c.s[i];
        if (r2.get_den() != 1 || s2.get_den() != 1) return false;
        t += r2.get_num() * s2.get_num();
    }
    return mpz_odd_p(t.get_mpz_t()) != 0;
}

mpq_class quasiperiod_multiplier(const Characteristic& c, const std::vector<long>& a,
                                 const std::vector<long>& b) {
    if (a.size() != c.dim() || b.size() != c.dim()) throw ParameterError("shift length mismatch");
    mpq_class t = 0;
    for (size_t i = 0; i < c.dim(); i++) t += c.r[i] * b[i];
    // reduce mod 1
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), t.get_num().get_mpz_t(), t.get_den().get_mpz_t());
    t -= mpq_class(fl);
    t.canonicalize();
    return t;
}

bool is_symplectic(const BigIntMatrix& g) {
    if (g.rows() != g.cols() || g.rows() % 2 != 0) return false;
    BigIntMatrix J = symplectic_J(g.rows() / 2);
    return g.transpose() * J * g == J;
}

bool theta_transform_admissible(const BigIntMatrix& g) {
    if (!is_symplectic(g)) return false;
    const int n = g.rows() / 2;
    for (int i = 0; i < n; i++) {
        mpz_class ac = 0, bd = 0;
        for (int k = 0; k < n; k++) {
            ac += g.at(k, i) * g.at(n + k, i);         // (A^T C)_ii
            bd += g.at(k, n + i) * g.at(n + k, n + i); // (B^T D)_ii
        }
        if (mpz_odd_p(ac.get_mpz_t()) || mpz_odd_p(bd.get_mpz_t())) return false;
    }
    return true;
}

std::pair<Characteristic, mpq_class> transform_pair(const BigIntMatrix& g,
                                                    const Characteristic& c) {
    const int n = (int)c.dim();
    if (g.rows() != 2 * n || g.cols() != 2 * n) throw ParameterError("gamma dimension mismatch");
    if (!theta_transform_admissible(g))
        throw ParameterError("gamma not symplectic with even diagonal condition");
    Characteristic out = Characteristic::zero((size_t)n);
    // (r'; s') = gamma^T (r; s)
    for (int i = 0; i < 2 * n; i++) {
        mpq_class acc = 0;
        for (int j = 0; j < 2 * n; j++) {
            const mpq_class& v = (j < n) ? c.r[(size_t)j] : c.s[(size_t)(j - n)];
            acc += mpq_class(g.at(j, i)) * v;
        }
        if (i < n)
            out.r[(size_t)i] = acc;
        else
            out.s[(size_t)(i - n)] = acc;
    }
    mpq_class e = 0;
    for (int i = 0; i < n; i++)
        e += c.r[(size_t)i] * c.s[(size_t)i] - out.r[(size_t)i] * out.s[(size_t)i];
    e /= 2;
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), e.get_num().get_mpz_t(), e.get_den().get_mpz_t());
    e -= mpq_class(fl);
    e.canonicalize();
    return {out, e};
}

CMPoint apply_symplectic(const BigIntMatrix& g, const CMPoint& z, mpfr_prec_t prec) {
    const int n = (int)z.n;
    if (g.rows() != 2 * n) throw ParameterError("gamma dimension mismatch");
    mpfr_prec_t wp = prec + 32;
    auto block_apply = [&](int row0) {
        CMatrix out(n, n, wp);
        for (int i = 0; i < n; i++)
            for (int j = 0; j < n; j++) {
                CComplex acc = cc_zero(wp);
                for (int k = 0; k < n; k++) {
                    long m = mpz_get_si(g.at(row0 + i, k).get_mpz_t());
                    if (m != 0) acc = cc_add(acc, cc_mul_si(z.z.at(k, j), m, wp), wp);
                }
                long b = mpz_get_si(g.at(row0 + i, n + j).get_mpz_t());
                if (b != 0) acc = cc_add(acc, cc_from_si(b, 0, wp), wp);
                out.at(i, j) = acc;
            }
        return out;
    };
    CMatrix top = block_apply(0);    // A z + B
    CMatrix bot = block_apply(n);    // C z + D
    // (Az+B)(Cz+D)^-1 = solve((Cz+D)^T, (Az+B)^T)^T
    auto tr = [&](const CMatrix& m) {
        CMatrix t(m.cols(), m.rows(), wp);
        for (int i = 0; i < m.rows(); i++)
            for (int j = 0; j < m.cols(); j++) t.at(j, i) = m.at(i, j);
        return t;
    };
    CMatrix sol = cm_solve(tr(bot), tr(top), wp);
    CMatrix w = tr(sol);
    CMatrix wr(n, n, prec);
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) wr.at(i, j) = cc_round_to(w.at(i, j), prec);
    return certify_siegel_point(wr, prec);
}

} // namespace cyclotheta
