#include "cyclotheta/cyclotomic.hpp"

#include <algorithm>
#include <numeric>

#include "cyclotheta/factor.hpp"

namespace cyclotheta {

namespace {

bool is_small_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; d++)
        if (p % d == 0) return false;
    return true;
}

long mod_pos(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

long mod_inverse(long a, long m) {
    long t = 0, newt = 1, r = m, newr = mod_pos(a, m);
    while (newr != 0) {
        long q = r / newr;
        std::swap(t -= q * newt, newt);
        std::swap(r -= q * newr, newr);
    }
    if (r != 1) throw ParameterError("not invertible");
    return mod_pos(t, m);
}

} // namespace

CycParams::CycParams(long ell_) : ell(ell_), n((ell_ - 1) / 2) {
    if (ell < 3 || ell % 2 == 0 || !is_small_prime(ell))
        throw ParameterError("ell must be an odd prime >= 3");
}

CycElt::CycElt(CycParams params, std::vector<mpz_class> coeffs, mpz_class denom)
    : params_(params), coeffs_(std::move(coeffs)), denom_(std::move(denom)) {
    if ((long)coeffs_.size() != params_.ell - 1)
        throw ParameterError("coefficient vector must have length ell-1");
    if (denom_ == 0) throw ParameterError("zero denominator");
    normalize();
}

void CycElt::normalize() {
    if (denom_ < 0) {
        denom_ = -denom_;
        for (auto& c : coeffs_) c = -c;
    }
    mpz_class g = denom_;
    for (auto& c : coeffs_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    if (g > 1) {
        mpz_divexact(denom_.get_mpz_t(), denom_.get_mpz_t(), g.get_mpz_t());
        for (auto& c : coeffs_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    }
    bool zero = std::all_of(coeffs_.begin(), coeffs_.end(),
                            [](const mpz_class& c) { return c == 0; });
    if (zero) denom_ = 1;
}

CycElt CycElt::zero(CycParams p) { return CycElt(p, std::vector<mpz_class>(p.ell - 1, 0)); }

CycElt CycElt::one(CycParams p) {
    std::vector<mpz_class> c(p.ell - 1, -1);
    return CycElt(p, std::move(c));
}

CycElt CycElt::from_integer(CycParams p, const mpz_class& v) {
    std::vector<mpz_class> c(p.ell - 1, -v);
    return CycElt(p, std::move(c));
}

CycElt CycElt::from_rational(CycParams p, const mpq_class& v) {
    std::vector<mpz_class> c(p.ell - 1, -v.get_num());
    return CycElt(p, std::move(c), v.get_den());
}

CycElt CycElt::zeta_pow(CycParams p, long k) {
    long j = mod_pos(k, p.ell);
    if (j == 0) return one(p);
    std::vector<mpz_class> c(p.ell - 1, 0);
    c[j - 1] = 1;
    return CycElt(p, std::move(c));
}

bool CycElt::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const mpz_class& c) { return c == 0; });
}

bool CycElt::is_rational() const {
    for (long j = 2; j < params_.ell; j++)
        if (coeffs_[j - 1] != coeffs_[0]) return false;
    return true;
}

mpq_class CycElt::to_rational() const {
    if (!is_rational()) throw ConsistencyError("element is not rational");
    mpq_class q(-coeffs_[0], denom_);
    q.canonicalize();
    return q;
}

CycElt CycElt::conj() const { return galois_apply(*this, params_.ell - 1); }

bool CycElt::operator==(const CycElt& o) const {
    return params_ == o.params_ && denom_ == o.denom_ && coeffs_ == o.coeffs_;
}

CycElt CycElt::operator+(const CycElt& o) const {
    if (!(params_ == o.params_)) throw ParameterError("mixed cyclotomic parameters");
    std::vector<mpz_class> c(params_.ell - 1);
    for (long j = 0; j < params_.ell - 1; j++)
        c[j] = coeffs_[j] * o.denom_ + o.coeffs_[j] * denom_;
    return CycElt(params_, std::move(c), denom_ * o.denom_);
}

CycElt CycElt::operator-(const CycElt& o) const { return *this + (-o); }

CycElt CycElt::operator-() const {
    std::vector<mpz_class> c(coeffs_);
    for (auto& x : c) x = -x;
    return CycElt(params_, std::move(c), denom_);
}

CycElt CycElt::operator*(const CycElt& o) const { return cyc_mul(*this, o); }

CycElt CycElt::pow(const mpz_class& e) const {
    if (e < 0) throw ParameterError("negative exponent");
    CycElt acc = one(params_);
    CycElt base = *this;
    mpz_class k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) acc = acc * base;
        k >>= 1;
        if (k > 0) base = base * base;
    }
    return acc;
}

std::vector<mpq_class> CycElt::to_power_basis() const {
    // zeta^(ell-1) = -1 - zeta - ... - zeta^(ell-2)
    long ell = params_.ell;
    std::vector<mpq_class> out(ell - 1, 0);
    mpq_class top(coeffs_[ell - 2], denom_);
    out[0] = -top;
    for (long j = 1; j <= ell - 2; j++) out[j] = mpq_class(coeffs_[j - 1], denom_) - top;
    for (auto& q : out) q.canonicalize();
    return out;
}

CycElt CycElt::from_power_basis(CycParams p, const std::vector<mpq_class>& c) {
    if ((long)c.size() != p.ell - 1) throw ParameterError("bad power-basis length");
    mpz_class den = 1;
    for (auto& q : c) den = den / gcd(den, mpq_class(q).get_den()) * mpq_class(q).get_den();
    std::vector<mpz_class> v(p.ell - 1, 0);
    // c0 * 1 contributes -c0 to every basis coefficient
    mpz_class c0 = c[0].get_num() * (den / c[0].get_den());
    for (long j = 1; j <= p.ell - 1; j++) v[j - 1] = -c0;
    for (long j = 1; j <= p.ell - 2; j++) {
        mpz_class cj = c[j].get_num() * (den / c[j].get_den());
        v[j - 1] += cj;
    }
    return CycElt(p, std::move(v), den);
}

nlohmann::json CycElt::to_json() const {
    nlohmann::json j;
    j["l"] = params_.ell;
    nlohmann::json arr = nlohmann::json::array();
    for (auto& c : coeffs_) arr.push_back(c.get_str());
    j["coeffs"] = arr;
    j["denom"] = denom_.get_str();
    return j;
}

CycElt CycElt::from_json(const nlohmann::json& j) {
    CycParams p(j.at("l").get<long>());
    std::vector<mpz_class> c;
    for (auto& x : j.at("coeffs")) {
        if (x.is_string())
            c.emplace_back(x.get<std::string>());
        else
            c.emplace_back(x.get<long>());
    }
    mpz_class d = 1;
    if (j.contains("denom")) {
        auto& x = j.at("denom");
        d = x.is_string() ? mpz_class(x.get<std::string>()) : mpz_class(x.get<long>());
    }
    return CycElt(p, std::move(c), d);
}

CycElt cyc_mul(const CycElt& a, const CycElt& b) {
    if (!(a.params() == b.params())) throw ParameterError("mixed cyclotomic parameters");
    long ell = a.ell();
    // accumulate on exponents 0..ell-1, then fold the constant term
    std::vector<mpz_class> acc(ell, 0);
    for (long i = 1; i <= ell - 1; i++) {
        if (a.coeff(i) == 0) continue;
        for (long j = 1; j <= ell - 1; j++) {
            if (b.coeff(j) == 0) continue;
            acc[(i + j) % ell] += a.coeff(i) * b.coeff(j);
        }
    }
    std::vector<mpz_class> c(ell - 1);
    for (long j = 1; j <= ell - 1; j++) c[j - 1] = acc[j] - acc[0];
    return CycElt(a.params(), std::move(c), a.denom() * b.denom());
}

CycElt galois_apply(const CycElt& a, long i) {
    long ell = a.ell();
    long im = ((i % ell) + ell) % ell;
    if (im == 0) throw ParameterError("Galois index divisible by ell");
    std::vector<mpz_class> c(ell - 1);
    for (long j = 1; j <= ell - 1; j++) c[(im * j) % ell - 1] = a.coeff(j);
    return CycElt(a.params(), std::move(c), a.denom());
}

mpq_class trace(const CycElt& a) {
    CycElt acc = CycElt::zero(a.params());
    for (long i = 1; i <= a.ell() - 1; i++) acc = acc + galois_apply(a, i);
    return acc.to_rational();
}

mpq_class field_norm(const CycElt& a) {
    CycElt acc = CycElt::one(a.params());
    for (long i = 1; i <= a.ell() - 1; i++) acc = acc * galois_apply(a, i);
    return acc.to_rational();
}

CycElt phi_plus(const CycElt& a) {
    long ell = a.ell();
    CycElt acc = CycElt::zero(a.params());
    for (long i = 1; i <= a.params().n; i++) acc = acc + galois_apply(a, mod_inverse(i, ell));
    return acc;
}

CycElt phi_star(const CycElt& a) {
    long ell = a.ell();
    CycElt acc = CycElt::one(a.params());
    for (long i = 1; i <= a.params().n; i++) acc = acc * galois_apply(a, mod_inverse(i, ell));
    return acc;
}

CycElt cyclotomic_unit(CycParams p, long a) {
    if (!(a > 1 && 2 * a < p.ell)) throw ParameterError("need 1 < a < ell/2");
    if (std::gcd(a, p.ell) != 1) throw ParameterError("gcd(a, ell) != 1");
    // zeta^((1-a)/2) = (zeta_2ell)^(1-a) = (-1)^(1-a) * zeta^((1-a)(ell+1)/2)
    long e = mod_pos((1 - a) * ((p.ell + 1) / 2), p.ell);
    bool negate = (1 - a) % 2 != 0;
    // (1 - zeta^a)/(1 - zeta) = 1 + zeta + ... + zeta^(a-1)
    CycElt geom = CycElt::one(p);
    for (long j = 1; j < a; j++) geom = geom + CycElt::zeta_pow(p, j);
    CycElt out = CycElt::zeta_pow(p, e) * geom;
    if (negate) out = -out;
    if (galois_apply(out, p.ell - 1) != out)
        throw ConsistencyError("cyclotomic unit not fixed by conjugation");
    return out;
}

// ---- residues ----------------------------------------------------------

ResidueElt::ResidueElt(CycParams params, mpz_class modulus)
    : params_(params), m_(std::move(modulus)), c_(params.ell - 1, 0) {
    if (m_ < 2) throw ParameterError("modulus must be >= 2");
}

ResidueElt ResidueElt::one(CycParams p, const mpz_class& m) {
    ResidueElt r(p, m);
    for (auto& x : r.c_) x = m - 1; // 1 = -(sum of zeta^j)
    return r;
}

bool ResidueElt::operator==(const ResidueElt& o) const {
    return params_ == o.params_ && m_ == o.m_ && c_ == o.c_;
}

bool ResidueElt::is_one() const { return *this == one(params_, m_); }

ResidueElt ResidueElt::operator*(const ResidueElt& o) const {
    if (!(params_ == o.params_) || m_ != o.m_) throw ParameterError("mixed residue rings");
    long ell = params_.ell;
    std::vector<mpz_class> acc(ell, 0);
    for (long i = 1; i <= ell - 1; i++) {
        if (c_[i - 1] == 0) continue;
        for (long j = 1; j <= ell - 1; j++) {
            if (o.c_[j - 1] == 0) continue;
            acc[(i + j) % ell] += c_[i - 1] * o.c_[j - 1];
        }
    }
    ResidueElt r(params_, m_);
    for (long j = 1; j <= ell - 1; j++) {
        mpz_class v = acc[j] - acc[0];
        mpz_mod(v.get_mpz_t(), v.get_mpz_t(), m_.get_mpz_t());
        r.c_[j - 1] = v;
    }
    return r;
}

ResidueElt ResidueElt::pow(const mpz_class& e) const {
    if (e < 0) throw ParameterError("negative exponent");
    ResidueElt acc = one(params_, m_);
    ResidueElt base = *this;
    mpz_class k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) acc = acc * base;
        k >>= 1;
        if (k > 0) base = base * base;
    }
    return acc;
}

ResidueElt residue_reduce(const CycElt& a, const mpz_class& m) {
    mpz_class dinv;
    if (mpz_invert(dinv.get_mpz_t(), a.denom().get_mpz_t(), m.get_mpz_t()) == 0)
        throw NonInvertibleError("denominator not invertible mod m");
    ResidueElt r(a.params(), m);
    for (long j = 1; j <= a.ell() - 1; j++) {
        mpz_class v = a.coeff(j) * dinv;
        mpz_mod(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
        r.coeff(j) = v;
    }
    return r;
}

namespace {

long order_mod(long q, long ell) {
    long r = mod_pos(q, ell), acc = r, f = 1;
    while (acc != 1) {
        acc = (acc * r) % ell;
        f++;
        if (f > ell) throw ConsistencyError("order_mod runaway");
    }
    return f;
}

} // namespace

mpz_class multiplicative_order(const ResidueElt& r) {
    long ell = r.params().ell;
    Factorization mf = factorize(r.modulus());
    if (!mf.complete()) throw ParameterError("could not factor modulus");
    // exponent of (O_k/q^e)^x: residue fields have exponent q^f - 1 with
    // f = ord(q mod ell); the one-units contribute q^(e-1) (extra factor 2
    // kept for q = 2 to stay on the safe side)
    mpz_class E = 1;
    for (auto& [q, e] : mf.primes) {
        if (q == ell)
            throw UnsupportedParameters("modulus divisible by ell (ramified) unsupported");
        long f = order_mod(mpz_get_si(q.get_mpz_t()), ell);
        mpz_class local;
        mpz_pow_ui(local.get_mpz_t(), q.get_mpz_t(), f);
        local -= 1;
        if (e > 1) {
            mpz_class lift;
            mpz_pow_ui(lift.get_mpz_t(), q.get_mpz_t(), (q == 2) ? e : e - 1);
            local *= lift;
        }
        mpz_lcm(E.get_mpz_t(), E.get_mpz_t(), local.get_mpz_t());
    }
    if (!r.pow(E).is_one())
        throw NonInvertibleError("element is not a unit in the residue ring");
    Factorization ef = factorize(E);
    if (!ef.complete()) throw ParameterError("could not factor group exponent");
    mpz_class ord = E;
    for (auto& [q, e] : ef.primes) {
        while (mpz_divisible_p(ord.get_mpz_t(), q.get_mpz_t())) {
            mpz_class cand = ord / q;
            if (r.pow(cand).is_one())
                ord = cand;
            else
                break;
        }
    }
    return ord;
}

} // namespace cyclotheta
