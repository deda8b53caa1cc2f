#include "cyclotheta/rayclass.hpp"

#include <algorithm>

#include "cyclotheta/factor.hpp"

namespace cyclotheta {

namespace {

bool is_small_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; d++)
        if (p % d == 0) return false;
    return true;
}

} // namespace

RayParams::RayParams(long ell_, long p_, long mu_) : ell(ell_), p(p_), mu(mu_) {
    CycParams check(ell); // validates ell
    if (p < 3 || p % 2 == 0 || !is_small_prime(p))
        throw ParameterError("p must be an odd prime");
    if (p == ell) throw ParameterError("p = ell unsupported");
    if (mu < 1) throw ParameterError("mu must be >= 1");
}

HPlusTable HPlusTable::defaults() { return HPlusTable{}; }

void HPlusTable::load_json(const nlohmann::json& j) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        long ell = std::stol(it.key());
        if (it.value().is_string())
            overrides_[ell] = mpz_class(it.value().get<std::string>());
        else
            overrides_[ell] = mpz_class(it.value().get<long>());
    }
}

mpz_class HPlusTable::lookup(long ell) const {
    auto it = overrides_.find(ell);
    if (it != overrides_.end()) return it->second;
    if (ell <= 67) return 1;
    throw UnsupportedParameters("h_ell^+ unknown for ell > 67; supply an override table");
}

CycElt alpha_generator(const RayParams& params, long i) {
    const long n = (params.ell - 1) / 2;
    if (i < 1 || i > 2 * n) throw ParameterError("generator index out of range");
    CycParams cp(params.ell);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), (unsigned long)params.p, (unsigned long)params.mu);
    scale *= 2;
    CycElt body = CycElt::zero(cp);
    if (i <= n + 1) {
        body = CycElt::zeta_pow(cp, i);
    } else {
        body = CycElt::zeta_pow(cp, n) + CycElt::zeta_pow(cp, n + 1) -
               CycElt::zeta_pow(cp, i) - CycElt::zeta_pow(cp, params.ell - i);
    }
    return CycElt::one(cp) + CycElt::from_integer(cp, scale) * body;
}

BigIntMatrix matrix_B(const RayParams& params) {
    const long ell = params.ell;
    const long n = (ell - 1) / 2;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), (unsigned long)params.p, (unsigned long)params.mu);
    scale *= 2;
    BigIntMatrix B((int)(2 * n), (int)(2 * n));
    for (long i = 1; i <= 2 * n; i++) {
        // recover the zeta^j coefficients of (alpha - 1)/(2 p^mu)
        CycElt alpha = alpha_generator(params, i);
        CycElt diff = alpha - CycElt::one(CycParams(ell));
        if (diff.denom() != 1) throw ConsistencyError("alpha - 1 not integral");
        for (long j = 1; j <= 2 * n; j++) {
            mpz_class c = diff.coeff(j);
            if (c % scale != 0) throw ConsistencyError("alpha - 1 not divisible by 2p^mu");
            B.at((int)(i - 1), (int)(j - 1)) = c / scale;
        }
    }
    return B;
}

BigIntMatrix matrix_N(long ell) {
    CycParams cp(ell);
    const long n = cp.n;
    BigIntMatrix N((int)n, (int)n);
    for (long i = 1; i <= n; i++)
        for (long j = 1; j <= n; j++) N.at((int)(i - 1), (int)(j - 1)) = (i * j) % ell <= n ? 1 : 0;
    return N;
}

FpMatrix matrix_M(long ell, long p) {
    CycParams cp(ell);
    if (p < 3 || !is_small_prime(p)) throw ParameterError("p must be an odd prime");
    const long n = cp.n;
    FpMatrix M(p, (int)(n + 1), (int)(2 * n));
    for (long i = 1; i <= n + 1; i++) {
        CycElt v = phi_plus(CycElt::zeta_pow(cp, i));
        if (v.denom() != 1) throw ConsistencyError("phi_plus not integral");
        for (long j = 1; j <= 2 * n; j++) M.set_reduced((int)(i - 1), (int)(j - 1), v.coeff(j));
    }
    // membership rule cross-check: m_ij = 1 iff i * j^-1 mod ell lies in 1..n
    for (long i = 1; i <= n + 1; i++)
        for (long j = 1; j <= 2 * n; j++) {
            long jinv = 1;
            {
                long t = 0, newt = 1, r = ell, newr = j % ell;
                while (newr != 0) {
                    long q = r / newr;
                    long tmp = t - q * newt;
                    t = newt;
                    newt = tmp;
                    tmp = r - q * newr;
                    r = newr;
                    newr = tmp;
                }
                jinv = ((t % ell) + ell) % ell;
            }
            long rule = ((i * jinv) % ell <= n) ? 1 : 0;
            if (M.at((int)(i - 1), (int)(j - 1)) != rule % p)
                throw ConsistencyError("matrix_M characterizations disagree");
        }
    return M;
}

namespace {

nlohmann::json vec_to_json(const std::vector<long>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (long x : v) a.push_back(x);
    return a;
}

} // namespace

nlohmann::json H1S2Report::to_json() const {
    nlohmann::json j;
    j["l"] = ell;
    j["p"] = p;
    j["dimension"] = dimension;
    j["below_full"] = below_full;
    j["exact_span"] = exact_span;
    nlohmann::json rows_j = nlohmann::json::array();
    for (auto& r : rows) {
        nlohmann::json rj;
        rj["a"] = r.a;
        rj["order"] = r.order.get_str();
        rj["image"] = vec_to_json(r.image);
        rj["nonzero"] = r.nonzero;
        rows_j.push_back(rj);
    }
    j["generators"] = rows_j;
    if (!mixed.empty()) {
        nlohmann::json mj = nlohmann::json::array();
        for (auto& m : mixed) {
            nlohmann::json r;
            r["a"] = m.a;
            r["b"] = m.b;
            r["x"] = m.x.get_str();
            r["y"] = m.y.get_str();
            r["image"] = vec_to_json(m.image);
            mj.push_back(r);
        }
        j["mixed"] = mj;
    }
    return j;
}

namespace {

std::vector<unsigned long> residue_key(const ResidueElt& r) {
    std::vector<unsigned long> k;
    for (long j = 1; j < r.params().ell; j++) k.push_back(mpz_get_ui(r.coeff(j).get_mpz_t()));
    return k;
}

// x with base^x = target inside the cyclic group <base> of the given order;
// -1 if target is not a power of base, -2 if the order is too large to table.
mpz_class bsgs_dlog(const ResidueElt& base, const ResidueElt& target, const mpz_class& order) {
    if (target.is_one()) return 0;
    if (order > mpz_class("4000000000000")) return -2;
    mpz_class mz;
    mpz_sqrt(mz.get_mpz_t(), order.get_mpz_t());
    mz += 1;
    long m = mpz_get_si(mz.get_mpz_t());
    std::map<std::vector<unsigned long>, long> baby;
    ResidueElt cur = ResidueElt::one(base.params(), base.modulus());
    for (long j = 0; j < m; j++) {
        baby.emplace(residue_key(cur), j);
        cur = cur * base;
    }
    ResidueElt giant_step = base.pow(order - m); // base^-m
    cur = target;
    for (long i = 0; i <= m; i++) {
        auto it = baby.find(residue_key(cur));
        if (it != baby.end()) {
            mpz_class x = mpz_class(i) * m + it->second;
            if (base.pow(x) == target) return x % order;
        }
        cur = cur * giant_step;
    }
    return -1;
}

// image of a residue u = 1 mod 2p in S_1/S_2 = F_p^(2n): (u - 1)/(2p) mod p
std::vector<long> unit_image(const ResidueElt& u, long p) {
    const long ell = u.params().ell;
    const mpz_class two_p = 2 * mpz_class(p);
    const mpz_class two_p2 = two_p * p;
    if (u.modulus() != two_p2) throw ConsistencyError("unit_image expects modulus 2p^2");
    std::vector<long> img;
    for (long j = 1; j <= ell - 1; j++) {
        mpz_class c = (u.coeff(j) + 1) % two_p2; // subtract the all-(-1) unit
        if (c % two_p != 0) throw ConsistencyError("element not congruent 1 mod 2p");
        img.push_back(mpz_get_si(mpz_class(c / two_p % p).get_mpz_t()));
    }
    return img;
}

std::vector<mpz_class> sorted_divisors(const mpz_class& v) {
    Factorization f = factorize(v);
    std::vector<mpz_class> divs{1};
    for (auto& [q, e] : f.primes) {
        size_t sz = divs.size();
        mpz_class qe = 1;
        for (int t = 1; t <= e; t++) {
            qe *= q;
            for (size_t i = 0; i < sz; i++) divs.push_back(divs[i] * qe);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

} // namespace

H1S2Report h1s2(long ell, long p, const HPlusTable& hplus) {
    CycParams cp(ell);
    if (p < 3 || p % 2 == 0 || !is_small_prime(p)) throw ParameterError("p must be an odd prime");
    if (2 * ell % p == 0 || p == ell)
        throw UnsupportedParameters("h1s2 requires p coprime to 2*ell");
    mpz_class hp = hplus.lookup(ell);
    if (mpz_divisible_ui_p(hp.get_mpz_t(), (unsigned long)p))
        throw UnsupportedParameters("h1s2 requires p coprime to h_ell^+");

    const long n = cp.n;
    const mpz_class two_p = 2 * mpz_class(p);
    const mpz_class two_p2 = two_p * p;

    H1S2Report rep;
    rep.ell = ell;
    rep.p = p;
    rep.exact_span = true;
    std::vector<std::vector<long>> span_rows;
    std::vector<CycElt> units;
    std::vector<ResidueElt> psi;  // units mod 2p
    std::vector<ResidueElt> psi2; // units mod 2p^2
    std::vector<mpz_class> orders, orders2;
    for (long a = 2; a <= n; a++) {
        CycElt xi = cyclotomic_unit(cp, a);
        ResidueElt xm = residue_reduce(xi, two_p);
        mpz_class e = multiplicative_order(xm);
        if (!xm.pow(e).is_one()) throw ConsistencyError("order does not annihilate unit");
        ResidueElt xm2 = residue_reduce(xi, two_p2);

        H1S2Row row;
        row.a = a;
        row.order = e;
        row.image = unit_image(xm2.pow(e), p);
        row.nonzero = std::any_of(row.image.begin(), row.image.end(), [](long v) { return v != 0; });
        span_rows.push_back(row.image);
        rep.rows.push_back(std::move(row));
        units.push_back(std::move(xi));
        psi.push_back(std::move(xm));
        psi2.push_back(std::move(xm2));
        orders.push_back(e);
        orders2.push_back(0); // filled lazily
    }

    /*
     * The span of H_1/S_2 is the image of the full kernel lattice
     * K = { c : prod_a xi_a^(c_a) = 1 mod 2p }, not only of its diagonal
     * sublattice of single powers: for each pair (a, b) the quotient
     * K_ab / diag is cyclic, generated by one relation xi_a^x = xi_b^y with
     * minimal y | order(xi_b). Pairwise relations give the exact span for
     * n-1 <= 2 and a lower bound beyond that.
     */
    const size_t m = units.size();
    for (size_t ia = 0; ia < m; ia++) {
        for (size_t ib = ia + 1; ib < m; ib++) {
            const mpz_class &ea = orders[ia], &eb = orders[ib];
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), ea.get_mpz_t(), eb.get_mpz_t());
            std::vector<mpz_class> divs = sorted_divisors(g);
            bool found = false;
            for (auto it = divs.rbegin(); it != divs.rend() && !found; ++it) {
                mpz_class y = eb / *it;
                if (y == eb) break; // trivial relation, already in the diagonal
                ResidueElt target = psi[ib].pow(y);
                mpz_class x = bsgs_dlog(psi[ia], target, ea);
                if (x == -2) {
                    rep.exact_span = false;
                    break;
                }
                if (x < 0) continue;
                // u = xi_a^-x xi_b^y is in S_1; its image joins the span
                if (orders2[ia] == 0) orders2[ia] = multiplicative_order(psi2[ia]);
                mpz_class xinv = (orders2[ia] - x % orders2[ia]) % orders2[ia];
                ResidueElt u = psi2[ia].pow(xinv) * psi2[ib].pow(y);
                H1S2MixedRow mr;
                mr.a = rep.rows[ia].a;
                mr.b = rep.rows[ib].a;
                mr.x = x;
                mr.y = y;
                mr.image = unit_image(u, p);
                span_rows.push_back(mr.image);
                rep.mixed.push_back(std::move(mr));
                found = true;
            }
        }
    }
    if (m > 2) rep.exact_span = false; // pairwise relations only bound the span

    if (span_rows.empty()) {
        rep.dimension = 0;
    } else {
        FpMatrix images(p, (int)span_rows.size(), (int)(2 * n));
        for (size_t i = 0; i < span_rows.size(); i++)
            for (long j = 0; j < 2 * n; j++)
                images.at((int)i, (int)j) = span_rows[i][(size_t)j];
        rep.dimension = rank_mod_p(images);
    }
    rep.below_full = rep.dimension < (int)(n - 1);
    return rep;
}

nlohmann::json GaloisPrediction::to_json() const {
    nlohmann::json j;
    j["l"] = ell;
    j["p"] = p;
    j["rank_M"] = rank_M;
    j["det_N"] = det_N.get_str();
    j["p_divides_det_N"] = p_divides_detN;
    j["h1s2_dim"] = h1s2_dim;
    j["galois_order"] = galois_order.get_str();
    j["ray_class_equality"] = ray_class_equality;
    return j;
}

GaloisPrediction galois_predictions(long ell, long p, const HPlusTable& hplus) {
    CycParams cp(ell);
    if (p < 3 || p % 2 == 0 || !is_small_prime(p)) throw ParameterError("p must be an odd prime");
    mpz_class hp = hplus.lookup(ell);
    if (p == ell || cp.n % p == 0 || mpz_divisible_ui_p(hp.get_mpz_t(), (unsigned long)p))
        throw UnsupportedParameters("theorem requires p coprime to ell * h_ell^+ * n");

    GaloisPrediction g;
    g.ell = ell;
    g.p = p;
    g.rank_M = rank_mod_p(matrix_M(ell, p));
    g.det_N = det_exact(matrix_N(ell));
    g.p_divides_detN = mpz_divisible_ui_p(g.det_N.get_mpz_t(), (unsigned long)p) != 0;
    g.h1s2_dim = h1s2(ell, p, hplus).dimension;
    mpz_ui_pow_ui(g.galois_order.get_mpz_t(), (unsigned long)p, (unsigned long)g.rank_M);
    g.ray_class_equality = (g.h1s2_dim == (int)(cp.n - 1)) && !g.p_divides_detN;
    return g;
}

} // namespace cyclotheta
