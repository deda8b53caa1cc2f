#include "cyclotheta/intmat.hpp"

#include <algorithm>

#include "cyclotheta/factor.hpp"

namespace cyclotheta {

BigIntMatrix BigIntMatrix::identity(int n) {
    BigIntMatrix m(n, n);
    for (int i = 0; i < n; i++) m.at(i, i) = 1;
    return m;
}

BigIntMatrix BigIntMatrix::transpose() const {
    BigIntMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; i++)
        for (int j = 0; j < cols_; j++) t.at(j, i) = at(i, j);
    return t;
}

BigIntMatrix BigIntMatrix::operator*(const BigIntMatrix& o) const {
    if (cols_ != o.rows_) throw ParameterError("matrix shape mismatch");
    BigIntMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; i++)
        for (int k = 0; k < cols_; k++) {
            if (at(i, k) == 0) continue;
            for (int j = 0; j < o.cols_; j++) r.at(i, j) += at(i, k) * o.at(k, j);
        }
    return r;
}

BigIntMatrix BigIntMatrix::submatrix(const std::vector<int>& row_idx,
                                     const std::vector<int>& col_idx) const {
    BigIntMatrix r((int)row_idx.size(), (int)col_idx.size());
    for (size_t i = 0; i < row_idx.size(); i++)
        for (size_t j = 0; j < col_idx.size(); j++) r.at((int)i, (int)j) = at(row_idx[i], col_idx[j]);
    return r;
}

std::vector<mpz_class> BigIntMatrix::mul_vec(const std::vector<mpz_class>& v) const {
    if ((int)v.size() != cols_) throw ParameterError("vector length mismatch");
    std::vector<mpz_class> r(rows_, 0);
    for (int i = 0; i < rows_; i++)
        for (int j = 0; j < cols_; j++) r[i] += at(i, j) * v[j];
    return r;
}

mpz_class det_bareiss(const BigIntMatrix& m) {
    if (m.rows() != m.cols()) throw ParameterError("determinant of non-square matrix");
    const int n = m.rows();
    if (n == 0) return 1;
    BigIntMatrix a = m;
    int sign = 1;
    mpz_class prev = 1;
    for (int k = 0; k < n - 1; k++) {
        if (a.at(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; i++)
                if (a.at(i, k) != 0) { piv = i; break; }
            if (piv < 0) return 0;
            for (int j = 0; j < n; j++) std::swap(a.at(k, j), a.at(piv, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; i++) {
            for (int j = k + 1; j < n; j++) {
                mpz_class t = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                mpz_divexact(a.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a.at(i, k) = 0;
        }
        prev = a.at(k, k);
    }
    return sign > 0 ? a.at(n - 1, n - 1) : mpz_class(-a.at(n - 1, n - 1));
}

namespace {

mpz_class hadamard_bound(const BigIntMatrix& m) {
    // prod_i sqrt(sum_j a_ij^2) <= prod_i (sqrt(n) * max|a_ij|); use the
    // row-norm product, rounded up
    mpz_class bound = 1;
    for (int i = 0; i < m.rows(); i++) {
        mpz_class s = 0;
        for (int j = 0; j < m.cols(); j++) s += m.at(i, j) * m.at(i, j);
        mpz_class r;
        mpz_sqrt(r.get_mpz_t(), s.get_mpz_t());
        bound *= (r + 1);
    }
    return bound;
}

} // namespace

std::uint64_t det_mod_u64(int n, std::uint64_t q, const std::vector<std::uint64_t>& rm) {
    std::vector<std::uint64_t> a(rm);
    auto mulmod = [q](std::uint64_t x, std::uint64_t y) -> std::uint64_t {
        return (std::uint64_t)((unsigned __int128)x * y % q);
    };
    auto powmod = [&](std::uint64_t b, std::uint64_t e) {
        std::uint64_t r = 1;
        while (e) {
            if (e & 1) r = mulmod(r, b);
            b = mulmod(b, b);
            e >>= 1;
        }
        return r;
    };
    std::uint64_t det = 1;
    bool neg = false;
    for (int k = 0; k < n; k++) {
        int piv = -1;
        for (int i = k; i < n; i++)
            if (a[(size_t)i * n + k] % q != 0) { piv = i; break; }
        if (piv < 0) return 0;
        if (piv != k) {
            for (int j = k; j < n; j++) std::swap(a[(size_t)k * n + j], a[(size_t)piv * n + j]);
            neg = !neg;
        }
        std::uint64_t pv = a[(size_t)k * n + k] % q;
        det = mulmod(det, pv);
        std::uint64_t inv = powmod(pv, q - 2);
        for (int i = k + 1; i < n; i++) {
            std::uint64_t f = mulmod(a[(size_t)i * n + k] % q, inv);
            if (f == 0) continue;
            for (int j = k; j < n; j++) {
                std::uint64_t sub = mulmod(f, a[(size_t)k * n + j] % q);
                std::uint64_t cur = a[(size_t)i * n + j] % q;
                a[(size_t)i * n + j] = cur >= sub ? cur - sub : cur + q - sub;
            }
        }
    }
    if (neg && det != 0) det = q - det;
    return det;
}

mpz_class det_exact(const BigIntMatrix& m) {
    if (m.rows() != m.cols()) throw ParameterError("determinant of non-square matrix");
    const int n = m.rows();
    if (n <= 50) return det_bareiss(m);

    mpz_class bound = 2 * hadamard_bound(m) + 1;
    mpz_class prod = 1, det = 0;
    mpz_class p("4611686018427387847"); // just below 2^62
    while (prod < bound) {
        p = next_prime(p);
        std::uint64_t q = mpz_get_ui(p.get_mpz_t());
        std::vector<std::uint64_t> rm((size_t)n * n);
        for (int i = 0; i < n; i++)
            for (int j = 0; j < n; j++) {
                mpz_class r = m.at(i, j) % p;
                if (r < 0) r += p;
                rm[(size_t)i * n + j] = mpz_get_ui(r.get_mpz_t());
            }
        std::uint64_t dq = det_mod_u64(n, q, rm);
        // CRT combine
        mpz_class pd = p;
        mpz_class dqz;
        mpz_import(dqz.get_mpz_t(), 1, 1, sizeof dq, 0, 0, &dq);
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), prod.get_mpz_t(), pd.get_mpz_t());
        mpz_class t = ((dqz - det) % pd * inv) % pd;
        if (t < 0) t += pd;
        det += prod * t;
        prod *= pd;
    }
    if (det * 2 > prod) det -= prod; // symmetric representative
    return det;
}

FpMatrix::FpMatrix(long p, int rows, int cols)
    : p_(p), rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0) {
    if (p < 2) throw ParameterError("modulus must be >= 2");
}

void FpMatrix::set_reduced(int i, int j, const mpz_class& v) {
    at(i, j) = mpz_fdiv_ui(v.get_mpz_t(), (unsigned long)p_);
}

int rank_mod_p(FpMatrix m) {
    const long p = m.p();
    int rank = 0;
    for (int col = 0; col < m.cols() && rank < m.rows(); col++) {
        int piv = -1;
        for (int i = rank; i < m.rows(); i++)
            if (m.at(i, col) % p != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != rank)
            for (int j = 0; j < m.cols(); j++) std::swap(m.at(rank, j), m.at(piv, j));
        // normalize pivot row
        long inv = 1, base = m.at(rank, col) % p, e = p - 2;
        while (e) {
            if (e & 1) inv = (long)((__int128)inv * base % p);
            base = (long)((__int128)base * base % p);
            e >>= 1;
        }
        for (int j = 0; j < m.cols(); j++)
            m.at(rank, j) = (long)((__int128)m.at(rank, j) * inv % p);
        for (int i = 0; i < m.rows(); i++) {
            if (i == rank) continue;
            long f = m.at(i, col) % p;
            if (f == 0) continue;
            for (int j = 0; j < m.cols(); j++) {
                long v = (m.at(i, j) - (long)((__int128)f * m.at(rank, j) % p)) % p;
                m.at(i, j) = v < 0 ? v + p : v;
            }
        }
        rank++;
    }
    return rank;
}

} // namespace cyclotheta
