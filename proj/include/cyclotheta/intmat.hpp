#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "cyclotheta/errors.hpp"

namespace cyclotheta {

class BigIntMatrix {
public:
    BigIntMatrix() : rows_(0), cols_(0) {}
    BigIntMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0) {}
    static BigIntMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    mpz_class& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const mpz_class& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    BigIntMatrix transpose() const;
    BigIntMatrix operator*(const BigIntMatrix& o) const;
    bool operator==(const BigIntMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    BigIntMatrix submatrix(const std::vector<int>& row_idx, const std::vector<int>& col_idx) const;
    std::vector<mpz_class> mul_vec(const std::vector<mpz_class>& v) const;

private:
    int rows_, cols_;
    std::vector<mpz_class> a_;
};

// Exact determinant by Bareiss fraction-free elimination.
mpz_class det_bareiss(const BigIntMatrix& m);
// Exact determinant: Bareiss up to 50x50, then multi-prime CRT under the
// Hadamard bound.
mpz_class det_exact(const BigIntMatrix& m);

class FpMatrix {
public:
    FpMatrix(long p, int rows, int cols);
    long p() const { return p_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    long& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    long at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }
    void set_reduced(int i, int j, const mpz_class& v);
    bool operator==(const FpMatrix& o) const {
        return p_ == o.p_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

private:
    long p_;
    int rows_, cols_;
    std::vector<long> a_;
};

int rank_mod_p(FpMatrix m); // Gaussian elimination, by value

// Determinant of an integer matrix reduced mod a word-size prime q (q < 2^63),
// entries given through a generator to avoid materializing big matrices twice.
std::uint64_t det_mod_u64(int n, std::uint64_t q,
                          const std::vector<std::uint64_t>& row_major);

} // namespace cyclotheta
