#pragma once

#include <initializer_list>

#include "flattrace/numeric.hpp"

namespace flattrace {

/// Dense exact integer matrix. All arithmetic is arbitrary precision.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), e_(size_t(rows) * cols, Int(0)) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    }
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(int n);
    static IntMatrix zero(int rows, int cols) { return IntMatrix(rows, cols); }
    static IntMatrix diagonal(const VecI& d);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Int& at(int i, int j) { return e_[size_t(i) * cols_ + j]; }
    const Int& at(int i, int j) const { return e_[size_t(i) * cols_ + j]; }

    bool operator==(const IntMatrix& o) const = default;

    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix operator+(const IntMatrix& o) const;
    IntMatrix operator-(const IntMatrix& o) const;
    IntMatrix operator-() const;

    VecI apply(const VecI& v) const;   // M * v
    VecQ apply(const VecQ& v) const;

    VecI row(int i) const;
    VecI col(int j) const;

    bool is_zero() const;
    bool is_identity() const;

    std::string to_string() const;

private:
    int rows_ = 0, cols_ = 0;
    VecI e_;
};

/// Exact determinant (Bareiss fraction-free elimination). Throws on non-square input.
Int det(const IntMatrix& m);

bool is_unimodular(const IntMatrix& m);

/// Inverse of a matrix with det = ±1. Result is integral.
IntMatrix inverse_unimodular(const IntMatrix& m);

/// Exact rational inverse via Gauss-Jordan; throws if singular.
std::vector<VecQ> inverse_rational(const IntMatrix& m);

}  // namespace flattrace
