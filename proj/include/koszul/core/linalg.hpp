#pragma once

#include "koszul/core/scalar.hpp"

#include <optional>
#include <vector>

namespace koszul {

using Vec = std::vector<Scalar>;

/// Dense exact matrix over Q. Small by design: every use here is a
/// cohomology or span test on at most a few hundred coordinates.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    static Matrix from_columns(const std::vector<Vec>& columns, std::size_t rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Scalar& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vec apply(const Vec& v) const;
    Vec column(std::size_t c) const;
    bool is_zero() const;
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Scalar> data_;
};

/// Reduced row echelon form; pivots chosen by the leftmost-nonzero rule so
/// results are reproducible.
struct Echelon {
    Matrix reduced;
    std::vector<std::size_t> pivot_columns;
};

Echelon row_reduce(Matrix m);
std::size_t rank(const Matrix& m);
/// Basis of the null space, one vector per free column (in column order).
std::vector<Vec> kernel(const Matrix& m);
/// Some x with m x = b, or nullopt.
std::optional<Vec> solve(const Matrix& m, const Vec& b);
/// Maximal linearly independent subset of the columns, as column indices.
std::vector<std::size_t> independent_columns(const Matrix& m);

bool is_zero(const Vec& v);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(const Scalar& c, const Vec& v);

}  // namespace koszul
