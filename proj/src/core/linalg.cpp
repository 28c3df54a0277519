#include "koszul/core/linalg.hpp"

#include <stdexcept>

namespace koszul {

Matrix Matrix::from_columns(const std::vector<Vec>& columns, std::size_t rows) {
    Matrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != rows) throw std::invalid_argument("Matrix::from_columns: ragged columns");
        for (std::size_t r = 0; r < rows; ++r) m.at(r, c) = columns[c][r];
    }
    return m;
}

Vec Matrix::apply(const Vec& v) const {
    if (v.size() != cols_) throw std::invalid_argument("Matrix::apply: dimension mismatch");
    Vec out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (!at(r, c).is_zero() && !v[c].is_zero()) out[r] += at(r, c) * v[c];
    return out;
}

Vec Matrix::column(std::size_t c) const {
    Vec out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = at(r, c);
    return out;
}

bool Matrix::is_zero() const {
    for (const auto& x : data_)
        if (!x.is_zero()) return false;
    return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("Matrix product: dimension mismatch");
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a.at(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (!b.at(k, j).is_zero()) out.at(i, j) += a.at(i, k) * b.at(k, j);
        }
    return out;
}

Echelon row_reduce(Matrix m) {
    Echelon e;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pivot = row;
        while (pivot < m.rows() && m.at(pivot, col).is_zero()) ++pivot;
        if (pivot == m.rows()) continue;
        if (pivot != row)
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(pivot, c), m.at(row, c));
        const Scalar inv = Scalar(1) / m.at(row, col);
        for (std::size_t c = col; c < m.cols(); ++c) m.at(row, c) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m.at(r, col).is_zero()) continue;
            const Scalar f = m.at(r, col);
            for (std::size_t c = col; c < m.cols(); ++c)
                if (!m.at(row, c).is_zero()) m.at(r, c) -= f * m.at(row, c);
        }
        e.pivot_columns.push_back(col);
        ++row;
    }
    e.reduced = std::move(m);
    return e;
}

std::size_t rank(const Matrix& m) { return row_reduce(m).pivot_columns.size(); }

std::vector<Vec> kernel(const Matrix& m) {
    Echelon e = row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : e.pivot_columns) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vec v(m.cols());
        v[free] = 1;
        for (std::size_t r = 0; r < e.pivot_columns.size(); ++r) v[e.pivot_columns[r]] = -e.reduced.at(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
    if (b.size() != m.rows()) throw std::invalid_argument("solve: dimension mismatch");
    Matrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) aug.at(r, c) = m.at(r, c);
        aug.at(r, m.cols()) = b[r];
    }
    Echelon e = row_reduce(std::move(aug));
    if (!e.pivot_columns.empty() && e.pivot_columns.back() == m.cols()) return std::nullopt;
    Vec x(m.cols());
    for (std::size_t r = 0; r < e.pivot_columns.size(); ++r) x[e.pivot_columns[r]] = e.reduced.at(r, m.cols());
    return x;
}

std::vector<std::size_t> independent_columns(const Matrix& m) { return row_reduce(m).pivot_columns; }

bool is_zero(const Vec& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

Vec operator+(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector sum: dimension mismatch");
    Vec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Vec operator-(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector difference: dimension mismatch");
    Vec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

Vec operator*(const Scalar& c, const Vec& v) {
    Vec r = v;
    for (auto& x : r) x *= c;
    return r;
}

}  // namespace koszul
