#ifndef FNEF_MATRIX_HPP
#define FNEF_MATRIX_HPP

#include "rational.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace fnef {

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

using RatVector = std::vector<Rational>;

/// Dense row-major matrix over the rationals.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static RatMatrix identity(std::size_t n) {
        RatMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static RatMatrix from_rows(const std::vector<RatVector>& rows) {
        if (rows.empty()) return {};
        RatMatrix m(rows.size(), rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) throw DimensionError("ragged row list");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Rational> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    RatVector row_vector(std::size_t r) const { auto s = row(r); return {s.begin(), s.end()}; }

    RatVector column(std::size_t c) const {
        RatVector v(rows_);
        for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
        return v;
    }

    RatMatrix transpose() const {
        RatMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
        if (a.cols_ != b.rows_) throw DimensionError("matrix product shape mismatch");
        RatMatrix p(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Rational& x = a(i, k);
                if (sgn(x) == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) p(i, j) += x * b(k, j);
            }
        return p;
    }

    RatVector apply(std::span<const Rational> v) const {
        if (v.size() != cols_) throw DimensionError("matrix-vector shape mismatch");
        RatVector out(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (sgn(v[j]) != 0) out[i] += (*this)(i, j) * v[j];
        return out;
    }

    friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

namespace detail {

// Scales every row to integers; Bareiss elimination then stays inside Z.
inline std::vector<std::vector<Integer>> integer_rows(const RatMatrix& m, Integer* scale = nullptr) {
    std::vector<std::vector<Integer>> z(m.rows(), std::vector<Integer>(m.cols()));
    if (scale) *scale = 1;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Integer l = 1;
        for (std::size_t c = 0; c < m.cols(); ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den_mpz_t());
        for (std::size_t c = 0; c < m.cols(); ++c) z[r][c] = m(r, c).get_num() * (l / m(r, c).get_den());
        if (scale) *scale *= l;
    }
    return z;
}

// Fraction-free forward elimination. Returns rank; sign tracks row swaps and
// last holds the final pivot (the determinant of the leading minor).
inline std::size_t bareiss(std::vector<std::vector<Integer>>& a, std::size_t cols, int& sign, Integer& last) {
    std::size_t rows = a.size();
    std::size_t r = 0;
    Integer prev = 1;
    sign = 1;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        if (p != r) { std::swap(a[p], a[r]); sign = -sign; }
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                a[i][j] = a[i][j] * a[r][c] - a[i][c] * a[r][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    last = prev;
    return r;
}

}  // namespace detail

inline std::size_t mat_rank(const RatMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    auto z = detail::integer_rows(m);
    int sign;
    Integer last;
    return detail::bareiss(z, m.cols(), sign, last);
}

inline Rational mat_det(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionError("determinant of a non-square matrix");
    if (m.rows() == 0) return 1;
    Integer scale;
    auto z = detail::integer_rows(m, &scale);
    int sign;
    Integer last;
    std::size_t rank = detail::bareiss(z, m.cols(), sign, last);
    if (rank < m.rows()) return 0;
    Rational d(last * sign, scale);
    d.canonicalize();
    return d;
}

/// Reduced row echelon form. Returns the pivot columns.
inline std::vector<std::size_t> rref_in_place(RatMatrix& a) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && sgn(a(p, c)) == 0) ++p;
        if (p == a.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
        Rational inv = 1 / a(r, c);
        for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || sgn(a(i, c)) == 0) continue;
            Rational f = a(i, c);
            for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

/// Basis of the right null space, one vector per free column.
inline std::vector<RatVector> mat_kernel(const RatMatrix& m) {
    RatMatrix a = m;
    auto pivots = rref_in_place(a);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<RatVector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        RatVector v(m.cols());
        v[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Some solution of m x = rhs, or nullopt when the system is inconsistent.
inline std::optional<RatVector> mat_solve(const RatMatrix& m, std::span<const Rational> rhs) {
    if (rhs.size() != m.rows()) throw DimensionError("right-hand side length mismatch");
    RatMatrix a(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) a(i, j) = m(i, j);
        a(i, m.cols()) = rhs[i];
    }
    auto pivots = rref_in_place(a);
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
    RatVector x(m.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = a(i, m.cols());
    return x;
}

inline RatMatrix mat_inverse(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionError("inverse of a non-square matrix");
    std::size_t n = m.rows();
    RatMatrix a(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a(i, j) = m(i, j);
        a(i, n + i) = 1;
    }
    auto pivots = rref_in_place(a);
    if (pivots.size() < n || pivots[n - 1] != n - 1) throw DomainError("matrix is singular");
    RatMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = a(i, n + j);
    return inv;
}

}  // namespace fnef

#endif
