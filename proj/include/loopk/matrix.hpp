#ifndef LOOPK_MATRIX_HPP
#define LOOPK_MATRIX_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <loopk/errors.hpp>
#include <loopk/rational.hpp>

namespace loopk
{

// Dense row-major matrix over a commutative ring T. Zero and one are taken
// from a prototype element so that ring parameters (precision, number of
// Laurent variables, cyclotomic order) carry through.
template <typename T>
class Matrix
{
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T &proto)
        : m_rows(rows), m_cols(cols), m_data(rows * cols, zero_like(proto)), m_zero(zero_like(proto))
    {
    }

    static Matrix identity(std::size_t n, const T &proto)
    {
        Matrix m(n, n, proto);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = one_like(proto);
        }
        return m;
    }

    std::size_t rows() const
    {
        return m_rows;
    }
    std::size_t cols() const
    {
        return m_cols;
    }
    const T &proto() const
    {
        return m_zero;
    }

    T &operator()(std::size_t i, std::size_t j)
    {
        return m_data[i * m_cols + j];
    }
    const T &operator()(std::size_t i, std::size_t j) const
    {
        return m_data[i * m_cols + j];
    }

    bool is_zero() const
    {
        for (const auto &x : m_data) {
            if (!is_zero_elem(x)) {
                return false;
            }
        }
        return true;
    }

    bool is_identity() const
    {
        if (m_rows != m_cols) {
            return false;
        }
        const T one = one_like(m_zero);
        for (std::size_t i = 0; i < m_rows; ++i) {
            for (std::size_t j = 0; j < m_cols; ++j) {
                if (!is_zero_elem((*this)(i, j) - (i == j ? one : m_zero))) {
                    return false;
                }
            }
        }
        return true;
    }

    Matrix &operator+=(const Matrix &o)
    {
        check_same_shape(o);
        for (std::size_t k = 0; k < m_data.size(); ++k) {
            m_data[k] += o.m_data[k];
        }
        return *this;
    }
    Matrix &operator-=(const Matrix &o)
    {
        check_same_shape(o);
        for (std::size_t k = 0; k < m_data.size(); ++k) {
            m_data[k] -= o.m_data[k];
        }
        return *this;
    }
    Matrix &operator*=(const Rational &q)
    {
        for (auto &x : m_data) {
            x *= q;
        }
        return *this;
    }
    // Multiply every entry by a ring element.
    Matrix scaled(const T &c) const
    {
        Matrix r(*this);
        for (auto &x : r.m_data) {
            x = c * x;
        }
        return r;
    }

    friend Matrix operator+(Matrix a, const Matrix &b)
    {
        return a += b;
    }
    friend Matrix operator-(Matrix a, const Matrix &b)
    {
        return a -= b;
    }
    friend Matrix operator*(const Matrix &a, const Matrix &b)
    {
        if (a.m_cols != b.m_rows) {
            throw invalid_input("Matrix: shape mismatch in product");
        }
        Matrix r(a.m_rows, b.m_cols, a.m_zero);
        for (std::size_t i = 0; i < a.m_rows; ++i) {
            for (std::size_t k = 0; k < a.m_cols; ++k) {
                const T &aik = a(i, k);
                if (is_zero_elem(aik)) {
                    continue;
                }
                for (std::size_t j = 0; j < b.m_cols; ++j) {
                    if (!is_zero_elem(b(k, j))) {
                        r(i, j) += aik * b(k, j);
                    }
                }
            }
        }
        return r;
    }

    std::vector<T> apply(const std::vector<T> &v) const
    {
        if (v.size() != m_cols) {
            throw invalid_input("Matrix: vector length mismatch");
        }
        std::vector<T> r(m_rows, m_zero);
        for (std::size_t i = 0; i < m_rows; ++i) {
            for (std::size_t j = 0; j < m_cols; ++j) {
                if (!is_zero_elem((*this)(i, j)) && !is_zero_elem(v[j])) {
                    r[i] += (*this)(i, j) * v[j];
                }
            }
        }
        return r;
    }

    friend bool operator==(const Matrix &a, const Matrix &b)
    {
        if (a.m_rows != b.m_rows || a.m_cols != b.m_cols) {
            return false;
        }
        for (std::size_t k = 0; k < a.m_data.size(); ++k) {
            if (!is_zero_elem(a.m_data[k] - b.m_data[k])) {
                return false;
            }
        }
        return true;
    }

    // Entrywise conversion to another ring.
    template <typename U, typename F>
    Matrix<U> map(const U &proto, F &&f) const
    {
        Matrix<U> r(m_rows, m_cols, proto);
        for (std::size_t i = 0; i < m_rows; ++i) {
            for (std::size_t j = 0; j < m_cols; ++j) {
                r(i, j) = f((*this)(i, j));
            }
        }
        return r;
    }

private:
    static bool is_zero_elem(const T &x)
    {
        using loopk::is_zero;
        return is_zero(x);
    }
    void check_same_shape(const Matrix &o) const
    {
        if (m_rows != o.m_rows || m_cols != o.m_cols) {
            throw invalid_input("Matrix: shape mismatch");
        }
    }

    std::size_t m_rows = 0, m_cols = 0;
    std::vector<T> m_data;
    T m_zero{};
};

// Row-reduced echelon form over a field; returns the pivot columns.
template <typename K>
std::vector<std::size_t> rref_in_place(Matrix<K> &m)
{
    using loopk::is_zero;
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
        std::size_t p = row;
        while (p < m.rows() && is_zero(m(p, c))) {
            ++p;
        }
        if (p == m.rows()) {
            continue;
        }
        if (p != row) {
            for (std::size_t j = 0; j < m.cols(); ++j) {
                std::swap(m(p, j), m(row, j));
            }
        }
        const K inv = one_like(m(row, c)) / m(row, c);
        for (std::size_t j = c; j < m.cols(); ++j) {
            m(row, j) = m(row, j) * inv;
        }
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || is_zero(m(r, c))) {
                continue;
            }
            const K f = m(r, c);
            for (std::size_t j = c; j < m.cols(); ++j) {
                if (!is_zero(m(row, j))) {
                    m(r, j) -= f * m(row, j);
                }
            }
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

template <typename K>
std::size_t rank(Matrix<K> m)
{
    return rref_in_place(m).size();
}

// Basis of the right kernel {x : m x = 0}, in canonical (RREF) form.
template <typename K>
std::vector<std::vector<K>> kernel(Matrix<K> m)
{
    const auto pivots = rref_in_place(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) {
        is_pivot[p] = true;
    }
    std::vector<std::vector<K>> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) {
            continue;
        }
        std::vector<K> v(m.cols(), zero_like(m.proto()));
        v[f] = one_like(m.proto());
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            v[pivots[r]] = -m(r, f);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

// Some solution of m x = b, or nullopt.
template <typename K>
std::optional<std::vector<K>> solve(const Matrix<K> &m, const std::vector<K> &b)
{
    using loopk::is_zero;
    Matrix<K> aug(m.rows(), m.cols() + 1, m.proto());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            aug(i, j) = m(i, j);
        }
        aug(i, m.cols()) = b[i];
    }
    const auto pivots = rref_in_place(aug);
    if (!pivots.empty() && pivots.back() == m.cols()) {
        return std::nullopt;
    }
    std::vector<K> x(m.cols(), zero_like(m.proto()));
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        x[pivots[r]] = aug(r, m.cols());
    }
    return x;
}

// Inverse over a field; throws math_error when singular.
template <typename K>
Matrix<K> inverse(const Matrix<K> &m)
{
    const std::size_t n = m.rows();
    if (m.cols() != n) {
        throw invalid_input("inverse: matrix is not square");
    }
    Matrix<K> aug(n, 2 * n, m.proto());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            aug(i, j) = m(i, j);
        }
        aug(i, n + i) = one_like(m.proto());
    }
    const auto pivots = rref_in_place(aug);
    if (pivots.size() < n || pivots[n - 1] != n - 1) {
        throw math_error("inverse: matrix is singular");
    }
    Matrix<K> r(n, n, m.proto());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            r(i, j) = aug(i, n + j);
        }
    }
    return r;
}

// Matrix whose columns are the given vectors.
template <typename K>
Matrix<K> from_columns(const std::vector<std::vector<K>> &cols, std::size_t n, const K &proto)
{
    Matrix<K> m(n, cols.size(), proto);
    for (std::size_t j = 0; j < cols.size(); ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            m(i, j) = cols[j][i];
        }
    }
    return m;
}

// Smith normal form diagonal of an integer matrix (invariant factors, the
// nonzero ones first in divisibility order).
std::vector<long> smith_invariants(std::vector<std::vector<long>> m);

} // namespace loopk

#endif
