#ifndef GCBRANE_MATRIX_HPP
#define GCBRANE_MATRIX_HPP

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include <gcbrane/rational.hpp>

namespace gcb
{

inline bool is_zero(const Rational &q) { return sgn(q) == 0; }
inline bool is_zero(const Gauss &g) { return g.is_zero(); }

// Dense matrix over an exact field (Rational or Gauss).
// Subspaces are passed around as matrices whose columns span them.
template <typename T>
class Matrix
{
public:
    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows_(r), cols_(c), a_(r * c, T(0)) {}

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = T(1);
        }
        return m;
    }

    static Matrix from_rows(const std::vector<std::vector<T>> &rows)
    {
        std::size_t r = rows.size();
        std::size_t c = r ? rows[0].size() : 0;
        Matrix m(r, c);
        for (std::size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c) {
                throw std::invalid_argument("ragged matrix rows");
            }
            for (std::size_t j = 0; j < c; ++j) {
                m(i, j) = rows[i][j];
            }
        }
        return m;
    }

    static Matrix from_columns(const std::vector<std::vector<T>> &cols, std::size_t r)
    {
        Matrix m(r, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            for (std::size_t i = 0; i < r; ++i) {
                m(i, j) = cols[j][i];
            }
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T &operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T &operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<T> column(std::size_t j) const
    {
        std::vector<T> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            v[i] = (*this)(i, j);
        }
        return v;
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
    {
        Matrix m(nr, nc);
        for (std::size_t i = 0; i < nr; ++i) {
            for (std::size_t j = 0; j < nc; ++j) {
                m(i, j) = (*this)(r0 + i, c0 + j);
            }
        }
        return m;
    }

    void set_block(std::size_t r0, std::size_t c0, const Matrix &b)
    {
        for (std::size_t i = 0; i < b.rows(); ++i) {
            for (std::size_t j = 0; j < b.cols(); ++j) {
                (*this)(r0 + i, c0 + j) = b(i, j);
            }
        }
    }

    Matrix transpose() const
    {
        Matrix m(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                m(j, i) = (*this)(i, j);
            }
        }
        return m;
    }

    bool is_zero() const
    {
        for (const auto &x : a_) {
            if (!gcb::is_zero(x)) {
                return false;
            }
        }
        return true;
    }

    bool is_square() const { return rows_ == cols_; }

    Matrix operator+(const Matrix &o) const
    {
        check_same(o);
        Matrix m(*this);
        for (std::size_t i = 0; i < a_.size(); ++i) {
            m.a_[i] += o.a_[i];
        }
        return m;
    }

    Matrix operator-(const Matrix &o) const
    {
        check_same(o);
        Matrix m(*this);
        for (std::size_t i = 0; i < a_.size(); ++i) {
            m.a_[i] -= o.a_[i];
        }
        return m;
    }

    Matrix operator-() const
    {
        Matrix m(*this);
        for (auto &x : m.a_) {
            x = -x;
        }
        return m;
    }

    Matrix operator*(const Matrix &o) const
    {
        if (cols_ != o.rows_) {
            throw std::invalid_argument("matrix product shape mismatch");
        }
        Matrix m(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t k = 0; k < cols_; ++k) {
                const T &x = (*this)(i, k);
                if (gcb::is_zero(x)) {
                    continue;
                }
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    m(i, j) += x * o(k, j);
                }
            }
        }
        return m;
    }

    Matrix scaled(const T &s) const
    {
        Matrix m(*this);
        for (auto &x : m.a_) {
            x = x * s;
        }
        return m;
    }

    bool operator==(const Matrix &o) const
    {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const Matrix &o) const { return !(*this == o); }

private:
    void check_same(const Matrix &o) const
    {
        if (rows_ != o.rows_ || cols_ != o.cols_) {
            throw std::invalid_argument("matrix shape mismatch");
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> a_;
};

using QMatrix = Matrix<Rational>;
using GMatrix = Matrix<Gauss>;

template <typename T>
Matrix<T> hstack(const Matrix<T> &a, const Matrix<T> &b)
{
    if (a.cols() == 0) {
        return b;
    }
    if (b.cols() == 0) {
        return a;
    }
    if (a.rows() != b.rows()) {
        throw std::invalid_argument("hstack row mismatch");
    }
    Matrix<T> m(a.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(0, a.cols(), b);
    return m;
}

template <typename T>
Matrix<T> vstack(const Matrix<T> &a, const Matrix<T> &b)
{
    if (a.cols() != b.cols()) {
        throw std::invalid_argument("vstack column mismatch");
    }
    Matrix<T> m(a.rows() + b.rows(), a.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), 0, b);
    return m;
}

template <typename T>
Matrix<T> select_columns(const Matrix<T> &a, const std::vector<std::size_t> &idx)
{
    Matrix<T> m(a.rows(), idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j) {
        for (std::size_t i = 0; i < a.rows(); ++i) {
            m(i, j) = a(i, idx[j]);
        }
    }
    return m;
}

// Reduced row echelon form in place; returns pivot columns.
template <typename T>
std::vector<std::size_t> rref(Matrix<T> &m)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && is_zero(m(p, c))) {
            ++p;
        }
        if (p == m.rows()) {
            continue;
        }
        if (p != r) {
            for (std::size_t j = 0; j < m.cols(); ++j) {
                std::swap(m(p, j), m(r, j));
            }
        }
        T inv = T(1) / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) {
            m(r, j) = m(r, j) * inv;
        }
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || is_zero(m(i, c))) {
                continue;
            }
            T f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) {
                m(i, j) -= f * m(r, j);
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <typename T>
std::size_t rank(Matrix<T> m)
{
    return rref(m).size();
}

template <typename T>
class SpanBasis;

// Columns form a basis of the kernel.
template <typename T>
Matrix<T> nullspace(Matrix<T> m)
{
    auto piv = rref(m);
    std::vector<bool> is_piv(m.cols(), false);
    for (auto p : piv) {
        is_piv[p] = true;
    }
    std::vector<std::vector<T>> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_piv[f]) {
            continue;
        }
        std::vector<T> v(m.cols(), T(0));
        v[f] = T(1);
        for (std::size_t r = 0; r < piv.size(); ++r) {
            v[piv[r]] = -m(r, f);
        }
        basis.push_back(std::move(v));
    }
    return Matrix<T>::from_columns(basis, m.cols());
}

template <typename T>
Matrix<T> inverse(const Matrix<T> &a)
{
    if (!a.is_square()) {
        throw std::invalid_argument("inverse of non-square matrix");
    }
    std::size_t n = a.rows();
    Matrix<T> aug = hstack(a, Matrix<T>::identity(n));
    auto piv = rref(aug);
    if (piv.size() < n || piv[n - 1] != n - 1) {
        throw std::domain_error("singular matrix");
    }
    return aug.block(0, n, n, n);
}

// Incrementally built span supporting fast membership tests.
template <typename T>
class SpanBasis
{
public:
    explicit SpanBasis(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const { return rows_.size(); }

    // Residual of v after elimination against the stored vectors.
    std::vector<T> reduce(std::vector<T> v) const
    {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const T &f = v[piv_[r]];
            if (is_zero(f)) {
                continue;
            }
            T c = f;
            const auto &row = rows_[r];
            for (std::size_t i = 0; i < dim_; ++i) {
                if (!is_zero(row[i])) {
                    v[i] -= c * row[i];
                }
            }
        }
        return v;
    }

    bool contains(const std::vector<T> &v) const
    {
        for (const auto &x : reduce(v)) {
            if (!is_zero(x)) {
                return false;
            }
        }
        return true;
    }

    // Returns false when v was already in the span.
    bool add(const std::vector<T> &v)
    {
        auto w = reduce(v);
        std::size_t p = 0;
        while (p < dim_ && is_zero(w[p])) {
            ++p;
        }
        if (p == dim_) {
            return false;
        }
        T inv = T(1) / w[p];
        for (auto &x : w) {
            if (!is_zero(x)) {
                x = x * inv;
            }
        }
        rows_.push_back(std::move(w));
        piv_.push_back(p);
        return true;
    }

    void add_columns(const Matrix<T> &m)
    {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            add(m.column(j));
        }
    }

private:
    std::size_t dim_;
    std::vector<std::vector<T>> rows_;
    std::vector<std::size_t> piv_;
};

// Maximal linearly independent subset of columns, in order.
template <typename T>
Matrix<T> column_basis(const Matrix<T> &a)
{
    SpanBasis<T> sb(a.rows());
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        if (sb.add(a.column(j))) {
            keep.push_back(j);
        }
    }
    return select_columns(a, keep);
}

template <typename T>
bool span_contains(const Matrix<T> &span, const Matrix<T> &v)
{
    SpanBasis<T> sb(span.rows());
    sb.add_columns(span);
    for (std::size_t j = 0; j < v.cols(); ++j) {
        if (!sb.contains(v.column(j))) {
            return false;
        }
    }
    return true;
}

template <typename T>
bool subspace_equal(const Matrix<T> &a, const Matrix<T> &b)
{
    return span_contains(a, b) && span_contains(b, a);
}

template <typename T>
Matrix<T> intersection(const Matrix<T> &a, const Matrix<T> &b)
{
    if (a.cols() == 0 || b.cols() == 0) {
        return Matrix<T>(a.rows(), 0);
    }
    // Solve a x = b y.
    Matrix<T> k = nullspace(hstack(a, -b));
    Matrix<T> top = k.block(0, 0, a.cols(), k.cols());
    return column_basis(a * top);
}

} // namespace gcb

#endif
