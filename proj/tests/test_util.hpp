#ifndef GCBRANE_TEST_UTIL_HPP
#define GCBRANE_TEST_UTIL_HPP

#include <initializer_list>
#include <vector>

#include <gcbrane/jet.hpp>
#include <gcbrane/matrix.hpp>
#include <gcbrane/tensor.hpp>

namespace gcb::test
{

inline QMatrix qmat(std::initializer_list<std::initializer_list<long>> rows)
{
    std::vector<std::vector<Rational>> r;
    for (const auto &row : rows) {
        std::vector<Rational> v;
        for (long x : row) {
            v.emplace_back(x);
        }
        r.push_back(v);
    }
    return QMatrix::from_rows(r);
}

// Canonical pairing (xi(Y) + eta(X)) / 2, written out independently of the library.
inline QMatrix pairing_oracle(std::size_t n)
{
    QMatrix g(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        g(i, n + i) = Rational(1, 2);
        g(n + i, i) = Rational(1, 2);
    }
    return g;
}

// [[1, 0], [B, 1]].
inline QMatrix shear(const QMatrix &B)
{
    std::size_t n = B.rows();
    QMatrix e = QMatrix::identity(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            e(n + i, j) = B(i, j);
        }
    }
    return e;
}

inline QMatrix minus_identity(std::size_t n)
{
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = Rational(-1);
    }
    return m;
}

// Columns of S stacked over zeros.
inline QMatrix lift_to_sum(const QMatrix &S)
{
    return vstack(S, QMatrix(S.rows(), S.cols()));
}

// Annihilator of span(S) as covectors, stacked under zeros.
inline QMatrix conormal_oracle(const QMatrix &S)
{
    QMatrix ann = nullspace(S.transpose());
    return vstack(QMatrix(S.rows(), ann.cols()), ann);
}

inline jet::JetContext ctx(int n, int k, int N)
{
    return jet::JetContext{n, k, N, Rational(1)};
}

inline jet::JetFunction mono(int n, int N, const std::vector<int> &z, const std::vector<int> &zb,
                             const Gauss &c = Gauss(1))
{
    return jet::JetFunction::monomial(n, N, jet::mono_make(z, zb, n), c);
}

} // namespace gcb::test

#endif
