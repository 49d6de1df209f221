#ifndef GCBRANE_LINEAR_GCA_HPP
#define GCBRANE_LINEAR_GCA_HPP

#include <optional>
#include <string>
#include <vector>

#include <gcbrane/matrix.hpp>

// Linear algebra of V + V*. Vectors of V + V* are column vectors of length
// 2n: entries [0, n) are the V part, entries [n, 2n) the V* part.
namespace gcb::linear
{

// <X+xi, Y+eta> = (xi(Y) + eta(X)) / 2 as a 2n x 2n matrix.
QMatrix pairing_matrix(std::size_t n);
Rational pairing(const QMatrix &u, const QMatrix &v);

// e^B = [[1,0],[B,1]].
QMatrix b_field_matrix(const QMatrix &B);

struct LinearGCStructure {
    QMatrix op;

    std::size_t n() const { return op.rows() / 2; }
    QMatrix upper_left() const { return op.block(0, 0, n(), n()); }
    QMatrix upper_right() const { return op.block(0, n(), n(), n()); }
    QMatrix lower_left() const { return op.block(n(), 0, n(), n()); }
    QMatrix lower_right() const { return op.block(n(), n(), n(), n()); }
};

// The real Poisson bivector P = a o J restricted to V*.
QMatrix real_poisson(const LinearGCStructure &gc);

struct GCReport {
    bool squares_to_minus_one = false;
    bool orthogonal = false;
    bool poisson_antisymmetric = false;
    std::string witness;

    bool ok() const { return squares_to_minus_one && orthogonal && poisson_antisymmetric; }
};

GCReport check_gc(const LinearGCStructure &gc);

LinearGCStructure make_symplectic_gc(const QMatrix &omega);
LinearGCStructure make_complex_gc(const QMatrix &I);
LinearGCStructure make_complex_poisson_gc(const QMatrix &I, const QMatrix &P);
LinearGCStructure b_transform(const LinearGCStructure &gc, const QMatrix &B);
// Conjugation by an arbitrary matrix A: A J A^{-1}.
LinearGCStructure conjugate(const LinearGCStructure &gc, const QMatrix &A);

struct LinearBrane {
    QMatrix S;   // n x dim S, columns span S
    QMatrix tau; // 2n x n, columns span tau
    std::optional<QMatrix> F;
};

// N*S as 2n-vectors (zero V part).
QMatrix conormal(const QMatrix &S, std::size_t n);

// tau = { X + xi : X in S, xi|_S = F(X) }, F given in the basis of S.
LinearBrane brane_tangent_from_F(const QMatrix &S, const QMatrix &F);
LinearBrane lagrangian_tau(const LinearGCStructure &gc, const QMatrix &S);

struct BraneReport {
    bool maximal_isotropic = false;
    bool invariant = false;
    bool anchor_is_S = false;
    bool conormal_part = false;
    bool coisotropic = false;
    std::string witness;

    bool ok() const
    {
        return maximal_isotropic && invariant && anchor_is_S && conormal_part && coisotropic;
    }
};

BraneReport check_linear_brane(const LinearGCStructure &gc, const LinearBrane &brane);

struct LinearSplitting {
    QMatrix U;   // 2n x n, the graph of Bs
    QMatrix Bs;  // antisymmetric, U = { X + Bs X }
    QMatrix I;   // complex structure on V
    QMatrix U_N;
    QMatrix U_P;
    QMatrix U_S;
};

struct SplitReport {
    bool U_isotropic = false;
    bool U_invariant = false;
    bool U_covers_V = false;
    bool block_form = false;
    bool I_complex = false;
    bool S_complex = false;
    bool tau_split = false;
    std::string witness;

    bool ok() const
    {
        return U_isotropic && U_invariant && U_covers_V && block_form && I_complex && S_complex
               && tau_split;
    }
};

LinearSplitting split_linear_brane(const LinearGCStructure &gc, const LinearBrane &brane);
SplitReport verify_splitting(const LinearGCStructure &gc, const LinearBrane &brane,
                             const LinearSplitting &split);

// Greedy J-invariant complement of `sub` inside the J-invariant `ambient`,
// adding pairs {c, Jc} in column order.
QMatrix invariant_complement(const QMatrix &J, const QMatrix &ambient, const QMatrix &sub);

} // namespace gcb::linear

#endif
