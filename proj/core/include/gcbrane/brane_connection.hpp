#ifndef GCBRANE_BRANE_CONNECTION_HPP
#define GCBRANE_BRANE_CONNECTION_HPP

#include <string>
#include <vector>

#include <gcbrane/tensor.hpp>

namespace gcb::jet
{

// Square matrix of jets.
using JetMatrix = std::vector<std::vector<JetFunction>>;

JetMatrix jet_identity(int r, int n, int N);
JetMatrix jet_zero(int r, int n, int N);
JetMatrix operator*(const JetMatrix &a, const JetMatrix &b);
JetMatrix operator+(const JetMatrix &a, const JetMatrix &b);
JetMatrix operator-(const JetMatrix &a, const JetMatrix &b);
JetMatrix commutator(const JetMatrix &a, const JetMatrix &b);
JetMatrix derivative(const JetMatrix &a, int slot);
// Entrywise X(f) for X = sum_d Y[d] d/dz_d.
JetMatrix apply_holomorphic_vector(const std::vector<JetFunction> &Y, const JetMatrix &a);
JetMatrix truncated(const JetMatrix &a, int degree);
bool is_zero(const JetMatrix &a);
// Inverse of a matrix whose constant part is invertible.
JetMatrix jet_inverse(const JetMatrix &a);

// Connection along l = T_{0,1}S + (1 + pi) N*_{1,0}S on a rank-r bundle over S = C^k.
// entries[c] for c < k is the matrix of nabla_{d/dzbar_c} - d/dzbar_c; entries[a] for
// k <= a < n is the matrix of nabla_{(1+pi)dz_a} minus its anchor.
struct RawBraneConnection {
    JetContext ctx;
    int rank = 1;
    std::vector<JetMatrix> entries;
    // Holomorphic Poisson bivector in normal form (bidegree (2,0)).
    MixedTensor pi;
};

struct BraneConnection {
    int rank = 1;
    std::vector<JetMatrix> nabla_prime;
    std::vector<JetMatrix> nabla_doubleprime;
    MixedTensor pi;
};

struct BraneConnectionReport {
    bool holomorphic = false;
    bool anticommute = false;
    bool poisson_module = false;
    std::string witness;

    bool ok() const { return holomorphic && anticommute && poisson_module; }
};

// Anchor of (1 + pi) dz_a restricted to S: sum_{d < k} pi^{ad}|_S d/dz_d.
std::vector<JetFunction> brane_anchor(const MixedTensor &pi, int a);

// Splits and certifies: (0,2) curvature, mixed curvature and Gamma_pi curvature vanish
// to degree N-1. Throws PreconditionError when pi is not holomorphic and coisotropic
// or the data do not live on S.
BraneConnection split_brane_connection(const RawBraneConnection &conn,
                                       BraneConnectionReport &report);

} // namespace gcb::jet

#endif
