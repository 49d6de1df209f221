#ifndef GCBRANE_GENERATORS_HPP
#define GCBRANE_GENERATORS_HPP

#include <cstdint>
#include <random>

#include <gcbrane/brane_connection.hpp>
#include <gcbrane/courant.hpp>
#include <gcbrane/jet.hpp>
#include <gcbrane/linear_gca.hpp>
#include <gcbrane/tensor.hpp>

// Seeded random instance generators shared by the CLI, tests and benchmarks.
namespace gcb::gen
{

using Rng = std::mt19937_64;

// Uniform rational p/q with |p| <= num_bound, 1 <= q <= den_bound.
Rational random_rational(Rng &rng, int num_bound = 3, int den_bound = 2);
Gauss random_gauss(Rng &rng, int num_bound = 3, int den_bound = 2);
int random_int(Rng &rng, int lo, int hi);

QMatrix random_invertible(Rng &rng, std::size_t n);
// Integer matrix with integer inverse (product of unit triangular factors).
QMatrix random_unimodular(Rng &rng, std::size_t n);
QMatrix random_antisymmetric(Rng &rng, std::size_t n);

// Standard complex structure on R^{2m} with coordinates (x1, y1, x2, y2, ...).
QMatrix standard_complex_structure(std::size_t m);

struct LinearInstance {
    linear::LinearGCStructure gc;
    linear::LinearBrane brane;
};

// Holomorphic Poisson model on C^m with brane C^k, tau = S + N*S, then moved
// by a random B-transform and a random linear change of V.
LinearInstance random_linear_instance(Rng &rng, std::size_t m, std::size_t k);

// Monomial of total degree in [lo, hi] in n complex variables.
jet::Monomial random_monomial(Rng &rng, int n, int lo, int hi);
// Sum of `terms` random monomials with degrees in [lo, hi].
jet::JetFunction random_jet(Rng &rng, int n, int N, int terms, int lo, int hi);
// Random word with p vector and q form indices.
jet::Word random_word(Rng &rng, int n, int p, int q);
// Tensor of bidegree (p, q) with `comps` random components.
jet::MixedTensor random_tensor(Rng &rng, const jet::JetContext &ctx, int p, int q, int comps,
                               int terms, int lo, int hi);

// Realified L-bar field of order >= lo whose restriction to S lies in tau:
// d/dz_a components with a >= k and dzbar_b components with b < k vanish on S.
jet::GeneralizedVectorField random_brane_tangent_field(Rng &rng, const jet::JetContext &ctx,
                                                       int lo, int hi);

// f(z_1) d/dz_1 ^ d/dz_2, plus h(z_n) d/dz_{n-1} ^ d/dz_n when n >= 3 and k <= n - 2,
// with f(0) = h(0) = 0 and h'(0) != 0. Poisson, and S = C^k is coisotropic. Requires n >= 2, k >= 1.
jet::MixedTensor random_holomorphic_poisson(Rng &rng, const jet::JetContext &ctx);

// Random eps with bidegree parts of degree [lo, hi], made brane compatible by multiplying
// the coefficients that must vanish on S by a normal variable. Not integrable in general.
jet::Deformation random_compatible_deformation(Rng &rng, const jet::JetContext &ctx, int lo, int hi);

struct RoundTrip {
    jet::MixedTensor pi;
    jet::GeneralizedVectorField W;
    jet::Deformation eps;
};

// eps = Phi_{delta W} (delta pi): integrable, brane compatible, normal form known.
RoundTrip random_round_trip(Rng &rng, const jet::JetContext &ctx,
                            const Rational &delta = Rational(1));
// Same family member with fixed pi and W.
jet::Deformation round_trip_member(const jet::MixedTensor &pi, const jet::GeneralizedVectorField &W,
                                   const Rational &delta);

// Gauge transform by g of a constant flat connection: A_c = g^{-1} dbar_c g,
// Theta_a = g^{-1} C_a g + g^{-1} Y_a(g), with [C_a, C_b] = sum_c d_c pi^{ab}(0) C_c.
jet::RawBraneConnection random_flat_connection(Rng &rng, const jet::JetContext &ctx, int rank);

enum class Curvature { F, G, K };
// Adds a term that makes the named curvature nonzero. F needs k >= 2; K needs the
// h-term of random_holomorphic_poisson.
jet::RawBraneConnection inject_curvature(const jet::RawBraneConnection &conn, Curvature which);

} // namespace gcb::gen

#endif
