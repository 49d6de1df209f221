#ifndef GCBRANE_DBAR_HOMOTOPY_HPP
#define GCBRANE_DBAR_HOMOTOPY_HPP

#include <cstddef>

#include <gcbrane/tensor.hpp>

namespace gcb::jet
{

// Coordinate-ordered homotopy operators. S is the span of the first k coordinates
// of the tensor's context; coordinate order is the index order.

// Components whose lowest form index is j, with that dzbar_j removed.
MixedTensor pi_j(const MixedTensor &theta, int j);

// Right inverse of d/dzbar_i: raises the zbar_i exponent. Terms pushed past the
// truncation order are dropped and counted in *overflow when given.
JetFunction antiderivative_T(const JetFunction &f, int i, std::size_t *overflow = nullptr);
// Monomials free of zbar_i.
JetFunction hol_projection_H(const JetFunction &f, int i);

// sum_j T_j H_0 ... H_{j-1} pi_j, coefficientwise.
MixedTensor Q(const MixedTensor &theta, std::size_t *overflow = nullptr);
// Restrict to S and extend constantly in the normal directions.
MixedTensor stretch_s(const MixedTensor &theta);
// Q - s Q + Q s.
MixedTensor P(const MixedTensor &theta, std::size_t *overflow = nullptr);

} // namespace gcb::jet

#endif
