#ifndef GCBRANE_GEN_FLOW_HPP
#define GCBRANE_GEN_FLOW_HPP

#include <string>
#include <vector>

#include <gcbrane/courant.hpp>
#include <gcbrane/tensor.hpp>

namespace gcb::jet
{

// Generalized diffeomorphism acting on sections as phi_* after e^B.
// phi[s] is the pullback of the coordinate x_s, i.e. x_s o phi.
struct GeneralizedFlow {
    JetContext ctx;
    // Time-1 generators, first applied first. Empty for flows built from (phi, B) alone.
    std::vector<GeneralizedVectorField> generators;
    // False once the flow is no longer determined by its generator list.
    bool generated = true;
    SlotVector phi;
    SlotVector phi_inv;
    TwoForm B;

    static GeneralizedFlow identity(const JetContext &ctx);
    bool is_identity() const;
};

// Time-t flow of V as a truncated Lie series. X must vanish to order >= 2.
GeneralizedFlow flow(const GeneralizedVectorField &V, const Rational &t);
// second o first: (phi2 o phi1, B1 + phi1^* B2).
GeneralizedFlow compose(const GeneralizedFlow &second, const GeneralizedFlow &first);

// Pullback of a 2-form along phi.
TwoForm pullback(const TwoForm &w, const SlotVector &phi);

// exp(-ad_V) on one section (Dorfman bracket).
GeneralizedVectorField lie_series_action(const GeneralizedVectorField &V,
                                         const GeneralizedVectorField &section);
// phi_* e^B on one section.
GeneralizedVectorField explicit_action(const GeneralizedFlow &f,
                                       const GeneralizedVectorField &section);

// Frame {d/dzbar_c + eps(d/dzbar_c), dz_c + eps(dz_c)} of L_eps: entries 0..n-1 come from
// d/dzbar_c, entries n..2n-1 from dz_c.
std::vector<GeneralizedVectorField> dirac_frame(const Deformation &eps);
// Solves the graph condition for a transformed frame. Throws PreconditionError
// ("graph") if the L-part is not invertible at the origin.
Deformation extract_deformation(const JetContext &ctx,
                                const std::vector<GeneralizedVectorField> &frame);

// Transforms L_eps through each generator's Lie series.
Deformation act_on_deformation(const GeneralizedFlow &f, const Deformation &eps);
// Same through the explicit (phi, B) pair.
Deformation act_on_deformation_explicit(const GeneralizedFlow &f, const Deformation &eps);

// dbar V + [eps, V] for the L-bar part of V, split by bidegree.
Deformation infinitesimal_action(const GeneralizedVectorField &V, const Deformation &eps);

struct BraneFlowReport {
    bool ideal_preserved = false;
    bool tau_preserved = false;
    std::string witness;

    bool ok() const { return ideal_preserved && tau_preserved; }
};

// X tangent to S and xi conormal to S along S.
bool is_brane_tangent(const GeneralizedVectorField &V);
// phi maps the ideal of S into itself and B pulls back to zero on S.
BraneFlowReport flow_brane_check(const GeneralizedFlow &f);

} // namespace gcb::jet

#endif
