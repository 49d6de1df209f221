#ifndef GCBRANE_NORMALIZER_HPP
#define GCBRANE_NORMALIZER_HPP

#include <string>
#include <vector>

#include <gcbrane/gen_flow.hpp>
#include <gcbrane/tensor.hpp>

namespace gcb::jet
{

struct NormalizationParams {
    int max_iterations = 20;
    // Required vanishing order of eps11 + eps02.
    int target_order = 6;
    std::vector<Rational> delta_schedule{Rational(1, 2), Rational(1, 4), Rational(1, 8),
                                         Rational(1, 16)};
};

// One CSV row.
struct IterationRecord {
    int iteration = 0;
    // -1 when eps11 + eps02 vanishes identically.
    int ord_eps11_02 = -1;
    Rational norm20;
    Rational norm11;
    Rational norm02;
    Rational mc_residual_norm;
    bool S_preserved = true;
    bool tau_preserved = true;
};

struct NormalizationReport {
    std::vector<IterationRecord> rows;
    bool converged = false;
    Deformation final_eps;
    GeneralizedFlow flow;

    // True when every row kept S and tau.
    bool brane_preserved() const;
};

// Vanishing order of eps11 + eps02, -1 for zero.
int normal_form_defect_order(const Deformation &eps);
// Defect order is at least `order` (a zero defect counts).
bool reached_order(const Deformation &eps, int order);

// V(eps) = P([eps20, P eps02] - eps11 - eps02), realified. Requires brane compatibility.
GeneralizedVectorField homotopy_field(const Deformation &eps);
// Time-1 flow of V(eps) applied to eps; the flow used is stored in *used when given.
Deformation normalize_step(const Deformation &eps, GeneralizedFlow *used = nullptr);
// Rejects non-integrable or incompatible input with PreconditionError.
NormalizationReport run_normalization(const Deformation &eps, const NormalizationParams &params);

// Pullback under z -> t z with tensor weights: degree d in bidegree (p, q) scales by t^{d+q-p}.
Deformation zoom(const Deformation &eps, const Rational &t);
// (s eps20, eps11, eps02 / s).
Deformation cotangent_scale(const Deformation &eps, const Rational &s);

// Zoom by t = u^2 followed by cotangent scaling with s = t^{5/2} = u^5.
struct ScalingSchedule {
    Rational u = 1;
    int alpha = -1;
    int beta = -1;
    int gamma = -1;

    Rational t() const { return u * u; }
    Rational s() const;
    static ScalingSchedule for_deformation(const Deformation &eps, const Rational &u);
    Deformation apply(const Deformation &eps) const;
    // Predicted leading norm factors for eps20, eps11, eps02 (exponents of u):
    // 2(alpha-2)+5, 2 beta, 2(gamma+2)-5.
    std::vector<int> u_exponents() const;
};

} // namespace gcb::jet

#endif
