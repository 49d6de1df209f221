#include <gcbrane/normalizer.hpp>

#include <gcbrane/dbar_homotopy.hpp>

namespace gcb::jet
{

bool NormalizationReport::brane_preserved() const
{
    for (const auto &r : rows) {
        if (!r.S_preserved || !r.tau_preserved) {
            return false;
        }
    }
    return true;
}

int normal_form_defect_order(const Deformation &eps)
{
    return (eps.eps11 + eps.eps02).vanishing_order();
}

bool reached_order(const Deformation &eps, int order)
{
    int d = normal_form_defect_order(eps);
    return d < 0 || d >= order;
}

GeneralizedVectorField homotopy_field(const Deformation &eps)
{
    BraneCompatReport rep = brane_compat_check(eps);
    if (!rep.ok()) {
        throw PreconditionError("brane_compat", rep.witness);
    }
    MixedTensor inner = schouten_bracket(eps.eps20, P(eps.eps02)) - eps.eps11 - eps.eps02;
    return GeneralizedVectorField::realify(P(inner));
}

Deformation normalize_step(const Deformation &eps, GeneralizedFlow *used)
{
    GeneralizedVectorField V = homotopy_field(eps);
    GeneralizedFlow f = flow(V, 1);
    Deformation out = f.generators.empty() ? eps : act_on_deformation(f, eps);
    if (used) {
        *used = std::move(f);
    }
    return out.truncated(eps.ctx.N);
}

namespace
{

IterationRecord record(int it, const Deformation &eps, const Rational &r)
{
    IterationRecord rec;
    rec.iteration = it;
    rec.ord_eps11_02 = normal_form_defect_order(eps);
    rec.norm20 = eps.eps20.majorant_norm(r);
    rec.norm11 = eps.eps11.majorant_norm(r);
    rec.norm02 = eps.eps02.majorant_norm(r);
    rec.mc_residual_norm = mc_residual(eps).majorant_norm(r);
    return rec;
}

} // namespace

NormalizationReport run_normalization(const Deformation &eps, const NormalizationParams &params)
{
    if (params.target_order > eps.ctx.N) {
        throw PreconditionError("target_order", "target order exceeds the truncation order");
    }
    BraneCompatReport rep = brane_compat_check(eps);
    if (!rep.ok()) {
        throw PreconditionError("brane_compat", rep.witness);
    }
    if (!mc_residual(eps).is_zero()) {
        throw PreconditionError("mc_residual", "input deformation is not integrable");
    }
    NormalizationReport report;
    report.flow = GeneralizedFlow::identity(eps.ctx);
    Rational r = eps.ctx.r;
    Deformation cur = eps;
    report.rows.push_back(record(0, cur, r));
    for (int it = 1; it <= params.max_iterations && !reached_order(cur, params.target_order);
         ++it) {
        GeneralizedVectorField V = homotopy_field(cur);
        bool tangent = is_brane_tangent(V);
        GeneralizedFlow f = flow(V, 1);
        BraneFlowReport fr = flow_brane_check(f);
        cur = act_on_deformation(f, cur).truncated(cur.ctx.N);
        report.flow = compose(f, report.flow);
        r = r * Rational(3, 4);
        IterationRecord rec = record(it, cur, r);
        rec.S_preserved = fr.ideal_preserved;
        rec.tau_preserved = tangent && fr.tau_preserved && brane_compat_check(cur).ok();
        report.rows.push_back(rec);
    }
    report.converged = reached_order(cur, params.target_order);
    report.final_eps = cur;
    return report;
}

Deformation zoom(const Deformation &eps, const Rational &t)
{
    int n = eps.ctx.n;
    auto scale_tensor = [&](const MixedTensor &m) {
        MixedTensor out(m.context());
        for (const auto &[w, f] : m.components()) {
            int weight = word_q(w, n) - word_p(w, n);
            JetFunction g(f.n(), f.order());
            for (const auto &[mono, c] : f.terms()) {
                g.add_term(mono, c * rational_pow(t, mono_degree(mono) + weight));
            }
            out.add(w, g);
        }
        return out;
    };
    Deformation out(eps.ctx);
    out.eps20 = scale_tensor(eps.eps20);
    out.eps11 = scale_tensor(eps.eps11);
    out.eps02 = scale_tensor(eps.eps02);
    return out;
}

Deformation cotangent_scale(const Deformation &eps, const Rational &s)
{
    if (sgn(s) <= 0) {
        throw PreconditionError("s", "cotangent scale must be positive");
    }
    Deformation out(eps.ctx);
    out.eps20 = eps.eps20.scaled(s);
    out.eps11 = eps.eps11;
    out.eps02 = eps.eps02.scaled(Rational(1) / s);
    return out;
}

Rational ScalingSchedule::s() const
{
    return rational_pow(u, 5);
}

ScalingSchedule ScalingSchedule::for_deformation(const Deformation &eps, const Rational &u)
{
    ScalingSchedule sch;
    sch.u = u;
    sch.alpha = eps.eps20.vanishing_order();
    sch.beta = eps.eps11.vanishing_order();
    sch.gamma = eps.eps02.vanishing_order();
    return sch;
}

Deformation ScalingSchedule::apply(const Deformation &eps) const
{
    return cotangent_scale(zoom(eps, t()), s());
}

std::vector<int> ScalingSchedule::u_exponents() const
{
    return {2 * (alpha - 2) + 5, 2 * beta, 2 * (gamma + 2) - 5};
}

} // namespace gcb::jet
