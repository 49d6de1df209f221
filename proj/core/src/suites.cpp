#include <gcbrane/suites.hpp>

#include <bit>
#include <functional>
#include <stdexcept>

#include <json.hpp>

#include <gcbrane/dbar_homotopy.hpp>
#include <gcbrane/gen_flow.hpp>
#include <gcbrane/generators.hpp>
#include <gcbrane/normalizer.hpp>
#include <gcbrane/serialize.hpp>

namespace gcb::suites
{

using nlohmann::ordered_json;
using namespace gcb::jet;
using gen::Rng;
using gen::random_int;

namespace
{

struct Outcome {
    bool pass = true;
    std::string reason;
    std::string witness;
};

Outcome fail(std::string reason, std::string witness)
{
    return {false, std::move(reason), std::move(witness)};
}

void run_cases(SuiteReport &r, int count, const std::function<Outcome(int)> &one)
{
    r.count = count;
    for (int i = 0; i < count; ++i) {
        Outcome o = one(i);
        if (o.pass) {
            ++r.passed;
        } else if (r.first_failure < 0) {
            r.first_failure = i;
            r.failure_reason = o.reason;
            r.counterexample = o.witness;
        }
    }
}

JetFunction normal_variable(Rng &rng, const JetContext &ctx)
{
    int a = random_int(rng, ctx.k, ctx.n - 1);
    return JetFunction::variable(ctx.n, ctx.N, random_int(rng, 0, 1) ? ctx.n + a : a);
}

// Multiplies the coefficients selected by `must_vanish` by a normal variable.
MixedTensor force_vanishing(Rng &rng, const MixedTensor &t,
                            const std::function<bool(Word)> &must_vanish)
{
    MixedTensor out(t.context());
    for (const auto &[w, f] : t.components()) {
        out.add(w, must_vanish(w) ? (f * normal_variable(rng, t.context())) : f);
    }
    return out;
}

int low_forms(Word w, int k) { return std::popcount(w & ((Word{1} << k) - 1)); }
int high_vectors(Word w, int n, int k) { return std::popcount((w >> n) >> k); }

MixedTensor holomorphic_part(const MixedTensor &t)
{
    return t.map_coefficients([&](const JetFunction &f) {
        JetFunction g = f;
        for (int i = 0; i < f.n(); ++i) {
            g = hol_projection_H(g, i);
        }
        return g;
    });
}

std::string tensors_json(const std::vector<std::pair<std::string, MixedTensor>> &ts)
{
    ordered_json j;
    for (const auto &[name, t] : ts) {
        j[name] = ordered_json::parse(io::tensor_to_json(t));
    }
    return j.dump();
}

JetContext random_context(Rng &rng, int n_lo, int n_hi, int k_lo_offset, int k_hi_offset, int N)
{
    JetContext ctx;
    ctx.n = random_int(rng, n_lo, n_hi);
    ctx.k = random_int(rng, k_lo_offset, ctx.n + k_hi_offset);
    ctx.N = N;
    return ctx;
}

// Q and P homotopy identities on random tensors of every bidegree, n <= 3.
void homotopy_identity(SuiteReport &r, const SuiteOptions &o)
{
    Rng rng(o.seed);
    run_cases(r, o.count, [&](int) {
        JetContext ctx = random_context(rng, 1, 3, 0, 0, o.N);
        int p = random_int(rng, 0, ctx.n);
        int q = random_int(rng, 0, ctx.n);
        MixedTensor theta = gen::random_tensor(rng, ctx, p, q, random_int(rng, 1, 3), 2, 0, o.N - 1);
        int top = o.N - 1;
        MixedTensor want = q == 0 ? theta - holomorphic_part(theta) : theta;
        MixedTensor lq = Q(dbar(theta)) + dbar(Q(theta));
        MixedTensor lp = P(dbar(theta)) + dbar(P(theta));
        if (lq.truncated(top) != want.truncated(top)) {
            return fail("(Q dbar + dbar Q) theta != theta", tensors_json({{"theta", theta}}));
        }
        if (lp.truncated(top) != want.truncated(top)) {
            return fail("(P dbar + dbar P) theta != theta", tensors_json({{"theta", theta}}));
        }
        return Outcome{};
    });
}

// Random S-isotropic (0,q) form, q >= 2.
MixedTensor random_isotropic_form(Rng &rng, const JetContext &ctx, int N)
{
    int q = random_int(rng, 2, ctx.n);
    MixedTensor theta = gen::random_tensor(rng, ctx, 0, q, random_int(rng, 1, 3), 2, 0, N - 2);
    return force_vanishing(rng, theta, [&](Word w) { return low_forms(w, ctx.k) == q; });
}

void q_isotropic(SuiteReport &r, const SuiteOptions &o)
{
    Rng rng(o.seed);
    run_cases(r, o.count, [&](int) {
        JetContext ctx = random_context(rng, 2, 3, 1, -1, o.N);
        MixedTensor theta = random_isotropic_form(rng, ctx, o.N);
        if (!is_S_isotropic(theta)) {
            return fail("generator produced a non-isotropic input", tensors_json({{"theta", theta}}));
        }
        MixedTensor qt = Q(theta);
        if (!is_S_isotropic(qt)) {
            return fail("Q theta is not S-isotropic", tensors_json({{"theta", theta}, {"Q_theta", qt}}));
        }
        return Outcome{};
    });
}

void p_isotropic(SuiteReport &r, const SuiteOptions &o)
{
    Rng rng(o.seed);
    run_cases(r, o.count, [&](int) {
        JetContext ctx = random_context(rng, 2, 3, 1, -1, o.N);
        MixedTensor theta = random_isotropic_form(rng, ctx, o.N);
        MixedTensor pt = P(theta), qt = Q(theta);
        if (pt != qt) {
            return fail("P theta != Q theta", tensors_json({{"theta", theta}, {"P_minus_Q", pt - qt}}));
        }
        return Outcome{};
    });
}

// w_n = z_n + z_1: moves S = C^k off the coordinate subspaces.
GMatrix tilt(int n, int sign)
{
    GMatrix M = GMatrix::identity(n);
    M(n - 1, 0) = Gauss(sign);
    return M;
}

void p_tangent(SuiteReport &r, const SuiteOptions &o)
{
    Rng rng(o.seed);
    run_cases(r, o.count, [&](int) {
        JetContext ctx = random_context(rng, 2, 3, 1, -1, o.N);
        int n = ctx.n, k = ctx.k;
        int p = random_int(rng, 1, n);
        MixedTensor theta = gen::random_tensor(rng, ctx, p, 1, random_int(rng, 1, 3), 2, 0, o.N - 2);
        // T_{0,1}S must land in wedge^p TS.
        theta = force_vanishing(rng, theta, [&](Word w) {
            return low_forms(w, k) == 1 && high_vectors(w, n, k) > 0;
        });
        MixedTensor pt = P(theta);
        Outcome out;
        if (!is_multitangent_on_S(pt)) {
            out = fail("P theta is not multitangent to S", tensors_json({{"theta", theta}, {"P_theta", pt}}));
        }
        // Negative control: P computed in coordinates where S is not a coordinate subspace.
        MixedTensor moved = linear_pushforward(theta, tilt(n, 1));
        MixedTensor back = linear_pushforward(P(moved), tilt(n, -1));
        ++r.control_cases;
        if (!is_multitangent_on_S(back)) {
            if (r.control_violations++ == 0) {
                r.control_example = tensors_json({{"theta", theta}});
            }
        }
        return out;
    });
}

void v_tangent(SuiteReport &r, const SuiteOptions &o)
{
    Rng rng(o.seed);
    run_cases(r, o.count, [&](int) {
        JetContext ctx = random_context(rng, 2, 3, 1, 0, o.N);
        Deformation eps = gen::random_compatible_deformation(rng, ctx, 1, 3);
        GeneralizedVectorField V = homotopy_field(eps);
        if (!is_brane_tangent(V)) {
            return fail("V(eps) restricted to S is not in tau", io::deformation_to_json(eps));
        }
        return Outcome{};
    });
}

void flow_brane(SuiteReport &r, const SuiteOptions &o)
{
    Rng rng(o.seed);
    run_cases(r, o.count, [&](int) {
        JetContext ctx = random_context(rng, 2, 3, 1, -1, o.N);
        GeneralizedVectorField W = gen::random_brane_tangent_field(rng, ctx, 2, 3);
        BraneFlowReport rep = flow_brane_check(flow(W, 1));
        if (!rep.ok()) {
            return fail(rep.witness, io::field_to_json(W));
        }
        return Outcome{};
    });
}

int total_degree(const MixedTensor &t)
{
    for (const auto &[w, f] : t.components()) {
        return std::popcount(w);
    }
    return 0;
}

void bracket_jacobi(SuiteReport &r, const SuiteOptions &o)
{
    Rng rng(o.seed);
    run_cases(r, o.count, [&](int) {
        JetContext ctx = random_context(rng, 1, 3, 0, 0, o.N);
        auto pick = [&] {
            int p = random_int(rng, 0, ctx.n);
            int q = random_int(rng, 0, std::min(ctx.n, 2));
            return gen::random_tensor(rng, ctx, p, q, random_int(rng, 1, 2), 2, 0, 2);
        };
        MixedTensor A = pick(), B = pick(), C = pick();
        int a = total_degree(A), b = total_degree(B);
        auto sgn = [](int e) { return e % 2 ? -1 : 1; };
        std::string wit = tensors_json({{"A", A}, {"B", B}, {"C", C}});
        int top = o.N - 2;
        MixedTensor ab = schouten_bracket(A, B);
        MixedTensor ba = schouten_bracket(B, A);
        if (ab.truncated(top) != ba.scaled(Rational(-sgn((a - 1) * (b - 1)))).truncated(top)) {
            return fail("graded antisymmetry", wit);
        }
        MixedTensor lhs = schouten_bracket(A, schouten_bracket(B, C));
        MixedTensor rhs = schouten_bracket(ab, C)
                          + schouten_bracket(B, schouten_bracket(A, C))
                                .scaled(Rational(sgn((a - 1) * (b - 1))));
        if (lhs.truncated(top) != rhs.truncated(top)) {
            return fail("graded Jacobi identity", wit);
        }
        MixedTensor d1 = dbar(ab);
        MixedTensor d2 = schouten_bracket(dbar(A), B)
                         + schouten_bracket(A, dbar(B)).scaled(Rational(sgn(a - 1)));
        if (d1.truncated(top) != d2.truncated(top)) {
            return fail("dbar is not a derivation of the bracket", wit);
        }
        return Outcome{};
    });
}

void scaling_laws(SuiteReport &r, const SuiteOptions &o)
{
    Rng rng(o.seed);
    const std::vector<Rational> us{Rational(1, 2), Rational(2, 3), Rational(3, 2), Rational(2),
                                   Rational(1, 3)};
    run_cases(r, o.count, [&](int) {
        JetContext ctx = random_context(rng, 1, 3, 0, 0, o.N);
        // Homogeneous components: degree equals vanishing order.
        int al = random_int(rng, 0, 2), be = random_int(rng, 0, 2), ga = random_int(rng, 0, 2);
        Deformation eps(ctx);
        eps.eps20 = gen::random_tensor(rng, ctx, 2, 0, 2, 2, al, al);
        eps.eps11 = gen::random_tensor(rng, ctx, 1, 1, 2, 2, be, be);
        eps.eps02 = gen::random_tensor(rng, ctx, 0, 2, 2, 2, ga, ga);
        Rational u = us[random_int(rng, 0, static_cast<int>(us.size()) - 1)];
        std::string wit = io::deformation_to_json(eps);

        ScalingSchedule sch = ScalingSchedule::for_deformation(eps, u);
        Deformation scaled = sch.apply(eps);
        std::vector<int> e = sch.u_exponents();
        const MixedTensor *before[3] = {&eps.eps20, &eps.eps11, &eps.eps02};
        const MixedTensor *after[3] = {&scaled.eps20, &scaled.eps11, &scaled.eps02};
        for (int c = 0; c < 3; ++c) {
            if (before[c]->is_zero()) {
                if (!after[c]->is_zero()) {
                    return fail("zero component became nonzero", wit);
                }
                continue;
            }
            Rational f = rational_pow(u, e[c]);
            if (*after[c] != before[c]->scaled(f)) {
                return fail("component does not scale by u^" + std::to_string(e[c]), wit);
            }
            if (after[c]->majorant_norm(ctx.r) != f * before[c]->majorant_norm(ctx.r)) {
                return fail("norm does not scale by u^" + std::to_string(e[c]), wit);
            }
        }
        Rational t = u * u, s = rational_pow(u, 5);
        if (cotangent_scale(zoom(eps, t), s) != zoom(cotangent_scale(eps, s), t)) {
            return fail("zoom and cotangent scaling do not commute", wit);
        }
        if (zoom(eps, Rational(1)) != eps || cotangent_scale(eps, Rational(1)) != eps) {
            return fail("unit scaling is not the identity", wit);
        }
        MCResidual m0 = mc_residual(eps);
        MCResidual m1 = mc_residual(cotangent_scale(eps, s));
        if (m1.r30 != m0.r30.scaled(s * s) || m1.r21 != m0.r21.scaled(s) || m1.r12 != m0.r12
            || m1.r03 != m0.r03.scaled(Rational(1) / s)) {
            return fail("MC residual parts do not scale by single powers of s", wit);
        }
        return Outcome{};
    });
}

using SuiteFn = void (*)(SuiteReport &, const SuiteOptions &);

const std::vector<std::pair<std::string, SuiteFn>> &registry()
{
    static const std::vector<std::pair<std::string, SuiteFn>> r{
        {"homotopy-identity", homotopy_identity}, {"q-isotropic", q_isotropic},
        {"p-isotropic", p_isotropic},             {"p-tangent", p_tangent},
        {"v-tangent", v_tangent},                 {"flow-brane", flow_brane},
        {"bracket-jacobi", bracket_jacobi},       {"scaling-laws", scaling_laws}};
    return r;
}

} // namespace

const std::vector<std::string> &suite_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto &[name, fn] : registry()) {
            v.push_back(name);
        }
        return v;
    }();
    return names;
}

bool is_suite(const std::string &name)
{
    for (const auto &n : suite_names()) {
        if (n == name) {
            return true;
        }
    }
    return false;
}

SuiteReport run_suite(const std::string &name, const SuiteOptions &opts)
{
    for (const auto &[n, fn] : registry()) {
        if (n == name) {
            SuiteReport r;
            r.suite = name;
            r.seed = opts.seed;
            r.N = opts.N;
            fn(r, opts);
            return r;
        }
    }
    throw std::invalid_argument("unknown suite '" + name + "'");
}

std::string report_to_json(const SuiteReport &r)
{
    ordered_json j;
    j["suite"] = r.suite;
    j["seed"] = r.seed;
    j["N"] = r.N;
    j["count"] = r.count;
    j["passed"] = r.passed;
    j["ok"] = r.ok();
    if (r.first_failure >= 0) {
        j["first_failure"] = {{"case", r.first_failure},
                              {"reason", r.failure_reason},
                              {"input", ordered_json::parse(r.counterexample)}};
    } else {
        j["first_failure"] = nullptr;
    }
    if (r.control_cases > 0) {
        ordered_json c;
        c["description"] = "P applied after w_n = z_n + z_1, so S is not a coordinate subspace";
        c["cases"] = r.control_cases;
        c["violations"] = r.control_violations;
        c["example"] = r.control_example.empty() ? ordered_json(nullptr)
                                                 : ordered_json::parse(r.control_example);
        j["negative_control"] = c;
    }
    return j.dump(2) + "\n";
}

} // namespace gcb::suites
