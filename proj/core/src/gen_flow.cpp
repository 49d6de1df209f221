#include <gcbrane/gen_flow.hpp>

#include <bit>
#include <sstream>
#include <stdexcept>

#include <gcbrane/matrix.hpp>

namespace gcb::jet
{

namespace
{

using JetMatrix = std::vector<std::vector<JetFunction>>;

SlotVector coordinates(const JetContext &ctx)
{
    SlotVector x;
    for (int s = 0; s < 2 * ctx.n; ++s) {
        x.push_back(JetFunction::variable(ctx.n, ctx.N, s));
    }
    return x;
}

SlotVector scaled(const SlotVector &v, const Gauss &c)
{
    SlotVector out;
    for (const auto &f : v) {
        out.push_back(f.scaled(c));
    }
    return out;
}

// Truncated exp(X) applied to f.
JetFunction lie_exponential(const SlotVector &X, const JetFunction &f, int N)
{
    JetFunction sum = f;
    JetFunction term = f;
    for (int k = 1; k <= N + 1 && !term.is_zero(); ++k) {
        term = apply_vector(X, term).scaled(Rational(1, k));
        sum += term;
    }
    return sum;
}

void require_unipotent(const GeneralizedVectorField &V)
{
    for (const auto &f : V.X) {
        int d = f.vanishing_order();
        if (d >= 0 && d < 2) {
            throw PreconditionError("flow", "vector part must vanish to order >= 2 at the origin");
        }
    }
}

// [V, sigma] with d xi of V precomputed.
GeneralizedVectorField dorfman(const GeneralizedVectorField &V, const TwoForm &dxi,
                               const GeneralizedVectorField &sigma)
{
    GeneralizedVectorField out(V.ctx);
    out.X = lie_bracket(V.X, sigma.X);
    SlotVector lx = lie_derivative_form(V.X, sigma.xi);
    SlotVector iy = contract(sigma.X, dxi);
    for (std::size_t s = 0; s < lx.size(); ++s) {
        out.xi[s] = lx[s] - iy[s];
    }
    return out;
}

GeneralizedVectorField lie_series(const GeneralizedVectorField &V, const TwoForm &dxi,
                                  const GeneralizedVectorField &section)
{
    GeneralizedVectorField sum = section;
    GeneralizedVectorField term = section;
    int N = V.ctx.N;
    for (int k = 1; k <= N + 2 && !term.is_zero(); ++k) {
        term = dorfman(V, dxi, term).scaled(Gauss(Rational(-1, k)));
        sum += term;
    }
    return sum;
}

JetMatrix multiply(const JetMatrix &a, const JetMatrix &b, int n, int N)
{
    std::size_t r = a.size(), m = b.size(), c = b.empty() ? 0 : b[0].size();
    JetMatrix out(r, std::vector<JetFunction>(c, JetFunction(n, N)));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t k = 0; k < m; ++k) {
            if (a[i][k].is_zero()) {
                continue;
            }
            for (std::size_t j = 0; j < c; ++j) {
                if (!b[k][j].is_zero()) {
                    out[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    return out;
}

} // namespace

GeneralizedFlow GeneralizedFlow::identity(const JetContext &ctx)
{
    GeneralizedFlow f;
    f.ctx = ctx;
    f.phi = coordinates(ctx);
    f.phi_inv = f.phi;
    f.B = TwoForm(ctx);
    return f;
}

bool GeneralizedFlow::is_identity() const
{
    return phi == coordinates(ctx) && phi_inv == phi && B.is_zero();
}

GeneralizedFlow flow(const GeneralizedVectorField &V, const Rational &t)
{
    require_unipotent(V);
    const JetContext &ctx = V.ctx;
    int N = ctx.N;
    GeneralizedFlow f = GeneralizedFlow::identity(ctx);
    if (V.is_zero() || sgn(t) == 0) {
        return f;
    }
    GeneralizedVectorField Vt = V.scaled(Gauss(t));
    f.generators.push_back(Vt);
    SlotVector x = coordinates(ctx);
    SlotVector minus = scaled(Vt.X, Gauss(-1));
    for (int s = 0; s < 2 * ctx.n; ++s) {
        f.phi[s] = lie_exponential(Vt.X, x[s], N);
        f.phi_inv[s] = lie_exponential(minus, x[s], N);
    }
    TwoForm w = exterior_d(ctx, Vt.xi);
    f.B = w;
    for (int k = 1; k <= N + 1 && !w.is_zero(); ++k) {
        w = lie_derivative(Vt.X, w).scaled(Rational(1, k + 1));
        f.B += w;
    }
    return f;
}

TwoForm pullback(const TwoForm &w, const SlotVector &phi)
{
    const JetContext &ctx = w.context();
    int m = 2 * ctx.n;
    JetMatrix dphi(m, std::vector<JetFunction>(m));
    for (int u = 0; u < m; ++u) {
        for (int s = 0; s < m; ++s) {
            dphi[u][s] = phi[u].derivative(s);
        }
    }
    TwoForm out(ctx);
    for (const auto &[key, f] : w.components()) {
        auto [u, v] = key;
        JetFunction g = compose(f, phi);
        for (int s = 0; s < m; ++s) {
            for (int t = s + 1; t < m; ++t) {
                JetFunction jac = dphi[u][s] * dphi[v][t] - dphi[v][s] * dphi[u][t];
                if (!jac.is_zero()) {
                    out.add(s, t, g * jac);
                }
            }
        }
    }
    return out;
}

GeneralizedFlow compose(const GeneralizedFlow &second, const GeneralizedFlow &first)
{
    GeneralizedFlow f;
    f.ctx = first.ctx;
    f.generated = first.generated && second.generated;
    if (f.generated) {
        f.generators = first.generators;
        f.generators.insert(f.generators.end(), second.generators.begin(),
                            second.generators.end());
    }
    int m = 2 * first.ctx.n;
    f.phi.resize(m);
    f.phi_inv.resize(m);
    for (int s = 0; s < m; ++s) {
        f.phi[s] = compose(second.phi[s], first.phi);
        f.phi_inv[s] = compose(first.phi_inv[s], second.phi_inv);
    }
    f.B = first.B;
    f.B += pullback(second.B, first.phi);
    return f;
}

GeneralizedVectorField lie_series_action(const GeneralizedVectorField &V,
                                         const GeneralizedVectorField &section)
{
    return lie_series(V, exterior_d(V.ctx, V.xi), section);
}

GeneralizedVectorField explicit_action(const GeneralizedFlow &f,
                                       const GeneralizedVectorField &section)
{
    const JetContext &ctx = f.ctx;
    int m = 2 * ctx.n;
    SlotVector eta = section.xi;
    SlotVector iy = contract(section.X, f.B);
    for (int s = 0; s < m; ++s) {
        eta[s] += iy[s];
    }
    GeneralizedVectorField out(ctx);
    for (int s = 0; s < m; ++s) {
        out.X[s] = compose(apply_vector(section.X, f.phi[s]), f.phi_inv);
    }
    for (int t = 0; t < m; ++t) {
        if (eta[t].is_zero()) {
            continue;
        }
        JetFunction e = compose(eta[t], f.phi_inv);
        for (int s = 0; s < m; ++s) {
            JetFunction d = f.phi_inv[t].derivative(s);
            if (!d.is_zero()) {
                out.xi[s] += e * d;
            }
        }
    }
    return out;
}

std::vector<GeneralizedVectorField> dirac_frame(const Deformation &eps)
{
    const JetContext &ctx = eps.ctx;
    int n = ctx.n;
    auto one = JetFunction::constant(n, ctx.N, Gauss(1));
    std::vector<GeneralizedVectorField> frame(2 * n, GeneralizedVectorField(ctx));
    for (int c = 0; c < n; ++c) {
        frame[c].X[n + c] = one;
        frame[n + c].xi[c] = one;
    }
    // sigma_{ab}: dzbar_a ^ dzbar_b; e_a gets sigma_{ab} dzbar_b, e_b gets -sigma_{ab} dzbar_a.
    for (const auto &[w, f] : eps.eps02.components()) {
        int a = std::countr_zero(w);
        int b = std::countr_zero(w & (w - 1));
        frame[a].xi[n + b] += f;
        frame[b].xi[n + a] -= f;
    }
    // mu_{ba}: dzbar_b ^ d/dz_a; e_b gets mu_{ba} d/dz_a, f_a gets -mu_{ba} dzbar_b.
    for (const auto &[w, f] : eps.eps11.components()) {
        int b = std::countr_zero(w);
        int a = std::countr_zero(w >> n);
        frame[b].X[a] += f;
        frame[n + a].xi[n + b] -= f;
    }
    // pi^{ab}: d/dz_a ^ d/dz_b; f_a gets pi^{ab} d/dz_b, f_b gets -pi^{ab} d/dz_a.
    for (const auto &[w, f] : eps.eps20.components()) {
        Word v = w >> n;
        int a = std::countr_zero(v);
        int b = std::countr_zero(v & (v - 1));
        frame[n + a].X[b] += f;
        frame[n + b].X[a] -= f;
    }
    return frame;
}

Deformation extract_deformation(const JetContext &ctx,
                                const std::vector<GeneralizedVectorField> &frame)
{
    int n = ctx.n;
    int N = ctx.N;
    int m = 2 * n;
    // Row i of A: d/dzbar_i (i < n) or dz_{i-n}; row r of C: d/dz_r (r < n) or dzbar_{r-n}.
    JetMatrix A(m, std::vector<JetFunction>(m)), C(m, std::vector<JetFunction>(m));
    for (int j = 0; j < m; ++j) {
        const auto &sec = frame[j];
        for (int i = 0; i < n; ++i) {
            A[i][j] = sec.X[n + i].with_order(N);
            A[n + i][j] = sec.xi[i].with_order(N);
            C[i][j] = sec.X[i].with_order(N);
            C[n + i][j] = sec.xi[n + i].with_order(N);
        }
    }
    GMatrix A0(m, m);
    JetMatrix A1 = A;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            A0(i, j) = A[i][j].coeff(0);
            A1[i][j] = A[i][j].degree_range(1, N);
        }
    }
    GMatrix A0inv;
    try {
        A0inv = inverse(A0);
    } catch (const std::domain_error &) {
        throw PreconditionError("graph", "transformed structure is not transverse to L-bar at the origin");
    }
    JetMatrix A0i(m, std::vector<JetFunction>(m));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            A0i[i][j] = JetFunction::constant(n, N, A0inv(i, j));
        }
    }
    // E A = C with A = A0 + A1: E = (C - E A1) A0^{-1}, iterated to a fixed point.
    JetMatrix E = multiply(C, A0i, n, N);
    for (int it = 0; it <= N + 1; ++it) {
        JetMatrix EA1 = multiply(E, A1, n, N);
        JetMatrix rhs = C;
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) {
                rhs[i][j] -= EA1[i][j];
            }
        }
        JetMatrix next = multiply(rhs, A0i, n, N);
        if (next == E) {
            break;
        }
        E = std::move(next);
    }
    Deformation eps(ctx);
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            eps.eps02.add(form_bit(n, a) | form_bit(n, b), E[n + b][a]);
            eps.eps20.add(vector_bit(n, a) | vector_bit(n, b), E[b][n + a]);
        }
        for (int b = 0; b < n; ++b) {
            eps.eps11.add(form_bit(n, b) | vector_bit(n, a), E[a][b]);
        }
    }
    return eps;
}

Deformation act_on_deformation(const GeneralizedFlow &f, const Deformation &eps)
{
    if (!f.generated) {
        return act_on_deformation_explicit(f, eps);
    }
    if (f.generators.empty()) {
        return eps;
    }
    auto frame = dirac_frame(eps);
    for (const auto &V : f.generators) {
        TwoForm dxi = exterior_d(V.ctx, V.xi);
        for (auto &sec : frame) {
            sec = lie_series(V, dxi, sec);
        }
    }
    return extract_deformation(eps.ctx, frame);
}

Deformation act_on_deformation_explicit(const GeneralizedFlow &f, const Deformation &eps)
{
    auto frame = dirac_frame(eps);
    for (auto &sec : frame) {
        sec = explicit_action(f, sec);
    }
    return extract_deformation(eps.ctx, frame);
}

Deformation infinitesimal_action(const GeneralizedVectorField &V, const Deformation &eps)
{
    MixedTensor v = V.lbar_part();
    MixedTensor inc = dbar(v) + schouten_bracket(eps.total(), v);
    return Deformation::from_total(inc.truncated(eps.ctx.N - 1));
}

bool is_brane_tangent(const GeneralizedVectorField &V)
{
    int n = V.ctx.n;
    int k = V.ctx.k;
    for (int a = 0; a < n; ++a) {
        const SlotVector &part = a >= k ? V.X : V.xi;
        if (!part[a].vanishes_on_first(k) || !part[n + a].vanishes_on_first(k)) {
            return false;
        }
    }
    return true;
}

BraneFlowReport flow_brane_check(const GeneralizedFlow &f)
{
    int n = f.ctx.n;
    int k = f.ctx.k;
    BraneFlowReport r;
    std::ostringstream wit;
    r.ideal_preserved = true;
    for (int a = k; a < n; ++a) {
        for (int s : {a, n + a}) {
            if (!f.phi[s].vanishes_on_first(k)) {
                r.ideal_preserved = false;
                wit << "phi^" << s << " = " << f.phi[s].restrict_to_first(k).to_string()
                    << " on S; ";
            }
        }
    }
    r.tau_preserved = true;
    auto tangent = [n, k](int s) { return (s < n ? s : s - n) < k; };
    for (const auto &[key, g] : f.B.components()) {
        if (tangent(key.first) && tangent(key.second) && !g.vanishes_on_first(k)) {
            r.tau_preserved = false;
            wit << "B(" << key.first << "," << key.second
                << ") = " << g.restrict_to_first(k).to_string() << " on S; ";
        }
    }
    r.witness = wit.str();
    return r;
}

} // namespace gcb::jet
