#include <gcbrane/courant.hpp>

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace gcb::jet
{

namespace
{

JetFunction zero(const JetContext &ctx)
{
    return JetFunction(ctx.n, ctx.N);
}

SlotVector zeros(const JetContext &ctx)
{
    return SlotVector(2 * ctx.n, zero(ctx));
}

int slot_count(const SlotVector &v)
{
    return static_cast<int>(v.size());
}

JetContext context_from(const SlotVector &v)
{
    JetContext c;
    c.n = static_cast<int>(v.size()) / 2;
    c.N = v.empty() ? 0 : v[0].order();
    return c;
}

} // namespace

TwoForm::TwoForm(const JetContext &ctx) : ctx_(ctx) {}

JetFunction TwoForm::get(int s, int t) const
{
    if (s == t) {
        return zero(ctx_);
    }
    auto it = comps_.find({std::min(s, t), std::max(s, t)});
    if (it == comps_.end()) {
        return zero(ctx_);
    }
    return s < t ? it->second : -it->second;
}

void TwoForm::add(int s, int t, const JetFunction &f)
{
    if (s == t || f.is_zero()) {
        return;
    }
    std::pair<int, int> key{std::min(s, t), std::max(s, t)};
    JetFunction g = s < t ? f : -f;
    auto it = comps_.find(key);
    if (it == comps_.end()) {
        comps_.emplace(key, g.with_order(ctx_.N));
        return;
    }
    it->second += g;
    if (it->second.is_zero()) {
        comps_.erase(it);
    }
}

bool TwoForm::is_zero() const
{
    return comps_.empty();
}

TwoForm TwoForm::truncated(int degree) const
{
    TwoForm w(ctx_);
    for (const auto &[k, f] : comps_) {
        w.add(k.first, k.second, f.truncated(degree));
    }
    return w;
}

TwoForm &TwoForm::operator+=(const TwoForm &o)
{
    for (const auto &[k, f] : o.comps_) {
        add(k.first, k.second, f);
    }
    return *this;
}

TwoForm TwoForm::operator-() const
{
    return scaled(Rational(-1));
}

TwoForm TwoForm::scaled(const Rational &c) const
{
    TwoForm w(ctx_);
    for (const auto &[k, f] : comps_) {
        w.add(k.first, k.second, f.scaled(c));
    }
    return w;
}

JetFunction ThreeForm::get(int s, int t, int u) const
{
    std::array<int, 3> idx{s, t, u};
    int sign = 1;
    // Bubble sort with sign.
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j + 1 < 3 - i; ++j) {
            if (idx[j] == idx[j + 1]) {
                return JetFunction(ctx.n, ctx.N);
            }
            if (idx[j] > idx[j + 1]) {
                std::swap(idx[j], idx[j + 1]);
                sign = -sign;
            }
        }
    }
    auto it = comps.find(idx);
    if (it == comps.end()) {
        return JetFunction(ctx.n, ctx.N);
    }
    return sign > 0 ? it->second : -it->second;
}

GeneralizedVectorField::GeneralizedVectorField(const JetContext &c)
    : ctx(c), X(zeros(c)), xi(zeros(c))
{
}

bool GeneralizedVectorField::is_zero() const
{
    return std::all_of(X.begin(), X.end(), [](const JetFunction &f) { return f.is_zero(); })
           && std::all_of(xi.begin(), xi.end(), [](const JetFunction &f) { return f.is_zero(); });
}

bool GeneralizedVectorField::is_real() const
{
    int n = ctx.n;
    for (int a = 0; a < n; ++a) {
        if (X[n + a] != X[a].conj() || xi[n + a] != xi[a].conj()) {
            return false;
        }
    }
    return true;
}

GeneralizedVectorField &GeneralizedVectorField::operator+=(const GeneralizedVectorField &o)
{
    for (std::size_t s = 0; s < X.size(); ++s) {
        X[s] += o.X[s];
        xi[s] += o.xi[s];
    }
    return *this;
}

GeneralizedVectorField GeneralizedVectorField::operator-() const
{
    return scaled(Gauss(-1));
}

GeneralizedVectorField GeneralizedVectorField::scaled(const Gauss &c) const
{
    GeneralizedVectorField v(ctx);
    for (std::size_t s = 0; s < X.size(); ++s) {
        v.X[s] = X[s].scaled(c);
        v.xi[s] = xi[s].scaled(c);
    }
    return v;
}

GeneralizedVectorField GeneralizedVectorField::truncated(int degree) const
{
    GeneralizedVectorField v(ctx);
    for (std::size_t s = 0; s < X.size(); ++s) {
        v.X[s] = X[s].truncated(degree);
        v.xi[s] = xi[s].truncated(degree);
    }
    return v;
}

int GeneralizedVectorField::vanishing_order() const
{
    int best = -1;
    for (const auto *part : {&X, &xi}) {
        for (const auto &f : *part) {
            int d = f.vanishing_order();
            if (d >= 0 && (best < 0 || d < best)) {
                best = d;
            }
        }
    }
    return best;
}

MixedTensor GeneralizedVectorField::lbar_part() const
{
    int n = ctx.n;
    MixedTensor v(ctx);
    for (int a = 0; a < n; ++a) {
        v.add(vector_bit(n, a), X[a]);
        v.add(form_bit(n, a), xi[n + a]);
    }
    return v;
}

GeneralizedVectorField GeneralizedVectorField::from_lbar(const MixedTensor &v)
{
    const JetContext &ctx = v.context();
    int n = ctx.n;
    GeneralizedVectorField g(ctx);
    for (const auto &[w, f] : v.components()) {
        if (std::popcount(w) != 1) {
            throw std::invalid_argument("L-bar section must have bidegree (1,0) + (0,1)");
        }
        int b = std::countr_zero(w);
        if (b >= n) {
            g.X[b - n] += f;
        } else {
            g.xi[n + b] += f;
        }
    }
    return g;
}

GeneralizedVectorField GeneralizedVectorField::realify(const MixedTensor &v)
{
    GeneralizedVectorField g = from_lbar(v);
    int n = g.ctx.n;
    for (int a = 0; a < n; ++a) {
        g.X[n + a] = g.X[a].conj();
        g.xi[a] = g.xi[n + a].conj();
    }
    return g;
}

JetFunction apply_vector(const SlotVector &X, const JetFunction &f)
{
    JetFunction out(f.n(), f.order());
    for (int s = 0; s < slot_count(X); ++s) {
        if (X[s].is_zero()) {
            continue;
        }
        JetFunction d = f.derivative(s);
        if (!d.is_zero()) {
            out += X[s] * d;
        }
    }
    return out;
}

SlotVector lie_bracket(const SlotVector &X, const SlotVector &Y)
{
    SlotVector out(X.size());
    for (int s = 0; s < slot_count(X); ++s) {
        out[s] = apply_vector(X, Y[s]) - apply_vector(Y, X[s]);
    }
    return out;
}

SlotVector lie_derivative_form(const SlotVector &X, const SlotVector &eta)
{
    int m = slot_count(X);
    SlotVector out(m);
    for (int s = 0; s < m; ++s) {
        out[s] = apply_vector(X, eta[s]);
    }
    for (int t = 0; t < m; ++t) {
        if (eta[t].is_zero()) {
            continue;
        }
        for (int s = 0; s < m; ++s) {
            JetFunction d = X[t].derivative(s);
            if (!d.is_zero()) {
                out[s] += eta[t] * d;
            }
        }
    }
    return out;
}

TwoForm lie_derivative(const SlotVector &X, const TwoForm &w)
{
    int m = slot_count(X);
    TwoForm out(w.context());
    for (const auto &[k, f] : w.components()) {
        out.add(k.first, k.second, apply_vector(X, f));
    }
    // w(u, t) d_s X^u + w(s, u) d_t X^u, summed over s < t.
    std::vector<std::vector<JetFunction>> dX(m, std::vector<JetFunction>(m));
    for (int u = 0; u < m; ++u) {
        for (int s = 0; s < m; ++s) {
            dX[u][s] = X[u].derivative(s);
        }
    }
    for (const auto &[k, f] : w.components()) {
        auto [u, v] = k;
        // Term w(u,v) with u < v contributes to (s, v) via d_s X^u and to (u, t) via d_t X^v.
        for (int s = 0; s < m; ++s) {
            if (!dX[u][s].is_zero()) {
                out.add(s, v, f * dX[u][s]);
            }
            if (!dX[v][s].is_zero()) {
                out.add(u, s, f * dX[v][s]);
            }
        }
    }
    return out;
}

SlotVector exterior_d(const JetContext &ctx, const JetFunction &f)
{
    SlotVector out(2 * ctx.n);
    for (int s = 0; s < 2 * ctx.n; ++s) {
        out[s] = f.derivative(s);
    }
    return out;
}

TwoForm exterior_d(const JetContext &ctx, const SlotVector &xi)
{
    int m = 2 * ctx.n;
    TwoForm out(ctx);
    for (int s = 0; s < m; ++s) {
        for (int t = s + 1; t < m; ++t) {
            out.add(s, t, xi[t].derivative(s) - xi[s].derivative(t));
        }
    }
    return out;
}

SlotVector contract(const SlotVector &Y, const TwoForm &w)
{
    int m = slot_count(Y);
    const JetContext &ctx = w.context();
    SlotVector out(m, JetFunction(ctx.n, ctx.N));
    for (const auto &[k, f] : w.components()) {
        auto [s, t] = k;
        if (!Y[s].is_zero()) {
            out[t] += Y[s] * f;
        }
        if (!Y[t].is_zero()) {
            out[s] -= Y[t] * f;
        }
    }
    return out;
}

JetFunction contract(const SlotVector &Y, const SlotVector &eta)
{
    JetContext c = context_from(Y);
    JetFunction out(c.n, c.N);
    for (int s = 0; s < slot_count(Y); ++s) {
        if (!Y[s].is_zero() && !eta[s].is_zero()) {
            out += Y[s] * eta[s];
        }
    }
    return out;
}

bool is_closed(const ThreeForm &H)
{
    int m = 2 * H.ctx.n;
    for (int s = 0; s < m; ++s) {
        for (int t = s + 1; t < m; ++t) {
            for (int u = t + 1; u < m; ++u) {
                for (int v = u + 1; v < m; ++v) {
                    JetFunction d = H.get(t, u, v).derivative(s) - H.get(s, u, v).derivative(t)
                                    + H.get(s, t, v).derivative(u) - H.get(s, t, u).derivative(v);
                    if (!d.truncated(H.ctx.N - 1).is_zero()) {
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

GeneralizedVectorField courant_bracket(const GeneralizedVectorField &a,
                                       const GeneralizedVectorField &b)
{
    const JetContext &ctx = a.ctx;
    GeneralizedVectorField out(ctx);
    out.X = lie_bracket(a.X, b.X);
    SlotVector lx = lie_derivative_form(a.X, b.xi);
    SlotVector iy = contract(b.X, exterior_d(ctx, a.xi));
    for (int s = 0; s < 2 * ctx.n; ++s) {
        out.xi[s] = lx[s] - iy[s];
    }
    return out;
}

GeneralizedVectorField courant_bracket(const ThreeForm &H, const GeneralizedVectorField &a,
                                       const GeneralizedVectorField &b)
{
    if (!is_closed(H)) {
        throw PreconditionError("dH", "twisting 3-form is not closed");
    }
    GeneralizedVectorField out = courant_bracket(a, b);
    if (H.is_zero()) {
        return out;
    }
    const JetContext &ctx = a.ctx;
    int m = 2 * ctx.n;
    for (int t = 0; t < m; ++t) {
        for (int u = 0; u < m; ++u) {
            for (int s = 0; s < m; ++s) {
                if (a.X[t].is_zero() || b.X[s].is_zero()) {
                    continue;
                }
                JetFunction h = H.get(s, t, u);
                if (!h.is_zero()) {
                    out.xi[u] += a.X[t] * b.X[s] * h;
                }
            }
        }
    }
    return out;
}

} // namespace gcb::jet
