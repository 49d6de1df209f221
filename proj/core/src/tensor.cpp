#include <gcbrane/tensor.hpp>

#include <bit>
#include <sstream>

namespace gcb::jet
{

int word_p(Word w, int n)
{
    return std::popcount(w >> n);
}

int word_q(Word w, int n)
{
    return std::popcount(w & ((Word{1} << n) - 1));
}

int wedge_sign(Word w1, Word w2)
{
    if (w1 & w2) {
        return 0;
    }
    int swaps = 0;
    Word rest = w2;
    while (rest) {
        int b = std::countr_zero(rest);
        rest &= rest - 1;
        Word above = (b >= 31) ? 0 : (w1 >> (b + 1));
        swaps += std::popcount(above);
    }
    return (swaps & 1) ? -1 : 1;
}

Word make_word(int n, const std::vector<int> &vec_idx, const std::vector<int> &form_idx)
{
    Word w = 0;
    for (int a : vec_idx) {
        if (a < 0 || a >= n || (w & vector_bit(n, a))) {
            throw std::invalid_argument("bad or repeated vector index");
        }
        w |= vector_bit(n, a);
    }
    for (int j : form_idx) {
        if (j < 0 || j >= n || (w & form_bit(n, j))) {
            throw std::invalid_argument("bad or repeated form index");
        }
        w |= form_bit(n, j);
    }
    return w;
}

MixedTensor MixedTensor::function(const JetContext &ctx, const JetFunction &f)
{
    return term(ctx, 0, f);
}

MixedTensor MixedTensor::term(const JetContext &ctx, Word w, const JetFunction &f)
{
    MixedTensor t(ctx);
    t.add(w, f);
    return t;
}

JetFunction MixedTensor::component(Word w) const
{
    auto it = comps_.find(w);
    return it == comps_.end() ? JetFunction(ctx_.n, ctx_.N) : it->second;
}

void MixedTensor::add(Word w, const JetFunction &f)
{
    if (f.is_zero()) {
        return;
    }
    auto it = comps_.find(w);
    if (it == comps_.end()) {
        comps_.emplace(w, f.with_order(ctx_.N));
        return;
    }
    it->second += f;
    if (it->second.is_zero()) {
        comps_.erase(it);
    }
}

void MixedTensor::set(Word w, JetFunction f)
{
    comps_.erase(w);
    add(w, f);
}

MixedTensor &MixedTensor::operator+=(const MixedTensor &o)
{
    for (const auto &[w, f] : o.comps_) {
        add(w, f);
    }
    return *this;
}

MixedTensor &MixedTensor::operator-=(const MixedTensor &o)
{
    for (const auto &[w, f] : o.comps_) {
        add(w, -f);
    }
    return *this;
}

MixedTensor MixedTensor::operator-() const
{
    return map_coefficients([](const JetFunction &f) { return -f; });
}

MixedTensor MixedTensor::scaled(const Gauss &c) const
{
    return map_coefficients([&c](const JetFunction &f) { return f.scaled(c); });
}

MixedTensor MixedTensor::scaled(const Rational &c) const
{
    return map_coefficients([&c](const JetFunction &f) { return f.scaled(c); });
}

MixedTensor MixedTensor::part(int p, int q) const
{
    MixedTensor out(ctx_);
    for (const auto &[w, f] : comps_) {
        if (word_p(w, ctx_.n) == p && word_q(w, ctx_.n) == q) {
            out.comps_.emplace(w, f);
        }
    }
    return out;
}

MixedTensor MixedTensor::truncated(int degree) const
{
    return map_coefficients([degree](const JetFunction &f) { return f.truncated(degree); });
}

MixedTensor MixedTensor::conj_coefficients() const
{
    return map_coefficients([](const JetFunction &f) { return f.conj(); });
}

int MixedTensor::vanishing_order() const
{
    int best = -1;
    for (const auto &[w, f] : comps_) {
        int d = f.vanishing_order();
        if (d >= 0 && (best < 0 || d < best)) {
            best = d;
        }
    }
    return best;
}

Rational MixedTensor::majorant_norm(const Rational &r) const
{
    Rational s = 0;
    for (const auto &[w, f] : comps_) {
        s += f.majorant_norm(r);
    }
    return s;
}

std::string MixedTensor::to_string() const
{
    if (comps_.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    int n = ctx_.n;
    for (const auto &[w, f] : comps_) {
        os << (first ? "" : " + ") << '[' << f.to_string() << ']';
        first = false;
        for (int j = 0; j < n; ++j) {
            if (w & form_bit(n, j)) {
                os << " dzb" << j + 1;
            }
        }
        for (int a = 0; a < n; ++a) {
            if (w & vector_bit(n, a)) {
                os << " d/dz" << a + 1;
            }
        }
    }
    return os.str();
}

MixedTensor wedge(const MixedTensor &a, const MixedTensor &b)
{
    MixedTensor out(a.context());
    for (const auto &[wa, fa] : a.components()) {
        for (const auto &[wb, fb] : b.components()) {
            int s = wedge_sign(wa, wb);
            if (s == 0) {
                continue;
            }
            JetFunction prod = fa * fb;
            out.add(wa | wb, s > 0 ? prod : -prod);
        }
    }
    return out;
}

MixedTensor dbar(const MixedTensor &t)
{
    int n = t.n();
    MixedTensor out(t.context());
    for (const auto &[w, f] : t.components()) {
        for (int j = 0; j < n; ++j) {
            Word b = form_bit(n, j);
            if (w & b) {
                continue;
            }
            JetFunction d = f.derivative(n + j);
            if (d.is_zero()) {
                continue;
            }
            int below = std::popcount(w & (b - 1));
            out.add(w | b, (below & 1) ? -d : d);
        }
    }
    return out;
}

MixedTensor schouten_bracket(const MixedTensor &A, const MixedTensor &B)
{
    int n = A.n();
    const JetContext &ctx = A.context();
    MixedTensor out(ctx);
    // Holomorphic derivatives of B's and A's coefficients, computed once.
    std::map<Word, std::vector<JetFunction>> dA, dB;
    for (const auto &[w, f] : A.components()) {
        auto &v = dA[w];
        for (int a = 0; a < n; ++a) {
            v.push_back(f.derivative(a));
        }
    }
    for (const auto &[w, f] : B.components()) {
        auto &v = dB[w];
        for (int a = 0; a < n; ++a) {
            v.push_back(f.derivative(a));
        }
    }
    for (const auto &[wa, fa] : A.components()) {
        for (const auto &[wb, fb] : B.components()) {
            for (int a = 0; a < n; ++a) {
                Word th = vector_bit(n, a);
                if (wa & th) {
                    // Right derivative of wa by theta_a, times d_a of B.
                    Word wr = wa ^ th;
                    int sr = (std::popcount(wa & ~((th << 1) - 1)) & 1) ? -1 : 1;
                    int s = wedge_sign(wr, wb) * sr;
                    const JetFunction &g = dB[wb][a];
                    if (s != 0 && !g.is_zero()) {
                        JetFunction prod = fa * g;
                        out.add(wr | wb, s > 0 ? prod : -prod);
                    }
                }
                if (wb & th) {
                    // d_a of A, times left derivative of wb by theta_a.
                    Word wl = wb ^ th;
                    int sl = (std::popcount(wb & (th - 1)) & 1) ? -1 : 1;
                    int s = wedge_sign(wa, wl) * sl;
                    const JetFunction &g = dA[wa][a];
                    if (s != 0 && !g.is_zero()) {
                        JetFunction prod = g * fb;
                        out.add(wa | wl, s > 0 ? -prod : prod);
                    }
                }
            }
        }
    }
    return out.truncated(ctx.N - 1);
}

Deformation Deformation::from_total(const MixedTensor &t)
{
    Deformation d(t.context());
    d.eps20 = t.part(2, 0);
    d.eps11 = t.part(1, 1);
    d.eps02 = t.part(0, 2);
    return d;
}

Deformation Deformation::truncated(int degree) const
{
    Deformation d(ctx);
    d.eps20 = eps20.truncated(degree);
    d.eps11 = eps11.truncated(degree);
    d.eps02 = eps02.truncated(degree);
    return d;
}

Rational MCResidual::majorant_norm(const Rational &r) const
{
    return r30.majorant_norm(r) + r21.majorant_norm(r) + r12.majorant_norm(r) + r03.majorant_norm(r)
           + stray.majorant_norm(r);
}

MCResidual mc_residual(const Deformation &eps)
{
    MixedTensor e = eps.total();
    MixedTensor res = dbar(e) + schouten_bracket(e, e).scaled(Rational(1, 2));
    res = res.truncated(eps.ctx.N - 1);
    MCResidual r;
    r.r30 = res.part(3, 0);
    r.r21 = res.part(2, 1);
    r.r12 = res.part(1, 2);
    r.r03 = res.part(0, 3);
    r.stray = res - r.r30 - r.r21 - r.r12 - r.r03;
    return r;
}

namespace
{

bool all_indices_below(Word bits, int k)
{
    return (bits >> k) == 0;
}

} // namespace

BraneCompatReport brane_compat_check(const Deformation &eps)
{
    BraneCompatReport r;
    int n = eps.ctx.n;
    int k = eps.ctx.k;
    Word formmask = (Word{1} << n) - 1;
    std::ostringstream wit;
    r.coisotropic = true;
    for (const auto &[w, f] : eps.eps20.components()) {
        Word vec = w >> n;
        if ((vec & ((Word{1} << k) - 1)) == 0 && !f.vanishes_on_first(k)) {
            r.coisotropic = false;
            wit << "eps20 normal-normal component " << MixedTensor::term(eps.ctx, w, f).to_string()
                << "; ";
        }
    }
    r.preserves_TS = true;
    for (const auto &[w, f] : eps.eps11.components()) {
        Word vec = w >> n;
        Word form = w & formmask;
        if (all_indices_below(form, k) && !all_indices_below(vec, k) && !f.vanishes_on_first(k)) {
            r.preserves_TS = false;
            wit << "eps11 component " << MixedTensor::term(eps.ctx, w, f).to_string() << "; ";
        }
    }
    r.isotropic = true;
    for (const auto &[w, f] : eps.eps02.components()) {
        if (all_indices_below(w & formmask, k) && !f.vanishes_on_first(k)) {
            r.isotropic = false;
            wit << "eps02 tangent component " << MixedTensor::term(eps.ctx, w, f).to_string()
                << "; ";
        }
    }
    r.witness = wit.str();
    return r;
}

bool is_S_isotropic(const MixedTensor &t)
{
    int n = t.n();
    int k = t.context().k;
    Word formmask = (Word{1} << n) - 1;
    for (const auto &[w, f] : t.components()) {
        Word form = w & formmask;
        if (form && all_indices_below(form, k) && !f.vanishes_on_first(k)) {
            return false;
        }
    }
    return true;
}

bool is_multitangent_on_S(const MixedTensor &t)
{
    int n = t.n();
    int k = t.context().k;
    for (const auto &[w, f] : t.components()) {
        if (!all_indices_below(w >> n, k) && !f.vanishes_on_first(k)) {
            return false;
        }
    }
    return true;
}

MixedTensor linear_pushforward(const MixedTensor &t, const GMatrix &M)
{
    const JetContext &ctx = t.context();
    int n = ctx.n;
    int N = ctx.N;
    GMatrix Minv = inverse(M);
    // z_i = sum_j Minv_ij w_j, and conjugates.
    std::vector<JetFunction> args(2 * n, JetFunction(n, N));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            args[i] += JetFunction::variable(n, N, j).scaled(Minv(i, j));
            args[n + i] += JetFunction::variable(n, N, n + j).scaled(Minv(i, j).conj());
        }
    }
    auto one = JetFunction::constant(n, N, Gauss(1));
    // Images of the generators.
    std::vector<MixedTensor> gens(2 * n, MixedTensor(ctx));
    for (int c = 0; c < n; ++c) {
        for (int d = 0; d < n; ++d) {
            gens[c].add(form_bit(n, d), one.scaled(Minv(c, d).conj()));
            gens[n + c].add(vector_bit(n, d), one.scaled(M(d, c)));
        }
    }
    MixedTensor out(ctx);
    for (const auto &[w, f] : t.components()) {
        MixedTensor img = MixedTensor::function(ctx, compose(f, args));
        for (int b = 0; b < 2 * n; ++b) {
            if (w & (Word{1} << b)) {
                img = wedge(img, gens[b]);
            }
        }
        out += img;
    }
    return out;
}

Deformation linear_pushforward(const Deformation &eps, const GMatrix &M)
{
    Deformation d(eps.ctx);
    d.eps20 = linear_pushforward(eps.eps20, M);
    d.eps11 = linear_pushforward(eps.eps11, M);
    d.eps02 = linear_pushforward(eps.eps02, M);
    return d;
}

} // namespace gcb::jet
