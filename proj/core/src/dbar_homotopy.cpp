#include <gcbrane/dbar_homotopy.hpp>

#include <bit>

namespace gcb::jet
{

MixedTensor pi_j(const MixedTensor &theta, int j)
{
    int n = theta.n();
    MixedTensor out(theta.context());
    Word forms = (Word{1} << n) - 1;
    for (const auto &[w, f] : theta.components()) {
        Word fw = w & forms;
        if (fw && std::countr_zero(fw) == j) {
            out.add(w ^ form_bit(n, j), f);
        }
    }
    return out;
}

JetFunction antiderivative_T(const JetFunction &f, int i, std::size_t *overflow)
{
    int n = f.n();
    JetFunction out(n, f.order());
    int slot = n + i;
    for (const auto &[m, c] : f.terms()) {
        int e = mono_exp(m, slot) + 1;
        Monomial mm = m + mono_unit(slot);
        if (mono_degree(mm) > f.order()) {
            if (overflow) {
                ++*overflow;
            }
            continue;
        }
        out.add_term(mm, c * Rational(1, e));
    }
    return out;
}

JetFunction hol_projection_H(const JetFunction &f, int i)
{
    JetFunction out(f.n(), f.order());
    int slot = f.n() + i;
    for (const auto &[m, c] : f.terms()) {
        if (mono_exp(m, slot) == 0) {
            out.add_term(m, c);
        }
    }
    return out;
}

MixedTensor Q(const MixedTensor &theta, std::size_t *overflow)
{
    int n = theta.n();
    MixedTensor out(theta.context());
    for (int j = 0; j < n; ++j) {
        MixedTensor pj = pi_j(theta, j);
        for (const auto &[w, f] : pj.components()) {
            JetFunction g = f;
            for (int i = 0; i < j; ++i) {
                g = hol_projection_H(g, i);
            }
            out.add(w, antiderivative_T(g, j, overflow));
        }
    }
    return out;
}

MixedTensor stretch_s(const MixedTensor &theta)
{
    int n = theta.n();
    int k = theta.context().k;
    MixedTensor out(theta.context());
    for (const auto &[w, f] : theta.components()) {
        Word forms = w & ((Word{1} << n) - 1);
        Word vecs = w >> n;
        if ((forms >> k) || (vecs >> k)) {
            continue;
        }
        out.add(w, f.restrict_to_first(k));
    }
    return out;
}

MixedTensor P(const MixedTensor &theta, std::size_t *overflow)
{
    MixedTensor q = Q(theta, overflow);
    return q - stretch_s(q) + Q(stretch_s(theta), overflow);
}

} // namespace gcb::jet
