#ifndef GCBRANE_COURANT_HPP
#define GCBRANE_COURANT_HPP

#include <array>
#include <map>
#include <vector>

#include <gcbrane/jet.hpp>
#include <gcbrane/tensor.hpp>

namespace gcb::jet
{

// Real calculus on the polydisc in the complexified frame: slot s < n is z_{s+1},
// slot n + i is zbar_{i+1}. Vector fields and 1-forms carry 2n jet components.
using SlotVector = std::vector<JetFunction>;

// 2-form with components w(s, t), s < t; antisymmetric extension implied.
class TwoForm
{
public:
    TwoForm() = default;
    explicit TwoForm(const JetContext &ctx);

    const JetContext &context() const { return ctx_; }
    int slots() const { return 2 * ctx_.n; }
    // Antisymmetric access.
    JetFunction get(int s, int t) const;
    void add(int s, int t, const JetFunction &f);
    bool is_zero() const;
    TwoForm truncated(int degree) const;

    TwoForm &operator+=(const TwoForm &o);
    TwoForm operator-() const;
    TwoForm scaled(const Rational &c) const;
    bool operator==(const TwoForm &o) const { return comps_ == o.comps_; }

    const std::map<std::pair<int, int>, JetFunction> &components() const { return comps_; }

private:
    JetContext ctx_;
    std::map<std::pair<int, int>, JetFunction> comps_;
};

// 3-form with components h(s, t, u), s < t < u.
struct ThreeForm {
    JetContext ctx;
    std::map<std::array<int, 3>, JetFunction> comps;

    bool is_zero() const { return comps.empty(); }
    JetFunction get(int s, int t, int u) const;
};

// X + xi, a section of the complexified generalized tangent bundle.
struct GeneralizedVectorField {
    JetContext ctx;
    SlotVector X;
    SlotVector xi;

    explicit GeneralizedVectorField(const JetContext &c = {});

    bool is_zero() const;
    // zbar-slot components are the conjugates of the z-slot components.
    bool is_real() const;
    GeneralizedVectorField &operator+=(const GeneralizedVectorField &o);
    GeneralizedVectorField operator-() const;
    GeneralizedVectorField scaled(const Gauss &c) const;
    GeneralizedVectorField truncated(int degree) const;
    int vanishing_order() const;
    bool operator==(const GeneralizedVectorField &o) const { return X == o.X && xi == o.xi; }

    // X^{1,0} + xi^{0,1} as a mixed tensor of bidegrees (1,0) + (0,1).
    MixedTensor lbar_part() const;
    // Real field whose L-bar part is v (words d/dz_a and dzbar_b only).
    static GeneralizedVectorField realify(const MixedTensor &v);
    // Complex field with the L-bar part only.
    static GeneralizedVectorField from_lbar(const MixedTensor &v);
};

inline GeneralizedVectorField operator+(GeneralizedVectorField a, const GeneralizedVectorField &b)
{
    return a += b;
}
inline GeneralizedVectorField operator-(GeneralizedVectorField a, const GeneralizedVectorField &b)
{
    return a += -b;
}

// X(f).
JetFunction apply_vector(const SlotVector &X, const JetFunction &f);
SlotVector lie_bracket(const SlotVector &X, const SlotVector &Y);
SlotVector lie_derivative_form(const SlotVector &X, const SlotVector &eta);
TwoForm lie_derivative(const SlotVector &X, const TwoForm &w);
SlotVector exterior_d(const JetContext &ctx, const JetFunction &f);
TwoForm exterior_d(const JetContext &ctx, const SlotVector &xi);
// Components (iota_Y w)_t = sum_s Y^s w(s, t).
SlotVector contract(const SlotVector &Y, const TwoForm &w);
JetFunction contract(const SlotVector &Y, const SlotVector &eta);
// dH as a 4-form; zero iff H is closed.
bool is_closed(const ThreeForm &H);

// Dorfman form: [X,Y] + L_X eta - iota_Y d xi + iota_X iota_Y H. Rejects H with dH != 0.
GeneralizedVectorField courant_bracket(const ThreeForm &H, const GeneralizedVectorField &a,
                                       const GeneralizedVectorField &b);
GeneralizedVectorField courant_bracket(const GeneralizedVectorField &a,
                                       const GeneralizedVectorField &b);

} // namespace gcb::jet

#endif
