#ifndef GCBRANE_TENSOR_HPP
#define GCBRANE_TENSOR_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gcbrane/jet.hpp>
#include <gcbrane/matrix.hpp>

namespace gcb::jet
{

// Basis word of the graded algebra generated by dzbar_1..dzbar_n (bits 0..n-1)
// and d/dz_1..d/dz_n (bits n..2n-1). Words are read in ascending bit order,
// so forms come before vectors.
using Word = std::uint32_t;

inline Word form_bit(int n, int j) { (void)n; return Word{1} << j; }
inline Word vector_bit(int n, int a) { return Word{1} << (n + a); }
int word_p(Word w, int n);
int word_q(Word w, int n);
// Sign of w1 ^ w2 relative to the canonical word w1 | w2 (0 if they overlap).
int wedge_sign(Word w1, Word w2);
Word make_word(int n, const std::vector<int> &vec_idx, const std::vector<int> &form_idx);

// Element of Omega^{0,*}(wedge^{*,0} T) with jet coefficients; may mix bidegrees.
class MixedTensor
{
public:
    MixedTensor() = default;
    explicit MixedTensor(const JetContext &ctx) : ctx_(ctx) {}

    static MixedTensor function(const JetContext &ctx, const JetFunction &f);
    static MixedTensor term(const JetContext &ctx, Word w, const JetFunction &f);

    const JetContext &context() const { return ctx_; }
    int n() const { return ctx_.n; }
    const std::map<Word, JetFunction> &components() const { return comps_; }
    JetFunction component(Word w) const;
    bool is_zero() const { return comps_.empty(); }

    void add(Word w, const JetFunction &f);
    void set(Word w, JetFunction f);

    MixedTensor &operator+=(const MixedTensor &o);
    MixedTensor &operator-=(const MixedTensor &o);
    MixedTensor operator-() const;
    MixedTensor scaled(const Gauss &c) const;
    MixedTensor scaled(const Rational &c) const;

    // Components of the given bidegree only.
    MixedTensor part(int p, int q) const;
    MixedTensor truncated(int degree) const;
    MixedTensor conj_coefficients() const;
    // Applies f to every coefficient.
    template <typename F>
    MixedTensor map_coefficients(F f) const
    {
        MixedTensor out(ctx_);
        for (const auto &[w, c] : comps_) {
            out.add(w, f(c));
        }
        return out;
    }

    int vanishing_order() const;
    Rational majorant_norm(const Rational &r) const;

    bool operator==(const MixedTensor &o) const { return comps_ == o.comps_; }
    bool operator!=(const MixedTensor &o) const { return !(*this == o); }

    std::string to_string() const;

private:
    JetContext ctx_;
    std::map<Word, JetFunction> comps_;
};

inline MixedTensor operator+(MixedTensor a, const MixedTensor &b) { return a += b; }
inline MixedTensor operator-(MixedTensor a, const MixedTensor &b) { return a -= b; }

MixedTensor wedge(const MixedTensor &a, const MixedTensor &b);
MixedTensor dbar(const MixedTensor &t);
MixedTensor schouten_bracket(const MixedTensor &a, const MixedTensor &b);

struct Deformation {
    JetContext ctx;
    MixedTensor eps20;
    MixedTensor eps11;
    MixedTensor eps02;

    explicit Deformation(const JetContext &c = {}) : ctx(c), eps20(c), eps11(c), eps02(c) {}

    MixedTensor total() const { return eps20 + eps11 + eps02; }
    static Deformation from_total(const MixedTensor &t);
    Deformation truncated(int degree) const;
    bool operator==(const Deformation &o) const
    {
        return eps20 == o.eps20 && eps11 == o.eps11 && eps02 == o.eps02;
    }
    bool operator!=(const Deformation &o) const { return !(*this == o); }
};

struct MCResidual {
    MixedTensor r30;
    MixedTensor r21;
    MixedTensor r12;
    MixedTensor r03;
    // Anything landing outside the four bidegrees (always zero).
    MixedTensor stray;

    bool is_zero() const
    {
        return r30.is_zero() && r21.is_zero() && r12.is_zero() && r03.is_zero() && stray.is_zero();
    }
    Rational majorant_norm(const Rational &r) const;
};

MCResidual mc_residual(const Deformation &eps);

struct BraneCompatReport {
    bool coisotropic = false;
    bool preserves_TS = false;
    bool isotropic = false;
    std::string witness;

    bool ok() const { return coisotropic && preserves_TS && isotropic; }
};

BraneCompatReport brane_compat_check(const Deformation &eps);

// S-isotropy of a (0,q) form part: coefficients of words with all form
// indices < k vanish on S.
bool is_S_isotropic(const MixedTensor &t);
// Components with a vector index >= k have coefficients vanishing on S.
bool is_multitangent_on_S(const MixedTensor &t);

// Push forward along the holomorphic linear map z -> M z.
MixedTensor linear_pushforward(const MixedTensor &t, const GMatrix &M);
Deformation linear_pushforward(const Deformation &eps, const GMatrix &M);

} // namespace gcb::jet

#endif
