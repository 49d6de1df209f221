#include <gtest/gtest.h>

#include <gcbrane/dbar_homotopy.hpp>
#include <gcbrane/generators.hpp>

#include "test_util.hpp"

using namespace gcb;
using namespace gcb::jet;
using test::mono;

namespace
{

MixedTensor form_word(const JetContext &c, const std::vector<int> &forms, const JetFunction &f)
{
    return MixedTensor::term(c, make_word(c.n, {}, forms), f);
}

JetFunction one(const JetContext &c) { return JetFunction::constant(c.n, c.N, Gauss(1)); }

// Holomorphic part in every variable.
JetFunction hol_all(const JetFunction &f)
{
    JetFunction g(f.n(), f.order());
    for (const auto &[m, a] : f.terms()) {
        bool hol = true;
        for (int i = 0; i < f.n(); ++i) {
            hol = hol && mono_exp(m, f.n() + i) == 0;
        }
        if (hol) {
            g.add_term(m, a);
        }
    }
    return g;
}

} // namespace

TEST(PiJ, DropsLowestFormIndex)
{
    JetContext c = test::ctx(2, 0, 4);
    JetFunction a = mono(2, 4, {1, 0}, {0, 2}, Gauss(2, 1));
    MixedTensor t = form_word(c, {0, 1}, a);
    EXPECT_EQ(pi_j(t, 0), form_word(c, {1}, a));
    EXPECT_TRUE(pi_j(t, 1).is_zero());
}

TEST(PiJ, ReconstructionIdentity)
{
    gen::Rng rng(1);
    for (int n = 1; n <= 3; ++n) {
        JetContext c = test::ctx(n, 0, 5);
        for (int p = 0; p <= n; ++p) {
            for (int q = 1; q <= n; ++q) {
                MixedTensor t = gen::random_tensor(rng, c, p, q, 3, 3, 0, 5);
                MixedTensor sum(c);
                for (int j = 0; j < n; ++j) {
                    sum += wedge(form_word(c, {j}, one(c)), pi_j(t, j));
                }
                EXPECT_EQ(sum, t);
            }
        }
    }
}

TEST(AntiderivativeT, Monomials)
{
    EXPECT_EQ(antiderivative_T(JetFunction::constant(2, 5, Gauss(1)), 0),
              mono(2, 5, {0, 0}, {1, 0}));
    for (int b = 0; b < 4; ++b) {
        EXPECT_EQ(antiderivative_T(mono(2, 5, {0, 0}, {b, 0}), 0),
                  mono(2, 5, {0, 0}, {b + 1, 0}, Gauss(Rational(1, b + 1))));
    }
}

TEST(AntiderivativeT, RightInverseOfDerivative)
{
    gen::Rng rng(2);
    for (int i = 0; i < 20; ++i) {
        JetFunction f = gen::random_jet(rng, 3, 6, 5, 0, 5);
        int v = gen::random_int(rng, 0, 2);
        std::size_t overflow = 0;
        EXPECT_EQ(antiderivative_T(f, v, &overflow).derivative(3 + v), f);
        EXPECT_EQ(overflow, 0u);
    }
}

TEST(AntiderivativeT, OverflowIsCounted)
{
    std::size_t overflow = 0;
    JetFunction f = mono(1, 3, {3}, {0});
    EXPECT_TRUE(antiderivative_T(f, 0, &overflow).is_zero());
    EXPECT_EQ(overflow, 1u);
}

TEST(HolProjectionH, Examples)
{
    JetFunction z1 = JetFunction::variable(1, 4, 0);
    JetFunction zb1 = JetFunction::variable(1, 4, 1);
    EXPECT_EQ(hol_projection_H(z1 + zb1, 0), z1);
    gen::Rng rng(3);
    for (int i = 0; i < 20; ++i) {
        JetFunction f = gen::random_jet(rng, 2, 6, 5, 0, 6);
        int v = gen::random_int(rng, 0, 1);
        JetFunction h = hol_projection_H(f, v);
        EXPECT_EQ(hol_projection_H(h, v), h);
        EXPECT_EQ(antiderivative_T(f.derivative(2 + v), v) + h, f);
    }
}

TEST(Q, OfDzbar1)
{
    JetContext c = test::ctx(2, 0, 4);
    EXPECT_EQ(Q(form_word(c, {0}, one(c))), MixedTensor::function(c, JetFunction::variable(2, 4, 2)));
}

namespace
{

void expect_homotopy_identity(MixedTensor (*op)(const MixedTensor &, std::size_t *), int seed)
{
    gen::Rng rng(seed);
    for (int n = 1; n <= 3; ++n) {
        for (int k = 0; k <= n; ++k) {
            JetContext c = test::ctx(n, k, 6);
            for (int p = 0; p <= n; ++p) {
                for (int q = 0; q <= n; ++q) {
                    MixedTensor t = gen::random_tensor(rng, c, p, q, 2, 3, 0, c.N - 1);
                    MixedTensor lhs = op(dbar(t), nullptr);
                    if (q > 0) {
                        lhs += dbar(op(t, nullptr));
                    } else {
                        // Only the fully holomorphic part survives Q dbar on functions.
                        lhs += t.map_coefficients(hol_all);
                    }
                    EXPECT_EQ(lhs, t) << "n=" << n << " k=" << k << " p=" << p << " q=" << q;
                }
            }
        }
    }
}

} // namespace

TEST(Q, HomotopyIdentity) { expect_homotopy_identity(&Q, 4); }

TEST(P, HomotopyIdentity) { expect_homotopy_identity(&P, 5); }

TEST(Q, IsotropicFormsStayIsotropic)
{
    gen::Rng rng(6);
    for (int i = 0; i < 30; ++i) {
        JetContext c = test::ctx(3, 1 + i % 2, 6);
        // Terms with every form index in S carry a normal factor.
        MixedTensor t = gen::random_tensor(rng, c, 0, 2, 3, 3, 0, 4);
        MixedTensor iso(c);
        for (const auto &[w, f] : t.components()) {
            bool all_tangent = (w & ((Word{1} << c.k) - 1)) == w;
            iso.add(w, all_tangent ? f * JetFunction::variable(3, 6, 3 + 2) : f);
        }
        ASSERT_TRUE(is_S_isotropic(iso));
        EXPECT_TRUE(is_S_isotropic(Q(iso)));
    }
}

TEST(StretchS, Examples)
{
    JetContext c = test::ctx(2, 1, 4);
    EXPECT_TRUE(stretch_s(form_word(c, {1}, one(c))).is_zero());
    EXPECT_TRUE(stretch_s(form_word(c, {0}, JetFunction::variable(2, 4, 3))).is_zero());
    MixedTensor t = form_word(c, {0}, JetFunction::variable(2, 4, 2));
    EXPECT_EQ(stretch_s(t), t);
    // Vector indices normal to S are annihilated.
    EXPECT_TRUE(stretch_s(MixedTensor::term(c, make_word(2, {1}, {}), one(c))).is_zero());
}

TEST(StretchS, IdempotentAndCommutesWithDbar)
{
    gen::Rng rng(7);
    for (int i = 0; i < 30; ++i) {
        JetContext c = test::ctx(3, gen::random_int(rng, 0, 3), 6);
        int p = gen::random_int(rng, 0, 3), q = gen::random_int(rng, 0, 2);
        MixedTensor t = gen::random_tensor(rng, c, p, q, 3, 3, 0, 5);
        EXPECT_EQ(stretch_s(stretch_s(t)), stretch_s(t));
        EXPECT_EQ(dbar(stretch_s(t)), stretch_s(dbar(t)));
    }
}

TEST(P, EqualsQOnIsotropicForm)
{
    JetContext c = test::ctx(3, 1, 5);
    MixedTensor t = form_word(c, {0, 1}, one(c));
    EXPECT_EQ(P(t), Q(t));
    JetFunction f = mono(3, 5, {1, 0, 1}, {0, 1, 0}, Gauss(3, -1));
    MixedTensor u = form_word(c, {0, 2}, f);
    EXPECT_EQ(P(u), Q(u));
}

TEST(P, NormalFormIndexVanishesOnS)
{
    gen::Rng rng(8);
    for (int i = 0; i < 30; ++i) {
        JetContext c = test::ctx(3, 1 + i % 2, 6);
        int idx = gen::random_int(rng, c.k, 2);
        JetFunction f = gen::random_jet(rng, 3, 6, 4, 0, 4);
        MixedTensor t = MixedTensor::term(c, make_word(3, {gen::random_int(rng, 0, 2)}, {idx}), f);
        MixedTensor r = P(t);
        for (const auto &[w, g] : r.components()) {
            EXPECT_TRUE(g.vanishes_on_first(c.k));
        }
    }
}
