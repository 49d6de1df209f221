#include <gtest/gtest.h>

#include <gcbrane/gen_flow.hpp>
#include <gcbrane/generators.hpp>

#include "test_util.hpp"

using namespace gcb;
using namespace gcb::jet;
using test::mono;

namespace
{

MixedTensor rnd(gen::Rng &rng, const JetContext &c, int p, int q, int lo, int hi)
{
    return gen::random_tensor(rng, c, p, q, 2, 3, lo, hi);
}

// Real field with X of order >= 2 and a 1-form of order >= 1.
GeneralizedVectorField random_real_field(gen::Rng &rng, const JetContext &c)
{
    return GeneralizedVectorField::realify(rnd(rng, c, 1, 0, 2, 4) + rnd(rng, c, 0, 1, 1, 4));
}

Deformation random_eps(gen::Rng &rng, const JetContext &c)
{
    Deformation e(c);
    e.eps20 = rnd(rng, c, 2, 0, 0, 3);
    e.eps11 = rnd(rng, c, 1, 1, 1, 3);
    e.eps02 = rnd(rng, c, 0, 2, 1, 3);
    return e;
}

// (0,2) part of a 2-form as a mixed tensor.
MixedTensor zero_two_part(const TwoForm &B)
{
    const JetContext &c = B.context();
    MixedTensor out(c);
    for (int i = 0; i < c.n; ++i) {
        for (int j = i + 1; j < c.n; ++j) {
            out.add(make_word(c.n, {}, {i, j}), B.get(c.n + i, c.n + j));
        }
    }
    return out;
}

// d/dt at t = 0 of the degree-D interpolant through t = 0..D.
Rational lagrange_derivative_weight(int k, int D)
{
    if (k == 0) {
        Rational w = 0;
        for (int j = 1; j <= D; ++j) {
            w -= Rational(1, j);
        }
        return w;
    }
    Rational prod = 1;
    for (int j = 1; j <= D; ++j) {
        if (j != k) {
            prod *= Rational(-j) / Rational(k - j);
        }
    }
    return prod / Rational(k);
}

} // namespace

TEST(Flow, ZeroFieldIsIdentity)
{
    JetContext c = test::ctx(2, 1, 5);
    GeneralizedFlow f = flow(GeneralizedVectorField(c), Rational(1));
    EXPECT_TRUE(f.is_identity());
    EXPECT_TRUE(f.B.is_zero());
    for (int s = 0; s < 4; ++s) {
        EXPECT_EQ(f.phi[s], JetFunction::variable(2, 5, s));
    }
}

TEST(Flow, ClosedFormGivesNoBField)
{
    gen::Rng rng(1);
    JetContext c = test::ctx(2, 1, 5);
    JetFunction h = gen::random_jet(rng, 2, 5, 3, 2, 4);
    GeneralizedVectorField V(c);
    V.xi = exterior_d(c, h + h.conj());
    for (int t = 1; t <= 3; ++t) {
        EXPECT_TRUE(flow(V, Rational(t)).B.truncated(c.N - 1).is_zero());
    }
}

TEST(Flow, PureFormGivesLinearB)
{
    gen::Rng rng(2);
    JetContext c = test::ctx(2, 1, 5);
    GeneralizedVectorField V = GeneralizedVectorField::realify(rnd(rng, c, 0, 1, 1, 4));
    TwoForm dxi = exterior_d(c, V.xi);
    for (Rational t : {Rational(1), Rational(1, 2), Rational(3)}) {
        GeneralizedFlow f = flow(V, t);
        EXPECT_EQ(f.B.truncated(c.N - 1), dxi.scaled(t).truncated(c.N - 1));
    }
}

TEST(Flow, RejectsFieldMovingTheOrigin)
{
    JetContext c = test::ctx(2, 1, 5);
    MixedTensor v = MixedTensor::term(c, vector_bit(2, 0), JetFunction::variable(2, 5, 1));
    try {
        flow(GeneralizedVectorField::realify(v), Rational(1));
        FAIL();
    } catch (const PreconditionError &e) {
        EXPECT_EQ(e.clause(), "flow");
    }
}

TEST(Flow, CompositionOfTimes)
{
    gen::Rng rng(3);
    JetContext c = test::ctx(2, 1, 5);
    for (int i = 0; i < 5; ++i) {
        GeneralizedVectorField V = random_real_field(rng, c);
        GeneralizedFlow a = flow(V, Rational(1, 2));
        GeneralizedFlow b = flow(V, Rational(1, 3));
        GeneralizedFlow ab = compose(a, b);
        GeneralizedFlow direct = flow(V, Rational(5, 6));
        for (int s = 0; s < 4; ++s) {
            EXPECT_EQ(ab.phi[s], direct.phi[s]);
        }
        EXPECT_EQ(ab.B.truncated(c.N - 1), direct.B.truncated(c.N - 1));
    }
}

TEST(Flow, RealityPreserved)
{
    gen::Rng rng(4);
    JetContext c = test::ctx(2, 1, 5);
    for (int i = 0; i < 5; ++i) {
        GeneralizedVectorField V = random_real_field(rng, c);
        ASSERT_TRUE(V.is_real());
        GeneralizedFlow f = flow(V, Rational(1));
        for (int a = 0; a < 2; ++a) {
            EXPECT_EQ(f.phi[2 + a], f.phi[a].conj());
        }
        for (const auto &[st, w] : f.B.components()) {
            auto flip = [](int s) { return s < 2 ? s + 2 : s - 2; };
            EXPECT_EQ(f.B.get(flip(st.first), flip(st.second)), w.conj());
        }
    }
}

TEST(ActOnDeformation, IdentityFlow)
{
    gen::Rng rng(5);
    JetContext c = test::ctx(2, 1, 5);
    Deformation e = random_eps(rng, c);
    EXPECT_EQ(act_on_deformation(GeneralizedFlow::identity(c), e), e);
}

TEST(ActOnDeformation, BFieldOnlyFlowFromZero)
{
    gen::Rng rng(6);
    JetContext c = test::ctx(2, 1, 5);
    for (int i = 0; i < 5; ++i) {
        GeneralizedVectorField V = GeneralizedVectorField::realify(rnd(rng, c, 0, 1, 1, 4));
        GeneralizedFlow f = flow(V, Rational(1));
        Deformation e = act_on_deformation(f, Deformation(c));
        EXPECT_TRUE(e.eps20.is_zero());
        EXPECT_TRUE(e.eps11.is_zero());
        // With our convention the new eps02 is the (0,2) part of B.
        EXPECT_EQ(e.eps02.truncated(c.N - 1), zero_two_part(f.B).truncated(c.N - 1));
    }
}

TEST(ActOnDeformation, ExplicitRouteAgreesBelowTopDegree)
{
    gen::Rng rng(7);
    JetContext c = test::ctx(2, 1, 5);
    for (int i = 0; i < 3; ++i) {
        GeneralizedVectorField V = random_real_field(rng, c);
        Deformation e = random_eps(rng, c);
        GeneralizedFlow f = flow(V, Rational(1));
        Deformation lie = act_on_deformation(f, e);
        Deformation expl = act_on_deformation_explicit(f, e);
        EXPECT_EQ(lie.truncated(c.N - 1), expl.truncated(c.N - 1));
    }
}

TEST(ActOnDeformation, PreservesIntegrability)
{
    gen::Rng rng(8);
    JetContext c = test::ctx(2, 1, 5);
    Deformation e(c);
    JetFunction z1 = JetFunction::variable(2, 5, 0), z2 = JetFunction::variable(2, 5, 1);
    e.eps20 = MixedTensor::term(c, make_word(2, {0, 1}, {}), z1 + z1 * z2);
    ASSERT_TRUE(mc_residual(e).is_zero());
    for (int i = 0; i < 3; ++i) {
        Deformation out = act_on_deformation(flow(random_real_field(rng, c), Rational(1)), e);
        EXPECT_TRUE(mc_residual(out).is_zero());
    }
}

TEST(InfinitesimalAction, ZeroField)
{
    gen::Rng rng(9);
    JetContext c = test::ctx(2, 1, 5);
    EXPECT_EQ(infinitesimal_action(GeneralizedVectorField(c), random_eps(rng, c)), Deformation(c));
}

TEST(InfinitesimalAction, DbarOfForm)
{
    JetContext c = test::ctx(2, 1, 5);
    MixedTensor xi = MixedTensor::term(c, form_bit(2, 1), JetFunction::variable(2, 5, 2));
    Deformation inc = infinitesimal_action(GeneralizedVectorField::realify(xi), Deformation(c));
    EXPECT_TRUE(inc.eps20.is_zero());
    EXPECT_TRUE(inc.eps11.is_zero());
    EXPECT_EQ(inc.eps02,
              MixedTensor::term(c, make_word(2, {}, {0, 1}), JetFunction::constant(2, 5, Gauss(1))));
}

TEST(InfinitesimalAction, LinearInField)
{
    gen::Rng rng(10);
    JetContext c = test::ctx(2, 1, 5);
    for (int i = 0; i < 5; ++i) {
        GeneralizedVectorField a = random_real_field(rng, c), b = random_real_field(rng, c);
        Deformation e = random_eps(rng, c);
        Deformation lhs = infinitesimal_action(a + b, e);
        Deformation ia = infinitesimal_action(a, e), ib = infinitesimal_action(b, e);
        EXPECT_EQ(lhs.total(), ia.total() + ib.total());
    }
}

TEST(InfinitesimalAction, FirstOrderCoefficientOfFlowAction)
{
    gen::Rng rng(11);
    JetContext c = test::ctx(2, 1, 5);
    int D = c.N + 3;
    for (int it = 0; it < 3; ++it) {
        GeneralizedVectorField V =
            GeneralizedVectorField::from_lbar(rnd(rng, c, 1, 0, 2, 4) + rnd(rng, c, 0, 1, 2, 4));
        Deformation e = it == 0 ? Deformation(c) : random_eps(rng, c);
        MixedTensor d(c);
        for (int k = 0; k <= D; ++k) {
            MixedTensor val = act_on_deformation(flow(V, Rational(k)), e).total();
            d += val.scaled(lagrange_derivative_weight(k, D));
        }
        EXPECT_EQ(d.truncated(c.N - 1), infinitesimal_action(V, e).total().truncated(c.N - 1));
    }
}

TEST(FlowBrane, TangentFieldsPreserveIdealAndTau)
{
    gen::Rng rng(12);
    for (int i = 0; i < 10; ++i) {
        JetContext c = test::ctx(3, 1 + i % 2, 5);
        GeneralizedVectorField V = gen::random_brane_tangent_field(rng, c, 2, 3);
        ASSERT_TRUE(is_brane_tangent(V));
        BraneFlowReport r = flow_brane_check(flow(V, Rational(1)));
        EXPECT_TRUE(r.ok()) << r.witness;
    }
}

TEST(FlowBrane, NormalVectorFieldMovesS)
{
    JetContext c = test::ctx(2, 1, 5);
    JetFunction z1 = JetFunction::variable(2, 5, 0);
    MixedTensor v = MixedTensor::term(c, vector_bit(2, 1), z1 * z1);
    GeneralizedVectorField V = GeneralizedVectorField::realify(v);
    EXPECT_FALSE(is_brane_tangent(V));
    BraneFlowReport r = flow_brane_check(flow(V, Rational(1)));
    EXPECT_FALSE(r.ideal_preserved);
}

TEST(FlowBrane, TangentialFormBreaksTau)
{
    JetContext c = test::ctx(2, 1, 5);
    // xi = z1^2 dzbar1 + zbar1^2 dz1 has d xi = 2 (z1 - zbar1) dz1 ^ dzbar1, nonzero on S.
    JetFunction z1 = JetFunction::variable(2, 5, 0);
    MixedTensor v = MixedTensor::term(c, form_bit(2, 0), z1 * z1);
    GeneralizedVectorField V = GeneralizedVectorField::realify(v);
    EXPECT_FALSE(is_brane_tangent(V));
    BraneFlowReport r = flow_brane_check(flow(V, Rational(1)));
    EXPECT_FALSE(r.tau_preserved);
}
