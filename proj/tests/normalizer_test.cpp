#include <gtest/gtest.h>

#include <gcbrane/brane_connection.hpp>
#include <gcbrane/dbar_homotopy.hpp>
#include <gcbrane/generators.hpp>
#include <gcbrane/normalizer.hpp>

#include "test_util.hpp"

using namespace gcb;
using namespace gcb::jet;
using test::mono;

namespace
{

JetFunction one(const JetContext &c) { return JetFunction::constant(c.n, c.N, Gauss(1)); }

Deformation holomorphic_poisson(const JetContext &c)
{
    Deformation e(c);
    JetFunction z1 = JetFunction::variable(c.n, c.N, 0);
    e.eps20 = MixedTensor::term(c, make_word(c.n, {0, 1}, {}), z1 + z1 * z1);
    return e;
}

Rational norm(const MixedTensor &t) { return t.majorant_norm(Rational(1)); }

} // namespace

TEST(HomotopyField, ZeroDeformation)
{
    EXPECT_TRUE(homotopy_field(Deformation(test::ctx(2, 1, 5))).is_zero());
}

TEST(HomotopyField, SingleIsotropicTwoForm)
{
    JetContext c = test::ctx(3, 1, 5);
    Deformation e(c);
    e.eps02 = MixedTensor::term(c, make_word(3, {}, {0, 1}), one(c).scaled(Gauss(2, -1)));
    GeneralizedVectorField V = homotopy_field(e);
    EXPECT_EQ(V.lbar_part(), -P(e.eps02));
    for (int s = 0; s < 2 * c.n; ++s) {
        EXPECT_TRUE(V.X[s].is_zero());
    }
    EXPECT_TRUE(is_brane_tangent(V));
}

TEST(HomotopyField, TangentOnRandomCompatibleInput)
{
    gen::Rng rng(1);
    for (int i = 0; i < 20; ++i) {
        JetContext c = test::ctx(3, 1 + i % 2, 5);
        Deformation e = gen::random_compatible_deformation(rng, c, 0, 3);
        ASSERT_TRUE(brane_compat_check(e).ok());
        EXPECT_TRUE(is_brane_tangent(homotopy_field(e)));
    }
}

TEST(HomotopyField, RejectsIncompatibleInput)
{
    JetContext c = test::ctx(2, 2, 4);
    Deformation e(c);
    e.eps02 = MixedTensor::term(c, make_word(2, {}, {0, 1}), one(c));
    EXPECT_THROW(homotopy_field(e), PreconditionError);
}

TEST(NormalizeStep, HolomorphicPoissonIsFixed)
{
    Deformation e = holomorphic_poisson(test::ctx(2, 1, 6));
    EXPECT_EQ(normalize_step(e), e);
}

TEST(NormalizeStep, DefectOrderIncreases)
{
    gen::Rng rng(2);
    for (int i = 0; i < 5; ++i) {
        JetContext c = test::ctx(2, 1, 6);
        Deformation e = gen::random_round_trip(rng, c, Rational(1, 2)).eps;
        int m = normal_form_defect_order(e);
        ASSERT_GE(m, 1);
        Deformation next = normalize_step(e);
        int m2 = normal_form_defect_order(next);
        EXPECT_TRUE(m2 == -1 || m2 >= m + 1) << m << " -> " << m2;
        EXPECT_TRUE(brane_compat_check(next).ok());
    }
}

TEST(RunNormalization, HolomorphicPoissonTakesNoSteps)
{
    NormalizationReport r = run_normalization(holomorphic_poisson(test::ctx(2, 1, 6)), {});
    EXPECT_TRUE(r.converged);
    EXPECT_EQ(r.rows.size(), 1u);
    EXPECT_TRUE(r.flow.is_identity());
}

TEST(RunNormalization, RejectsNonIntegrableInput)
{
    JetContext c = test::ctx(2, 1, 6);
    Deformation e(c);
    e.eps11 = MixedTensor::term(c, make_word(2, {0}, {0}), JetFunction::variable(2, 6, 3));
    ASSERT_FALSE(mc_residual(e).is_zero());
    try {
        run_normalization(e, {});
        FAIL();
    } catch (const PreconditionError &err) {
        EXPECT_EQ(err.clause(), "mc_residual");
    }
}

TEST(RunNormalization, RoundTripRecoversNormalForm)
{
    gen::Rng rng(3);
    for (int i = 0; i < 3; ++i) {
        JetContext c = test::ctx(2, 1, 6);
        Deformation e = gen::random_round_trip(rng, c, Rational(1, 2)).eps;
        NormalizationParams p;
        p.target_order = 5;
        NormalizationReport r = run_normalization(e, p);
        ASSERT_TRUE(r.converged);
        EXPECT_TRUE(r.brane_preserved());
        EXPECT_TRUE(reached_order(r.final_eps, p.target_order));
        // Monotone decay of the defect order.
        for (std::size_t j = 1; j < r.rows.size(); ++j) {
            int prev = r.rows[j - 1].ord_eps11_02, cur = r.rows[j].ord_eps11_02;
            EXPECT_TRUE(cur == -1 || cur > prev);
        }
        MCResidual mc = mc_residual(r.final_eps);
        EXPECT_TRUE(mc.is_zero());
        Deformation e20(c);
        e20.eps20 = r.final_eps.eps20;
        MCResidual mc20 = mc_residual(e20);
        int top = p.target_order - 1;
        EXPECT_TRUE(mc20.r30.truncated(top).is_zero());
        EXPECT_TRUE(dbar(e20.eps20).truncated(top).is_zero());
        // A normal form is a fixed point of the iteration.
        NormalizationReport again = run_normalization(r.final_eps, p);
        EXPECT_EQ(again.rows.size(), 1u);
        EXPECT_TRUE(again.flow.is_identity());
    }
}

TEST(RunNormalization, NonConvergenceIsFlagged)
{
    gen::Rng rng(4);
    JetContext c = test::ctx(2, 1, 6);
    Deformation e = gen::random_round_trip(rng, c, Rational(1, 2)).eps;
    NormalizationParams p;
    p.max_iterations = 1;
    NormalizationReport r = run_normalization(e, p);
    EXPECT_FALSE(r.converged);
    EXPECT_EQ(r.rows.size(), 2u);
}

TEST(Zoom, ConstantComponentLaws)
{
    JetContext c = test::ctx(2, 1, 4);
    Deformation e(c);
    e.eps02 = MixedTensor::term(c, make_word(2, {}, {0, 1}), one(c));
    e.eps20 = MixedTensor::term(c, make_word(2, {0, 1}, {}), one(c).scaled(Gauss(3)));
    for (Rational t : {Rational(1, 2), Rational(2, 3)}) {
        Deformation z = zoom(e, t);
        EXPECT_EQ(norm(z.eps02), norm(e.eps02) * t * t);
        EXPECT_EQ(norm(z.eps20), norm(e.eps20) / (t * t));
    }
    EXPECT_EQ(zoom(e, Rational(1)), e);
}

TEST(Zoom, MonomialPullbackOracle)
{
    // (z1 zbar2) dzbar1 ^ d/dz2 under z -> t z picks up t^2 (coefficient) * t (form) / t (vector).
    JetContext c = test::ctx(2, 1, 4);
    Deformation e(c);
    JetFunction f = mono(2, 4, {1, 0}, {0, 1});
    e.eps11 = MixedTensor::term(c, make_word(2, {1}, {0}), f);
    Rational t(1, 3);
    EXPECT_EQ(zoom(e, t).eps11, e.eps11.scaled(t * t));
}

TEST(CotangentScale, IdentityAndComponents)
{
    gen::Rng rng(5);
    JetContext c = test::ctx(2, 1, 4);
    Deformation e = gen::random_compatible_deformation(rng, c, 0, 2);
    EXPECT_EQ(cotangent_scale(e, Rational(1)), e);
    Rational s(3, 2);
    Deformation l = cotangent_scale(e, s);
    EXPECT_EQ(l.eps20, e.eps20.scaled(s));
    EXPECT_EQ(l.eps11, e.eps11);
    EXPECT_EQ(l.eps02, e.eps02.scaled(1 / s));
}

TEST(CotangentScale, CommutesWithZoom)
{
    gen::Rng rng(6);
    JetContext c = test::ctx(2, 1, 4);
    for (int i = 0; i < 5; ++i) {
        Deformation e = gen::random_compatible_deformation(rng, c, 0, 3);
        Rational t = gen::random_rational(rng, 3, 4), s = gen::random_rational(rng, 3, 4);
        if (t == 0 || s <= 0) {
            continue;
        }
        EXPECT_EQ(cotangent_scale(zoom(e, t), s), zoom(cotangent_scale(e, s), t));
    }
}

TEST(CotangentScale, McPartsScaleByOnePowerEach)
{
    gen::Rng rng(7);
    JetContext c = test::ctx(3, 1, 4);
    Rational s(2);
    for (int i = 0; i < 5; ++i) {
        Deformation e = gen::random_compatible_deformation(rng, c, 0, 2);
        MCResidual a = mc_residual(e), b = mc_residual(cotangent_scale(e, s));
        EXPECT_EQ(b.r30, a.r30.scaled(s * s));
        EXPECT_EQ(b.r21, a.r21.scaled(s));
        EXPECT_EQ(b.r12, a.r12);
        EXPECT_EQ(b.r03, a.r03.scaled(1 / s));
    }
}

TEST(ScalingSchedule, HalfIntegerLawsForOrdersZeroOneOne)
{
    JetContext c = test::ctx(2, 1, 4);
    JetFunction z1 = JetFunction::variable(2, 4, 0);
    Deformation e(c);
    e.eps20 = MixedTensor::term(c, make_word(2, {0, 1}, {}), one(c));
    e.eps11 = MixedTensor::term(c, make_word(2, {1}, {0}), z1);
    e.eps02 = MixedTensor::term(c, make_word(2, {}, {0, 1}), z1);
    Rational u(1, 3);
    ScalingSchedule sch = ScalingSchedule::for_deformation(e, u);
    EXPECT_EQ(sch.alpha, 0);
    EXPECT_EQ(sch.beta, 1);
    EXPECT_EQ(sch.gamma, 1);
    EXPECT_EQ(sch.t(), u * u);
    EXPECT_EQ(sch.s(), rational_pow(u, 5));
    EXPECT_EQ(sch.u_exponents(), (std::vector<int>{1, 2, 1}));
    Deformation out = sch.apply(e);
    EXPECT_EQ(norm(out.eps20), norm(e.eps20) * u);
    EXPECT_EQ(norm(out.eps11), norm(e.eps11) * u * u);
    EXPECT_EQ(norm(out.eps02), norm(e.eps02) * u);
    EXPECT_EQ(ScalingSchedule::for_deformation(e, Rational(1)).apply(e), e);
}

namespace
{

RawBraneConnection trivial_connection(const JetContext &c, int rank)
{
    RawBraneConnection conn;
    conn.ctx = c;
    conn.rank = rank;
    conn.pi = MixedTensor(c);
    for (int a = 0; a < c.n; ++a) {
        conn.entries.push_back(jet_zero(rank, c.n, c.N));
    }
    return conn;
}

} // namespace

TEST(SplitBraneConnection, TrivialRankOne)
{
    BraneConnectionReport rep;
    BraneConnection bc = split_brane_connection(trivial_connection(test::ctx(2, 1, 4), 1), rep);
    EXPECT_TRUE(rep.ok()) << rep.witness;
    EXPECT_EQ(bc.nabla_prime.size(), 1u);
    EXPECT_EQ(bc.nabla_doubleprime.size(), 1u);
}

TEST(SplitBraneConnection, HolomorphicMultiplierAlongPoissonDirection)
{
    JetContext c = test::ctx(2, 1, 5);
    RawBraneConnection conn = trivial_connection(c, 1);
    conn.pi = MixedTensor::term(c, make_word(2, {0, 1}, {}), one(c));
    JetFunction z1 = JetFunction::variable(2, 5, 0);
    conn.entries[1][0][0] = z1 * z1 + one(c).scaled(Gauss(2));
    BraneConnectionReport rep;
    split_brane_connection(conn, rep);
    EXPECT_TRUE(rep.ok()) << rep.witness;

    // A zbar1 dependence makes the mixed curvature dbar_1 Theta nonzero.
    conn.entries[1][0][0] += JetFunction::variable(2, 5, 2);
    split_brane_connection(conn, rep);
    EXPECT_FALSE(rep.anticommute);
    EXPECT_EQ(rep.witness.rfind("mixed curvature G[", 0), 0u) << rep.witness;
}

TEST(SplitBraneConnection, FlatConnectionsCertified)
{
    gen::Rng rng(8);
    for (int i = 0; i < 5; ++i) {
        JetContext c = test::ctx(4, 2, 4);
        RawBraneConnection conn = gen::random_flat_connection(rng, c, 2);
        BraneConnectionReport rep;
        split_brane_connection(conn, rep);
        EXPECT_TRUE(rep.ok()) << rep.witness;
    }
}

TEST(SplitBraneConnection, InjectedCurvatureRejected)
{
    gen::Rng rng(9);
    JetContext c = test::ctx(4, 2, 4);
    RawBraneConnection conn = gen::random_flat_connection(rng, c, 2);
    const std::pair<gen::Curvature, const char *> cases[] = {
        {gen::Curvature::F, "(0,2) curvature F["},
        {gen::Curvature::G, "mixed curvature G["},
        {gen::Curvature::K, "Gamma_pi curvature K["}};
    for (const auto &[which, prefix] : cases) {
        BraneConnectionReport rep;
        split_brane_connection(gen::inject_curvature(conn, which), rep);
        EXPECT_FALSE(rep.ok());
        EXPECT_EQ(rep.witness.rfind(prefix, 0), 0u) << rep.witness;
    }
}
