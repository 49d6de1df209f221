#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include <gcbrane/generators.hpp>
#include <gcbrane/serialize.hpp>

#include "test_util.hpp"

using namespace gcb;
using namespace gcb::jet;

namespace
{

std::string slurp(const std::string &name)
{
    std::ifstream in(std::string(GCB_TEST_DATA_DIR) + "/" + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST(Rationals, FormatAndParse)
{
    EXPECT_EQ(io::rational_to_string(Rational(3, 4)), "3/4");
    EXPECT_EQ(io::rational_to_string(Rational(-2)), "-2/1");
    EXPECT_EQ(io::rational_to_string(Rational(0)), "0/1");
    EXPECT_EQ(io::parse_rational("6/8"), Rational(3, 4));
    EXPECT_EQ(io::parse_rational("-5"), Rational(-5));
    for (const char *bad : {"", "1/0", "abc", "1/2/3", "0.5"}) {
        EXPECT_THROW(io::parse_rational(bad), io::ParseError) << bad;
    }
}

TEST(LinearInstance, RoundTrip)
{
    gen::Rng rng(1);
    for (int i = 0; i < 10; ++i) {
        gen::LinearInstance a = gen::random_linear_instance(rng, 2 + i % 4, i % 3);
        gen::LinearInstance b = io::parse_linear_instance(io::linear_instance_to_json(a));
        EXPECT_EQ(b.gc.op, a.gc.op);
        EXPECT_EQ(b.brane.S, a.brane.S);
        EXPECT_EQ(b.brane.tau, a.brane.tau);
    }
}

TEST(LinearInstance, FixtureParses)
{
    gen::LinearInstance inst = io::parse_linear_instance(slurp("linear_ok.json"));
    EXPECT_EQ(inst.gc.n(), 6u);
    EXPECT_EQ(inst.brane.S.cols(), 2u);
    EXPECT_EQ(inst.brane.tau.cols(), 6u);
}

TEST(LinearInstance, RejectsMalformedInput)
{
    EXPECT_THROW(io::parse_linear_instance("{"), io::ParseError);
    EXPECT_THROW(io::parse_linear_instance(R"({"n": 1})"), io::ParseError);
    EXPECT_THROW(io::parse_linear_instance(R"({"n": 1, "gc": [["0/1"]], "S_basis": []})"), io::ParseError);
}

TEST(Tensor, RoundTrip)
{
    gen::Rng rng(2);
    for (int i = 0; i < 10; ++i) {
        JetContext c = test::ctx(3, 1, 5);
        MixedTensor t = gen::random_tensor(rng, c, i % 3, (i + 1) % 3, 3, 3, 0, 5);
        MixedTensor u = io::parse_tensor(io::tensor_to_json(t));
        EXPECT_EQ(u, t);
    }
}

TEST(Deformation, RoundTripAndFixture)
{
    gen::Rng rng(3);
    JetContext c = test::ctx(2, 1, 6);
    Deformation e = gen::random_compatible_deformation(rng, c, 0, 4);
    EXPECT_EQ(io::parse_deformation(io::deformation_to_json(e)), e);

    Deformation f = io::parse_deformation(slurp("eps_roundtrip.json"));
    EXPECT_EQ(f.ctx.n, 2);
    EXPECT_EQ(f.ctx.k, 1);
    EXPECT_EQ(f.ctx.N, 6);
    EXPECT_FALSE(f.eps02.is_zero());
}

TEST(Deformation, RejectsBadComponent)
{
    const char *txt = R"({"n": 1, "k": 0, "N": 3, "r": "1/1", "terms": [
        {"component": "30", "p_idx": [], "q_idx": [], "z_deg": [0], "zbar_deg": [0], "re": "1/1", "im": "0/1"}]})";
    EXPECT_THROW(io::parse_deformation(txt), io::ParseError);
}

TEST(Field, RoundTrip)
{
    gen::Rng rng(4);
    JetContext c = test::ctx(2, 1, 5);
    GeneralizedVectorField V = gen::random_brane_tangent_field(rng, c, 2, 4);
    EXPECT_EQ(io::parse_field(io::field_to_json(V)), V);
}

TEST(Params, DefaultsAndOverrides)
{
    NormalizationParams d = io::parse_params("{}");
    EXPECT_EQ(d.max_iterations, 20);
    EXPECT_EQ(d.target_order, 6);
    NormalizationParams p = io::parse_params(R"({"target_order": 4, "delta_schedule": ["1/3"]})");
    EXPECT_EQ(p.target_order, 4);
    EXPECT_EQ(p.max_iterations, 20);
    ASSERT_EQ(p.delta_schedule.size(), 1u);
    EXPECT_EQ(p.delta_schedule[0], Rational(1, 3));
    NormalizationParams q = io::parse_params(io::params_to_json(p));
    EXPECT_EQ(q.target_order, p.target_order);
    EXPECT_EQ(q.delta_schedule, p.delta_schedule);
    EXPECT_THROW(io::parse_params(R"({"target_order": "six"})"), io::ParseError);
}

TEST(Csv, HeaderAndRows)
{
    IterationRecord r;
    r.iteration = 2;
    r.ord_eps11_02 = 3;
    r.norm20 = Rational(1, 2);
    r.S_preserved = true;
    r.tau_preserved = false;
    std::string csv = io::normalization_csv({r});
    EXPECT_EQ(csv.rfind(io::csv_header(), 0), 0u);
    std::string row = io::csv_row(r);
    EXPECT_EQ(row.rfind("2,3,1/2,", 0), 0u) << row;
    EXPECT_EQ(std::count(row.begin(), row.end(), ','), 7);
}
