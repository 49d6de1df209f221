#include <benchmark/benchmark.h>

#include <gcbrane/dbar_homotopy.hpp>
#include <gcbrane/gen_flow.hpp>
#include <gcbrane/generators.hpp>
#include <gcbrane/hopf.hpp>
#include <gcbrane/linear_gca.hpp>
#include <gcbrane/normalizer.hpp>

using namespace gcb;
using namespace gcb::jet;

namespace
{

void BM_LinearSplit(benchmark::State &state)
{
    gen::Rng rng(1);
    std::size_t m = state.range(0);
    gen::LinearInstance inst = gen::random_linear_instance(rng, m, m / 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(linear::split_linear_brane(inst.gc, inst.brane));
    }
}
BENCHMARK(BM_LinearSplit)->DenseRange(2, 6)->Unit(benchmark::kMicrosecond);

void BM_JetMultiply(benchmark::State &state)
{
    gen::Rng rng(2);
    int N = state.range(0);
    JetFunction a = gen::random_jet(rng, 3, N, 20, 0, N), b = gen::random_jet(rng, 3, N, 20, 0, N);
    for (auto _ : state) {
        benchmark::DoNotOptimize(a * b);
    }
}
BENCHMARK(BM_JetMultiply)->Arg(4)->Arg(6)->Arg(8);

void BM_JetCompose(benchmark::State &state)
{
    gen::Rng rng(3);
    int N = state.range(0);
    JetFunction f = gen::random_jet(rng, 2, N, 30, 1, N);
    std::vector<JetFunction> args;
    for (int s = 0; s < 4; ++s) {
        args.push_back(JetFunction::variable(2, N, s) + gen::random_jet(rng, 2, N, 4, 2, 3));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(compose(f, args));
    }
}
BENCHMARK(BM_JetCompose)->Arg(6)->Arg(8)->Unit(benchmark::kMicrosecond);

void BM_SchoutenBracket(benchmark::State &state)
{
    gen::Rng rng(4);
    JetContext c{3, 1, 6, Rational(1)};
    MixedTensor a = gen::random_tensor(rng, c, 2, 0, 3, 3, 0, 4);
    MixedTensor b = gen::random_tensor(rng, c, 1, 1, 3, 3, 0, 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(schouten_bracket(a, b));
    }
}
BENCHMARK(BM_SchoutenBracket)->Unit(benchmark::kMicrosecond);

void BM_HomotopyP(benchmark::State &state)
{
    gen::Rng rng(5);
    JetContext c{3, 1, static_cast<int>(state.range(0)), Rational(1)};
    MixedTensor t = gen::random_tensor(rng, c, 1, 2, 3, 3, 0, c.N - 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(P(t));
    }
}
BENCHMARK(BM_HomotopyP)->Arg(4)->Arg(6)->Unit(benchmark::kMicrosecond);

void BM_FlowAndAct(benchmark::State &state)
{
    gen::Rng rng(6);
    JetContext c{2, 1, static_cast<int>(state.range(0)), Rational(1)};
    gen::RoundTrip rt = gen::random_round_trip(rng, c, Rational(1, 2));
    GeneralizedVectorField V = homotopy_field(rt.eps);
    for (auto _ : state) {
        benchmark::DoNotOptimize(act_on_deformation(flow(V, Rational(1)), rt.eps));
    }
}
BENCHMARK(BM_FlowAndAct)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_NormalizeStep(benchmark::State &state)
{
    gen::Rng rng(7);
    JetContext c{2, 1, 6, Rational(1)};
    Deformation e = gen::random_round_trip(rng, c, Rational(1, 2)).eps;
    for (auto _ : state) {
        benchmark::DoNotOptimize(normalize_step(e));
    }
}
BENCHMARK(BM_NormalizeStep)->Unit(benchmark::kMillisecond);

void BM_HopfSuite(benchmark::State &state)
{
    for (auto _ : state) {
        benchmark::DoNotOptimize(hopf::run_hopf_suite({Rational(1), Rational(2), Rational(1, 2)}));
    }
}
BENCHMARK(BM_HopfSuite)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
