// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <gcbrane/brane_connection.hpp>
#include <gcbrane/generators.hpp>
#include <gcbrane/hopf.hpp>
#include <gcbrane/linear_gca.hpp>
#include <gcbrane/normalizer.hpp>
#include <gcbrane/suites.hpp>

using namespace gcb;
using namespace gcb::jet;

namespace
{

// Pinned limits.
constexpr double linear_seconds = 10.0;
constexpr double homotopy_seconds = 30.0;
constexpr double lemma_seconds = 60.0;
constexpr double decay_seconds = 60.0;
constexpr double normalize_seconds = 300.0;
constexpr double hopf_seconds = 30.0;
constexpr double min_decay_slope = 1.9;

constexpr std::uint64_t seed = 20240601;

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char *f, double a)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

Outcome linear_splitting()
{
    gen::Rng rng(seed);
    auto t0 = Clock::now();
    int ok = 0;
    std::string first;
    for (int i = 0; i < 100; ++i) {
        std::size_t m = 2 + i % 5;
        std::size_t k = gen::random_int(rng, 0, int(m));
        gen::LinearInstance inst = gen::random_linear_instance(rng, m, k);
        linear::LinearSplitting sp = linear::split_linear_brane(inst.gc, inst.brane);
        linear::SplitReport rep = linear::verify_splitting(inst.gc, inst.brane, sp);
        if (rep.ok()) {
            ++ok;
        } else if (first.empty()) {
            first = " first failure #" + std::to_string(i) + ": " + rep.witness;
        }
    }
    double s = seconds_since(t0);
    return {ok == 100 && s < linear_seconds,
            std::to_string(ok) + "/100 split," + fmt(" %.2f s", s) + first};
}

Outcome suite_run(const std::string &name, int count, int N, double limit, bool need_control = false)
{
    suites::SuiteOptions o;
    o.seed = seed;
    o.count = count;
    o.N = N;
    auto t0 = Clock::now();
    suites::SuiteReport r = suites::run_suite(name, o);
    double s = seconds_since(t0);
    bool pass = r.ok() && s < limit && (!need_control || r.control_violations > 0);
    std::string d = name + " " + std::to_string(r.passed) + "/" + std::to_string(r.count);
    if (need_control) {
        d += ", control " + std::to_string(r.control_violations) + "/" + std::to_string(r.control_cases) +
             " violated";
    }
    if (!r.ok()) {
        d += ", " + r.failure_reason;
    }
    return {pass, d + fmt(", %.2f s", s)};
}

Outcome homotopy_identities()
{
    return suite_run("homotopy-identity", 200, 6, homotopy_seconds);
}

Outcome lemma_suite()
{
    auto t0 = Clock::now();
    Outcome all{true, ""};
    for (const char *name : {"q-isotropic", "p-isotropic", "p-tangent", "v-tangent"}) {
        Outcome o = suite_run(name, 100, 6, lemma_seconds, std::string(name) == "p-tangent");
        all.pass = all.pass && o.pass;
        all.detail += (all.detail.empty() ? "" : "; ") + o.detail;
    }
    double s = seconds_since(t0);
    all.pass = all.pass && s < lemma_seconds;
    return all;
}

Outcome flow_brane()
{
    return suite_run("flow-brane", 50, 6, normalize_seconds);
}

Outcome quadratic_decay()
{
    auto t0 = Clock::now();
    gen::Rng rng(seed);
    JetContext ctx{2, 1, 6, Rational(1)};
    gen::RoundTrip rt = gen::random_round_trip(rng, ctx, Rational(1));
    std::vector<double> xs, ys;
    std::string d = "norms";
    for (Rational delta : {Rational(1, 2), Rational(1, 4), Rational(1, 8), Rational(1, 16)}) {
        Deformation e = gen::round_trip_member(rt.pi, rt.W, delta);
        Deformation next = normalize_step(e);
        Rational nrm = next.eps11.majorant_norm(ctx.r) + next.eps02.majorant_norm(ctx.r);
        xs.push_back(std::log(delta.get_d()));
        ys.push_back(std::log(nrm.get_d()));
        d += fmt(" %.3e", nrm.get_d());
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i] / xs.size();
        my += ys[i] / ys.size();
    }
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    double slope = sxy / sxx;
    double s = seconds_since(t0);
    return {slope >= min_decay_slope && s < decay_seconds, fmt("slope %.3f, ", slope) + d + fmt(", %.2f s", s)};
}

Outcome end_to_end()
{
    auto t0 = Clock::now();
    gen::Rng rng(seed);
    NormalizationParams p;
    p.target_order = 6;
    int ok = 0;
    std::string first;
    for (int i = 0; i < 25; ++i) {
        JetContext ctx{2, 1, 8, Rational(1)};
        Deformation e = gen::random_round_trip(rng, ctx, Rational(1, 2)).eps;
        NormalizationReport r = run_normalization(e, p);
        Deformation e20(ctx);
        e20.eps20 = r.final_eps.eps20;
        MCResidual mc = mc_residual(e20);
        auto vanishes_below = [&](const MixedTensor &t) {
            int o = t.vanishing_order();
            return o < 0 || o >= p.target_order;
        };
        bool good = r.converged && reached_order(r.final_eps, p.target_order) && r.brane_preserved() &&
                    vanishes_below(dbar(e20.eps20)) && vanishes_below(mc.r30);
        if (good) {
            ++ok;
        } else if (first.empty()) {
            first = " first failure #" + std::to_string(i);
        }
    }
    double s = seconds_since(t0);
    return {ok == 25 && s < normalize_seconds, std::to_string(ok) + "/25 normalized" + fmt(", %.1f s", s) + first};
}

Outcome scaling_laws()
{
    gen::Rng rng(seed);
    int ok = 0;
    const int cases = 20;
    for (int i = 0; i < cases; ++i) {
        JetContext ctx{2 + i % 2, 1, 5, Rational(1)};
        // Homogeneous components of degrees 0, 1, 1.
        Deformation e(ctx);
        while (e.eps20.is_zero() || e.eps11.is_zero() || e.eps02.is_zero()) {
            e.eps20 = gen::random_tensor(rng, ctx, 2, 0, 2, 2, 0, 0);
            e.eps11 = gen::random_tensor(rng, ctx, 1, 1, 2, 2, 1, 1);
            e.eps02 = gen::random_tensor(rng, ctx, 0, 2, 2, 2, 1, 1);
        }
        Rational u(1, 2 + i % 5);
        ScalingSchedule sch = ScalingSchedule::for_deformation(e, u);
        Deformation out = sch.apply(e);
        bool good = sch.u_exponents() == std::vector<int>{1, 2, 1} && sch.t() == u * u &&
                    out.eps20.majorant_norm(ctx.r) == e.eps20.majorant_norm(ctx.r) * u &&
                    out.eps11.majorant_norm(ctx.r) == e.eps11.majorant_norm(ctx.r) * u * u &&
                    out.eps02.majorant_norm(ctx.r) == e.eps02.majorant_norm(ctx.r) * u;
        ok += good;
    }
    return {ok == cases, std::to_string(ok) + "/" + std::to_string(cases) + " exact with u-exponents (1,2,1)"};
}

Outcome hopf_suite()
{
    auto t0 = Clock::now();
    hopf::HopfReport r = hopf::run_hopf_suite({Rational(1), Rational(2), Rational(1, 2)});
    hopf::HopfOptions bad;
    bad.flip_B_sign = true;
    hopf::HopfReport m = hopf::run_hopf_suite({Rational(1), Rational(2), Rational(1, 2)}, bad);
    double s = seconds_since(t0);
    std::size_t passed = 0;
    std::string first;
    for (const auto &c : r.checks) {
        passed += c.pass;
        if (!c.pass && first.empty()) {
            first = ", failed: " + c.name;
        }
    }
    return {r.ok() && !m.ok() && s < hopf_seconds,
            std::to_string(passed) + "/" + std::to_string(r.checks.size()) + " checks, mutation " +
                (m.ok() ? "missed" : "detected") + fmt(", %.2f s", s) + first};
}

Outcome higher_rank()
{
    gen::Rng rng(seed);
    int flat_ok = 0;
    int rejected = 0, injections = 0;
    const std::pair<gen::Curvature, std::string> kinds[] = {{gen::Curvature::F, "(0,2) curvature F["},
                                                            {gen::Curvature::G, "mixed curvature G["},
                                                            {gen::Curvature::K, "Gamma_pi curvature K["}};
    for (int i = 0; i < 20; ++i) {
        JetContext ctx{4, 2, 4, Rational(1)};
        RawBraneConnection conn = gen::random_flat_connection(rng, ctx, 1 + i % 3);
        BraneConnectionReport rep;
        split_brane_connection(conn, rep);
        flat_ok += rep.ok();
        for (const auto &[kind, prefix] : kinds) {
            BraneConnectionReport bad;
            split_brane_connection(gen::inject_curvature(conn, kind), bad);
            ++injections;
            rejected += !bad.ok() && bad.witness.rfind(prefix, 0) == 0;
        }
    }
    return {flat_ok == 20 && rejected == injections,
            std::to_string(flat_ok) + "/20 flat certified, " + std::to_string(rejected) + "/" +
                std::to_string(injections) + " injections rejected with matching witness"};
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 linear splitting", linear_splitting},
        {"2 homotopy identities", homotopy_identities},
        {"3 lemma suite", lemma_suite},
        {"4 flow-brane invariance", flow_brane},
        {"5 quadratic decay", quadratic_decay},
        {"6 end-to-end normalization", end_to_end},
        {"7 scaling laws", scaling_laws},
        {"8 hopf suite", hopf_suite},
        {"9 higher-rank splitter", higher_rank}};
    int failed = 0;
    for (const auto &[name, fn] : criteria) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("%s  %-28s %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
