// gcb: batch front end for the gcbrane library.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include <gcbrane/generators.hpp>
#include <gcbrane/hopf.hpp>
#include <gcbrane/linear_gca.hpp>
#include <gcbrane/normalizer.hpp>
#include <gcbrane/serialize.hpp>
#include <gcbrane/suites.hpp>

namespace
{

using nlohmann::ordered_json;
using namespace gcb;

constexpr int exit_ok = 0;
constexpr int exit_fail = 1;
constexpr int exit_precondition = 2;
constexpr int exit_parse = 3;
constexpr int exit_no_convergence = 4;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw io::ParseError("cannot read '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string &path, const std::string &text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    out << text;
}

// Jet truncation order: GCB_MAX_DEGREE when set, else `fallback`.
int max_degree(int fallback)
{
    const char *env = std::getenv("GCB_MAX_DEGREE");
    if (!env || !*env) {
        return fallback;
    }
    char *end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1 || v > 60) {
        throw io::ParseError(std::string("GCB_MAX_DEGREE must be an integer in [1, 60], got '") +
                             env + "'");
    }
    return static_cast<int>(v);
}

jet::MixedTensor reorder(const jet::MixedTensor &t, const jet::JetContext &ctx)
{
    jet::MixedTensor out(ctx);
    for (const auto &[w, f] : t.components()) {
        out.add(w, f.with_order(ctx.N));
    }
    return out;
}

jet::Deformation with_order(const jet::Deformation &eps, int N)
{
    jet::JetContext ctx = eps.ctx;
    ctx.N = N;
    jet::Deformation out(ctx);
    out.eps20 = reorder(eps.eps20, ctx);
    out.eps11 = reorder(eps.eps11, ctx);
    out.eps02 = reorder(eps.eps02, ctx);
    return out;
}

std::string error_json(const std::string &kind, const std::string &clause, const std::string &msg)
{
    ordered_json j;
    j["ok"] = false;
    j["error"] = kind;
    if (!clause.empty()) {
        j["clause"] = clause;
    }
    j["message"] = msg;
    return j.dump(2) + "\n";
}

struct Options {
    std::string input;
    std::string params;
    std::string output;
    std::uint64_t seed = 1;
    int count = -1;
    std::string suite;
    int target_order = -1;
    bool flip_b = false;
};

int cmd_linear_split(const Options &o)
{
    if (o.input.empty()) {
        // Seeded corpus run.
        int count = o.count < 0 ? 100 : o.count;
        gen::Rng rng(o.seed);
        const std::size_t dims[] = {2, 3, 4, 5, 6};
        ordered_json cases = ordered_json::array();
        int passed = 0;
        for (int i = 0; i < count; ++i) {
            std::size_t m = dims[gen::random_int(rng, 0, 4)];
            std::size_t k = static_cast<std::size_t>(gen::random_int(rng, 0, static_cast<int>(m)));
            gen::LinearInstance inst = gen::random_linear_instance(rng, m, k);
            linear::LinearSplitting split = linear::split_linear_brane(inst.gc, inst.brane);
            linear::SplitReport rep = linear::verify_splitting(inst.gc, inst.brane, split);
            passed += rep.ok();
            ordered_json c;
            c["case"] = i;
            c["n"] = 2 * m;
            c["dim_S"] = 2 * k;
            c["ok"] = rep.ok();
            if (!rep.ok()) {
                c["witness"] = rep.witness;
                c["instance"] = ordered_json::parse(io::linear_instance_to_json(inst));
            }
            cases.push_back(c);
        }
        ordered_json j;
        j["seed"] = o.seed;
        j["count"] = count;
        j["passed"] = passed;
        j["ok"] = passed == count;
        j["cases"] = cases;
        write_output(o.output, j.dump(2) + "\n");
        return passed == count ? exit_ok : exit_fail;
    }
    gen::LinearInstance inst = io::parse_linear_instance(read_file(o.input));
    linear::LinearSplitting split = linear::split_linear_brane(inst.gc, inst.brane);
    linear::SplitReport rep = linear::verify_splitting(inst.gc, inst.brane, split);
    write_output(o.output, io::linear_report_to_json(split, rep));
    return rep.ok() ? exit_ok : exit_fail;
}

int cmd_normalize(const Options &o)
{
    if (o.input.empty()) {
        throw UsageError("normalize needs --input");
    }
    jet::Deformation eps = io::parse_deformation(read_file(o.input));
    if (std::getenv("GCB_MAX_DEGREE")) {
        eps = with_order(eps, max_degree(eps.ctx.N));
    }
    jet::NormalizationParams params;
    if (!o.params.empty()) {
        params = io::parse_params(read_file(o.params));
    }
    if (o.target_order >= 0) {
        params.target_order = o.target_order;
    }
    std::string prefix = o.output.empty() ? "normalize" : o.output;
    jet::NormalizationReport rep = jet::run_normalization(eps, params);
    write_output(prefix + ".csv", io::normalization_csv(rep.rows));
    write_output(prefix + ".eps_final.json", io::deformation_to_json(rep.final_eps));
    write_output(prefix + ".flow.json", io::flow_to_json(rep.flow));
    if (!rep.converged) {
        std::cerr << "gcb normalize: target order " << params.target_order << " not reached in "
                  << params.max_iterations << " iterations\n";
        return exit_no_convergence;
    }
    if (!rep.brane_preserved()) {
        std::cerr << "gcb normalize: S or tau not preserved at some step\n";
        return exit_fail;
    }
    return exit_ok;
}

int cmd_hopf_verify(const Options &o)
{
    hopf::HopfOptions opts;
    opts.flip_B_sign = o.flip_b;
    hopf::HopfReport rep =
        hopf::run_hopf_suite({Rational(1), Rational(2), Rational(1, 2)}, opts);
    ordered_json checks = ordered_json::array();
    for (const auto &c : rep.checks) {
        ordered_json e;
        e["name"] = c.name;
        e["pass"] = c.pass;
        if (!c.pass) {
            e["witness"] = c.witness;
        }
        checks.push_back(e);
    }
    ordered_json j;
    j["ok"] = rep.ok();
    j["c_values"] = {"1/1", "2/1", "1/2"};
    j["mutation_flip_B_sign"] = o.flip_b;
    j["checks"] = checks;
    write_output(o.output, j.dump(2) + "\n");
    if (!rep.ok()) {
        for (const auto &c : rep.checks) {
            if (!c.pass) {
                std::cerr << "gcb hopf-verify: " << c.name << ": " << c.witness << "\n";
                break;
            }
        }
        return exit_fail;
    }
    return exit_ok;
}

int cmd_mc_check(const Options &o)
{
    if (o.input.empty()) {
        throw UsageError("mc-check needs --input");
    }
    jet::Deformation eps = io::parse_deformation(read_file(o.input));
    if (std::getenv("GCB_MAX_DEGREE")) {
        eps = with_order(eps, max_degree(eps.ctx.N));
    }
    jet::MCResidual mc = jet::mc_residual(eps);
    jet::BraneCompatReport compat = jet::brane_compat_check(eps);
    ordered_json j;
    j["mc_zero"] = mc.is_zero();
    j["mc_residual_norm"] = io::rational_to_string(mc.majorant_norm(eps.ctx.r));
    ordered_json parts;
    const std::pair<const char *, const jet::MixedTensor *> named[] = {
        {"30", &mc.r30}, {"21", &mc.r21}, {"12", &mc.r12}, {"03", &mc.r03}};
    for (const auto &[name, t] : named) {
        parts[name] = ordered_json::parse(io::tensor_to_json(*t))["terms"];
    }
    j["parts"] = parts;
    j["brane_compatible"] = compat.ok();
    if (!compat.ok()) {
        j["brane_witness"] = compat.witness;
    }
    write_output(o.output, j.dump(2) + "\n");
    return mc.is_zero() ? exit_ok : exit_precondition;
}

int cmd_prop_test(const Options &o)
{
    if (o.suite.empty()) {
        throw UsageError("prop-test needs --suite (one of the suite names, or 'all')");
    }
    std::vector<std::string> names;
    if (o.suite == "all") {
        names = suites::suite_names();
    } else if (suites::is_suite(o.suite)) {
        names = {o.suite};
    } else {
        throw UsageError("unknown suite '" + o.suite + "'");
    }
    suites::SuiteOptions so;
    so.seed = o.seed;
    so.count = o.count < 0 ? 100 : o.count;
    so.N = max_degree(8);
    std::string text;
    bool ok = true;
    for (const auto &name : names) {
        suites::SuiteReport r = suites::run_suite(name, so);
        text += suites::report_to_json(r);
        if (!r.ok() && ok) {
            ok = false;
            std::cerr << "gcb prop-test: " << name << " case " << r.first_failure << ": "
                      << r.failure_reason << "\n"
                      << r.counterexample << "\n";
        }
    }
    write_output(o.output, text);
    return ok ? exit_ok : exit_fail;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"gcb: brane normal forms for generalized complex structures"};
    app.require_subcommand(1);
    Options o;

    auto *ls = app.add_subcommand("linear-split", "Split a linear GC brane (or a seeded corpus)");
    ls->add_option("--input", o.input, "Instance JSON; omit to run a seeded corpus");
    ls->add_option("--output", o.output, "Report path (default stdout)");
    ls->add_option("--seed", o.seed, "Corpus seed");
    ls->add_option("--count", o.count, "Corpus size (default 100)");

    auto *nz = app.add_subcommand("normalize", "Run the normalization iteration");
    nz->add_option("--input", o.input, "Deformation JSON")->required();
    nz->add_option("--params", o.params, "NormalizationParams JSON");
    nz->add_option("--output", o.output,
                   "Output prefix: writes PREFIX.csv, PREFIX.eps_final.json, PREFIX.flow.json");
    nz->add_option("--target-order", o.target_order, "Override params.target_order");

    auto *hv = app.add_subcommand("hopf-verify", "Exact checks for the Hopf surface example");
    hv->add_option("--output", o.output, "Report path (default stdout)");
    hv->add_flag("--flip-B-sign", o.flip_b, "Mutation: flip the sign of B");

    auto *mc = app.add_subcommand("mc-check", "Maurer-Cartan residual and brane compatibility");
    mc->add_option("--input", o.input, "Deformation JSON")->required();
    mc->add_option("--output", o.output, "Report path (default stdout)");

    auto *pt = app.add_subcommand("prop-test", "Seeded property suites");
    pt->add_option("--suite", o.suite, "Suite name or 'all'")->required();
    pt->add_option("--seed", o.seed, "Seed");
    pt->add_option("--count", o.count, "Cases per suite (default 100)");
    pt->add_option("--output", o.output, "Report path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return exit_parse;
    }

    std::string cmd = app.get_subcommands().front()->get_name();
    try {
        if (cmd == "linear-split") {
            return cmd_linear_split(o);
        }
        if (cmd == "normalize") {
            return cmd_normalize(o);
        }
        if (cmd == "hopf-verify") {
            return cmd_hopf_verify(o);
        }
        if (cmd == "mc-check") {
            return cmd_mc_check(o);
        }
        return cmd_prop_test(o);
    } catch (const io::ParseError &e) {
        std::cerr << "gcb " << cmd << ": parse error: " << e.what() << "\n";
        if (cmd == "linear-split") {
            write_output(o.output, error_json("parse", "", e.what()));
        }
        return exit_parse;
    } catch (const UsageError &e) {
        std::cerr << "gcb " << cmd << ": " << e.what() << "\n";
        return exit_parse;
    } catch (const PreconditionError &e) {
        std::cerr << "gcb " << cmd << ": precondition '" << e.clause() << "' failed: " << e.what()
                  << "\n";
        if (cmd == "linear-split") {
            write_output(o.output, error_json("precondition", e.clause(), e.what()));
        }
        return exit_precondition;
    } catch (const std::exception &e) {
        std::cerr << "gcb " << cmd << ": " << e.what() << "\n";
        return exit_fail;
    }
}
