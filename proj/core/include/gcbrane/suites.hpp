#ifndef GCBRANE_SUITES_HPP
#define GCBRANE_SUITES_HPP

#include <cstdint>
#include <string>
#include <vector>

// Seeded property suites shared by the prop-test command and the test binaries.
namespace gcb::suites
{

struct SuiteOptions {
    std::uint64_t seed = 1;
    int count = 100;
    // Jet truncation order.
    int N = 8;
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    int N = 0;
    int count = 0;
    int passed = 0;
    // Index and JSON of the first failing case; empty when all pass.
    int first_failure = -1;
    std::string counterexample;
    std::string failure_reason;
    // Cases of a negative control (lemma applied outside its hypotheses) and how many broke it.
    int control_cases = 0;
    int control_violations = 0;
    std::string control_example;

    bool ok() const { return passed == count; }
};

const std::vector<std::string> &suite_names();
bool is_suite(const std::string &name);
// Throws std::invalid_argument for an unknown suite.
SuiteReport run_suite(const std::string &name, const SuiteOptions &opts);
std::string report_to_json(const SuiteReport &r);

} // namespace gcb::suites

#endif
