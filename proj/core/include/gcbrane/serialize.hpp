#ifndef GCBRANE_SERIALIZE_HPP
#define GCBRANE_SERIALIZE_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include <gcbrane/courant.hpp>
#include <gcbrane/gen_flow.hpp>
#include <gcbrane/generators.hpp>
#include <gcbrane/linear_gca.hpp>
#include <gcbrane/normalizer.hpp>
#include <gcbrane/tensor.hpp>

// Text formats. Rationals are always written as "p/q" strings; readers also accept "p".
namespace gcb::io
{

class ParseError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

std::string rational_to_string(const Rational &q);
Rational parse_rational(const std::string &s);

// Linear instance: {"n", "gc" | ("I", "P", "B"), "S_basis", "tau_basis"?, "F"?}.
// n is dim V; gc is 2n x 2n; S_basis lists vectors of V; tau_basis lists vectors of V + V*.
// Without tau_basis, tau is built from F (default 0).
gen::LinearInstance parse_linear_instance(const std::string &text);
std::string linear_instance_to_json(const gen::LinearInstance &inst);
std::string linear_report_to_json(const linear::LinearSplitting &split,
                                  const linear::SplitReport &rep);

// Jet tensor terms: {"component", "p_idx", "q_idx", "z_deg", "zbar_deg", "re", "im"}, indices 1-based.
std::string tensor_to_json(const jet::MixedTensor &t);
jet::MixedTensor parse_tensor(const std::string &text);
std::string deformation_to_json(const jet::Deformation &eps);
// Terms must have component 20, 11 or 02.
jet::Deformation parse_deformation(const std::string &text);

// {"n","k","N","r","X": [...], "xi": [...]}, entries {"slot", "z_deg", "zbar_deg", "re", "im"},
// slot 1..2n over (z, zbar).
std::string field_to_json(const jet::GeneralizedVectorField &V);
jet::GeneralizedVectorField parse_field(const std::string &text);
std::string flow_to_json(const jet::GeneralizedFlow &f);

// {"max_iterations", "target_order", "delta_schedule"}; missing keys keep defaults.
jet::NormalizationParams parse_params(const std::string &text);
std::string params_to_json(const jet::NormalizationParams &p);

std::string csv_header();
std::string csv_row(const jet::IterationRecord &r);
std::string normalization_csv(const std::vector<jet::IterationRecord> &rows);

} // namespace gcb::io

#endif
