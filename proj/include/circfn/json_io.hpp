#pragma once

#include <json.hpp>
#include <string>

#include "circfn/characterize.hpp"
#include "circfn/circulant.hpp"
#include "circfn/funcalc.hpp"
#include "circfn/solver.hpp"
#include "circfn/spectral.hpp"

// JSON forms shared by the CLI and test fixtures. Complex numbers are
// [re, im] pairs everywhere. Readers throw FormatError naming the offending
// field.
namespace circfn::json_io {

using nlohmann::json;

json complex_to_json(Complex z);
Complex complex_from_json(const json& j, const std::string& field);

/// {"d": int, "row": [[re, im], ...]}
json to_json(const Circulant& x);
Circulant circulant_from_json(const json& j, const std::string& field = "circulant");

/// {"d": int, "values": [[re, im], ...]}
json to_json(const Spectrum& u);
Spectrum spectrum_from_json(const json& j, const std::string& field = "spectrum");

/// {"kind": "poly"|"rational"|"exppoly", "d": int, "P": [...], "Q": [...], "G": [...]}
/// Coefficient lists are leading-first. "kind" defaults to "poly".
json to_json(const CircFunction& f);
CircFunction function_from_json(const json& j, const std::string& field = "function");
CircPoly poly_from_json(const json& j, std::size_t d, const std::string& field);

json to_json(const EvalResult& r);
json to_json(const SolutionSet& s);
json to_json(const DivisorReport& r);
json to_json(const DegreeReport& r);
json to_json(const ZeroBoundReport& r);

const char* status_name(SolutionStatus s);

}  // namespace circfn::json_io
