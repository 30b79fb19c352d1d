#pragma once

// Machine-readable output. Every float is written as %.12e; non-finite
// values become the JSON strings "inf", "-inf" and "nan". Object fields keep
// insertion order, so identical inputs give byte-identical output.

#include <string>
#include <vector>

#include <json.hpp>

#include "brennan/exponents.hpp"
#include "brennan/functionals.hpp"
#include "brennan/quadrature.hpp"
#include "brennan/verifier.hpp"

namespace brennan::report {

using Json = nlohmann::ordered_json;

std::string format_double(double x);

// Serializes with two-space indentation and %.12e floats.
std::string dump(const Json& j);

Json number(double x);
Json to_json(Exponent p);
Json to_json(const OpenInterval& iv);
Json to_json(const KnownBounds& b);
Json to_json(const GradingSpec& g);
Json to_json(const IntegralEstimate& e);
Json to_json(const FunctionalResult& r);
Json to_json(const CriticalExponentReport& r);
Json to_json(const NormRatioReport& r);
Json to_json(const IsometryResult& r);
Json to_json(const DualityResult& r);
Json to_json(const EquivalenceTable& t);

// Top-level envelope: {command, inputs, result, diagnostics}.
Json envelope(const std::string& command, Json inputs, Json result, Json diagnostics);

// Columns s,value,tail,classification.
std::string scan_csv(const std::vector<FunctionalResult>& rows);

// Columns p,q,s_recovered,integral,classification,kpq,max_ratio,bound_holds.
std::string equivalence_csv(const EquivalenceTable& t);

}  // namespace brennan::report
