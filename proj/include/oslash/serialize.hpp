#pragma once

#include "oslash/graph.hpp"
#include "oslash/measure.hpp"
#include "oslash/rational.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace oslash {

using Json = nlohmann::ordered_json;

// Rationals travel as [numerator, denominator] with arbitrary-size integers
// written as strings when they do not fit in 64 bits.
Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j);  // accepts [n, d], integers, decimal numbers and "p/q" strings

// Reals as decimal strings with 17 significant digits; "inf" for infinity.
Json real_to_json(double x);

Json rationals_to_json(const std::vector<Rational>& qs);
std::vector<Rational> rationals_from_json(const Json& j);

Json graph_to_json(const StGraph& g, const EdgeMeasure& nu, const std::vector<Rational>& lengths);
std::string graph_to_dot(const StGraph& g, const EdgeMeasure& nu, const std::vector<Rational>& lengths);

struct GraphFile {
    GraphPtr graph;
    std::optional<EdgeMeasure> nu;
    std::optional<std::vector<Rational>> lengths;
};

// {"vertices": [labels], "edges": [[src, dst], ...], "source": i, "sink": j,
//  "measure": [...], "lengths": [...]}; measure and lengths are optional.
GraphFile graph_from_json(const Json& j, StCheck st_check = StCheck::Enforce);

// One header line and one value line from the scalar top-level fields of a report.
std::string report_to_csv(const Json& report);

}  // namespace oslash
