#pragma once

#include <string>

#include "json.hpp"

#include "gonlab/divisor.hpp"
#include "gonlab/graph.hpp"
#include "gonlab/harmonic.hpp"
#include "gonlab/rank.hpp"
#include "gonlab/reduction.hpp"

namespace gonlab::io {

using Json = nlohmann::ordered_json;

// Every parser throws ParseError on malformed input and the module's own
// error (InvalidGraph, InvalidDivisor, ...) on semantic violations.

Json to_json(const MetricGraph& g);
MetricGraph graph_from_json(const Json& j);

Json to_json(const PointRef& p);
PointRef point_from_json(const Json& j);

Json to_json(const Divisor& d);
Divisor divisor_from_json(const Json& j);

Json to_json(const GraphMorphism& phi);
GraphMorphism morphism_from_json(const Json& j);

Json to_json(const ExhaustionRecord& r);
Json to_json(const GonalityCertificate& c);
Json to_json(const BurnReport& r);
Json to_json(const HarmonicReport& r);
Json to_json(const LiftabilityCertificate& c);

/// Undirected DOT with lengths as edge labels; infinite edges dashed.
/// Nonzero divisor coefficients at vertices are shown in vertex labels.
std::string to_dot(const MetricGraph& g, const Divisor& d = {});

Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

} // namespace gonlab::io
