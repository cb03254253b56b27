#pragma once

#include <json.hpp>

#include <string>

#include "cstnu/dc_check.hpp"
#include "cstnu/network.hpp"
#include "cstnu/propagation.hpp"
#include "cstnu/semantics.hpp"
#include "cstnu/stn.hpp"
#include "cstnu/workflow.hpp"

namespace cstnu {

using Json = nlohmann::ordered_json;

/// Accepts a string (`"3/2"`, `"1.5"`) or a JSON number.
Rational rational_from_json(const Json& value);
Json rational_to_json(const Rational& value);

/// Throws ParseError on malformed documents and InvalidNetwork on dangling
/// ids or duplicate time-points.
Network network_from_json(const Json& doc);
Json network_to_json(const Network& network);
/// STN in the network format, every label `[]`, plus an `origin` per constraint.
Json stn_to_json(const Stn& stn);

Json schedule_to_json(const Schedule& schedule);
Json strategy_to_json(const ExecutionStrategy& strategy);
/// Scenarios are read over the network's letters; situations must have one
/// duration per link.
ExecutionStrategy strategy_from_json(const Json& doc, const Network& network);

Json report_to_json(const ValidationReport& report);
Json propagation_to_json(const Network& network, const PropagationResult& result);
Json trace_to_json(const Network& network, const PropagationResult& result);
Json dc_result_to_json(const Network& network, const DcResult& result);
Json compilation_map_to_json(const CompilationMap& map);

/// Reads a file (or stdin for "-") and parses it as JSON. Throws Error.
Json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);

}  // namespace cstnu
