#pragma once

#include <json.hpp>

#include "srptlab/analysis.hpp"
#include "srptlab/model.hpp"
#include "srptlab/oracle.hpp"
#include "srptlab/workload.hpp"

namespace srptlab {

using Json = nlohmann::ordered_json;

// Rationals are written as "a/b" strings; readers also accept "a" and JSON integers.
Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json to_json(const Instance& instance);
Instance instance_from_json(const Json& j);

// {instance, speed, segments: [{start, end, assignment}], completions}
// assignment entries are job ids or null for idle machines.
Json to_json(const ExecutionTrace& trace);
ExecutionTrace trace_from_json(const Json& j);

// Trace JSON plus "objective", "k", "exact" and "class_note".
Json to_json(const OracleResult& result);

Json to_json(const FlowSummary& summary);

// {check, params, n_events, worst_slack, verdict, witnesses[]}
Json to_json(const PotentialReport& report);

Json to_json(const GenSpec& spec);
GenSpec genspec_from_json(const Json& j);

}  // namespace srptlab
