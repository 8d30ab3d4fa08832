#pragma once

// Object-notation encoding shared by the event log, HTTP bodies, scenario
// files and CLI output. Field order is fixed so that encode -> decode ->
// encode is byte-identical.

#include "json.hpp"

#include "trajplan/mcda/criteria.hpp"
#include "trajplan/mcda/matrix.hpp"
#include "trajplan/mcda/topsis.hpp"

namespace trajplan {

using Json = nlohmann::ordered_json;

namespace mcda {

Json to_json(const Threshold& t);
Json to_json(const Criterion& c);
Json to_json(const CriteriaSet& set);
Json to_json(const Violation& v);
Json to_json(const ViolationReport& r);
Json to_json(const std::vector<ViolationReport>& reports);
Json to_json(const Ranking& r);

Threshold threshold_from_json(const Json& j);

// Exact decode of stored criteria ("weight" fields, no renormalization).
CriteriaSet criteria_from_json(const Json& j);

// Operator input: "priority" (or "weight", treated as a priority) per
// criterion, normalized over the set. Accepts an array or {"criteria": [...]}.
std::vector<CriterionSpec> criterion_specs_from_json(const Json& j);
CriteriaSet criteria_from_priorities_json(const Json& j, std::vector<std::string>* warnings = nullptr);

ViolationReport violation_report_from_json(const Json& j);
std::vector<ViolationReport> violation_reports_from_json(const Json& j);
Ranking ranking_from_json(const Json& j);

}  // namespace mcda
}  // namespace trajplan
