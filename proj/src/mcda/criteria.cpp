#include "trajplan/mcda/criteria.hpp"

#include <cmath>
#include <set>

#include "trajplan/error.hpp"

namespace trajplan {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::AllInfeasible: return "AllInfeasible";
        case ErrorCode::EmptySession: return "EmptySession";
        case ErrorCode::InvalidCriteria: return "InvalidCriteria";
        case ErrorCode::InvalidMatrix: return "InvalidMatrix";
        case ErrorCode::MalformedFrame: return "MalformedFrame";
        case ErrorCode::UnknownCriterion: return "UnknownCriterion";
        case ErrorCode::NonFiniteValue: return "NonFiniteValue";
        case ErrorCode::SessionNotFound: return "SessionNotFound";
        case ErrorCode::CorruptLog: return "CorruptLog";
        case ErrorCode::UnknownScenario: return "UnknownScenario";
        case ErrorCode::InvalidScenarioFile: return "InvalidScenarioFile";
        case ErrorCode::NotReady: return "NotReady";
        case ErrorCode::UnknownAlternative: return "UnknownAlternative";
        case ErrorCode::InvalidRequest: return "InvalidRequest";
    }
    return "Unknown";
}

namespace mcda {

namespace {

[[noreturn]] void invalid(const std::string& what) {
    throw Error(ErrorCode::InvalidCriteria, what);
}

}  // namespace

CriteriaSet::CriteriaSet(std::vector<Criterion> criteria) : criteria_(std::move(criteria)) {
    if (criteria_.empty()) invalid("criteria set must contain at least one criterion");
    std::set<std::string> seen;
    double sum = 0.0;
    for (const auto& c : criteria_) {
        if (c.id.empty()) invalid("criterion id must not be empty");
        if (!seen.insert(c.id).second) invalid("duplicate criterion id '" + c.id + "'");
        if (!std::isfinite(c.weight) || c.weight < 0.0)
            invalid("criterion '" + c.id + "' has a negative or non-finite weight");
        if (c.threshold && !std::isfinite(c.threshold->value))
            invalid("criterion '" + c.id + "' has a non-finite threshold");
        sum += c.weight;
    }
    if (std::abs(sum - 1.0) > kWeightSumTolerance)
        invalid("criterion weights sum to " + std::to_string(sum) + ", expected 1");
}

std::vector<double> normalize_priorities(std::span<const double> priorities) {
    double total = 0.0;
    for (double p : priorities) {
        if (!std::isfinite(p) || p < 0.0) invalid("priorities must be finite and nonnegative");
        total += p;
    }
    if (!(total > 0.0)) invalid("priorities must not all be zero");
    std::vector<double> weights;
    weights.reserve(priorities.size());
    for (double p : priorities) weights.push_back(p / total);
    return weights;
}

CriteriaSet CriteriaSet::from_priorities(std::span<const CriterionSpec> specs,
                                         std::vector<std::string>* warnings) {
    std::vector<double> priorities;
    priorities.reserve(specs.size());
    for (const auto& s : specs) priorities.push_back(s.priority);
    if (specs.empty()) invalid("criteria set must contain at least one criterion");
    auto weights = normalize_priorities(priorities);

    double total = 0.0;
    for (double p : priorities) total += p;
    if (warnings && std::abs(total - 100.0) > 0.5) {
        warnings->push_back("priorities sum to " + std::to_string(total) +
                            " instead of 100; normalized by their sum");
    }

    std::vector<Criterion> criteria;
    criteria.reserve(specs.size());
    for (std::size_t j = 0; j < specs.size(); ++j) {
        criteria.push_back({specs[j].id, specs[j].name.empty() ? specs[j].id : specs[j].name,
                            specs[j].direction, weights[j], specs[j].threshold});
    }
    return CriteriaSet(std::move(criteria));
}

std::optional<std::size_t> CriteriaSet::index_of(std::string_view id) const {
    for (std::size_t j = 0; j < criteria_.size(); ++j)
        if (criteria_[j].id == id) return j;
    return std::nullopt;
}

std::vector<double> CriteriaSet::weights() const {
    std::vector<double> w;
    w.reserve(criteria_.size());
    for (const auto& c : criteria_) w.push_back(c.weight);
    return w;
}

std::vector<std::string> CriteriaSet::ids() const {
    std::vector<std::string> out;
    out.reserve(criteria_.size());
    for (const auto& c : criteria_) out.push_back(c.id);
    return out;
}

CriteriaSet CriteriaSet::with_weights(std::span<const double> weights) const {
    if (weights.size() != criteria_.size()) invalid("weight vector length does not match criteria");
    auto copy = criteria_;
    for (std::size_t j = 0; j < copy.size(); ++j) copy[j].weight = weights[j];
    return CriteriaSet(std::move(copy));
}

CriteriaSet CriteriaSet::without(std::size_t j) const {
    if (j >= criteria_.size() || criteria_[j].weight != 0.0)
        invalid("only a zero-weight criterion can be removed without renormalizing");
    auto copy = criteria_;
    copy.erase(copy.begin() + static_cast<std::ptrdiff_t>(j));
    return CriteriaSet(std::move(copy));
}

std::string_view to_string(Direction d) { return d == Direction::Benefit ? "benefit" : "cost"; }
std::string_view to_string(BoundKind k) { return k == BoundKind::Max ? "max" : "min"; }

Direction parse_direction(std::string_view s) {
    if (s == "benefit" || s == "Benefit") return Direction::Benefit;
    if (s == "cost" || s == "Cost") return Direction::Cost;
    invalid("unknown direction '" + std::string(s) + "'");
}

BoundKind parse_bound_kind(std::string_view s) {
    if (s == "max" || s == "Max") return BoundKind::Max;
    if (s == "min" || s == "Min") return BoundKind::Min;
    invalid("unknown threshold kind '" + std::string(s) + "'");
}

}  // namespace mcda
}  // namespace trajplan
