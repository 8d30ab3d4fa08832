#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace trajplan::mcda {

enum class Direction { Benefit, Cost };

// Feasibility bound on a raw measurement. Independent of Direction: a Cost
// criterion may carry a Min bound and vice versa.
enum class BoundKind { Max, Min };

struct Threshold {
    BoundKind kind = BoundKind::Max;
    double value = 0.0;

    bool admits(double measured) const {
        return kind == BoundKind::Max ? measured <= value : measured >= value;
    }

    bool operator==(const Threshold&) const = default;
};

struct Criterion {
    std::string id;
    std::string name;
    Direction direction = Direction::Benefit;
    double weight = 0.0;
    std::optional<Threshold> threshold;

    bool operator==(const Criterion&) const = default;
};

// Operator-facing input: a percent priority rather than a normalized weight.
struct CriterionSpec {
    std::string id;
    std::string name;
    Direction direction = Direction::Benefit;
    double priority = 0.0;
    std::optional<Threshold> threshold;
};

inline constexpr double kWeightSumTolerance = 1e-12;

/// Ordered, validated list of criteria. Column j of every decision matrix
/// built over this set refers to `criteria()[j]`.
///
/// Invariants checked on construction: at least one criterion, unique ids,
/// nonnegative finite weights summing to 1 within kWeightSumTolerance.
class CriteriaSet {
public:
    explicit CriteriaSet(std::vector<Criterion> criteria);

    /// Converts percent priorities to weights by dividing by their sum.
    /// A sum drifting more than 0.5% from 100 is accepted and reported in
    /// `warnings` when given.
    static CriteriaSet from_priorities(std::span<const CriterionSpec> specs,
                                       std::vector<std::string>* warnings = nullptr);

    const std::vector<Criterion>& criteria() const { return criteria_; }
    std::size_t size() const { return criteria_.size(); }
    const Criterion& operator[](std::size_t j) const { return criteria_[j]; }

    std::optional<std::size_t> index_of(std::string_view id) const;
    std::vector<double> weights() const;
    std::vector<std::string> ids() const;

    /// Same criteria with replaced weights (must satisfy the sum invariant).
    CriteriaSet with_weights(std::span<const double> weights) const;

    /// Same criteria with column `j` removed and the remaining weights kept
    /// as-is. Only valid when criterion j carries zero weight.
    CriteriaSet without(std::size_t j) const;

    bool operator==(const CriteriaSet&) const = default;

private:
    std::vector<Criterion> criteria_;
};

/// Divides every entry by the total. Throws InvalidCriteria on negative,
/// non-finite, or all-zero input.
std::vector<double> normalize_priorities(std::span<const double> priorities);

std::string_view to_string(Direction d);
std::string_view to_string(BoundKind k);
Direction parse_direction(std::string_view s);
BoundKind parse_bound_kind(std::string_view s);

}  // namespace trajplan::mcda
