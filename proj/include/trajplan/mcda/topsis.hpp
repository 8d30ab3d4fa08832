#pragma once

#include <span>
#include <string>
#include <vector>

#include "trajplan/error.hpp"
#include "trajplan/mcda/criteria.hpp"
#include "trajplan/mcda/kernels.hpp"
#include "trajplan/mcda/matrix.hpp"

namespace trajplan::mcda {

struct Violation {
    std::string criterion_id;
    double measured = 0.0;
    Threshold threshold;

    bool operator==(const Violation&) const = default;
};

// Threshold violations of one alternative; empty iff it is feasible.
struct ViolationReport {
    AlternativeId alternative = 0;
    std::vector<Violation> violations;

    bool feasible() const { return violations.empty(); }
    bool operator==(const ViolationReport&) const = default;
};

class AllInfeasibleError : public Error {
public:
    explicit AllInfeasibleError(std::vector<ViolationReport> reports);
    const std::vector<ViolationReport>& reports() const { return reports_; }

private:
    std::vector<ViolationReport> reports_;
};

struct FeasibleSet {
    DecisionMatrix matrix;
    std::vector<ViolationReport> excluded;
};

struct IdealPair {
    std::vector<double> positive;  // A+
    std::vector<double> negative;  // A-
};

struct ClosenessResult {
    std::vector<double> scores;
    bool degenerate = false;  // some row had S+ + S- == 0 and was forced to 1
};

struct Ranking {
    std::vector<AlternativeId> ids;  // scored alternatives, matrix row order
    std::vector<double> scores;      // closeness C_i aligned with ids
    std::vector<AlternativeId> order;
    AlternativeId best_id = 0;
    bool degenerate = false;
    std::vector<std::string> zero_columns;
    std::vector<ViolationReport> excluded;

    double score_of(AlternativeId id) const;
    bool contains(AlternativeId id) const;
    bool operator==(const Ranking&) const = default;
};

ViolationReport check_thresholds(const CriteriaSet& criteria, const Alternative& alternative);

/// Drops alternatives violating any threshold. Throws AllInfeasibleError
/// carrying every report when nothing survives.
FeasibleSet filter_feasible(const DecisionMatrix& matrix);

/// Vector (L2) normalization per column; a zero-norm column maps to zeros
/// and is listed in `zero_columns`.
NormalizedMatrix normalize(const DecisionMatrix& matrix, Execution exec = Execution::Auto);

WeightedNormalizedMatrix apply_weights(const DenseMatrix& normalized, const CriteriaSet& criteria,
                                       Execution exec = Execution::Auto);

IdealPair ideal_points(const WeightedNormalizedMatrix& v, const CriteriaSet& criteria,
                       Execution exec = Execution::Auto);

/// C_i = S-_i / (S+_i + S-_i) with Euclidean separations. A row at zero
/// distance from both ideals scores 1 and sets `degenerate`.
ClosenessResult closeness_scores(const WeightedNormalizedMatrix& v, const IdealPair& ideals,
                                 Execution exec = Execution::Auto);

/// Descending by score, ties broken by ascending id.
Ranking rank(std::span<const AlternativeId> ids, std::span<const double> scores);

/// Full pipeline: feasibility filter, normalization, weighting, ideal
/// points, closeness, ranking. Deterministic for identical input bits,
/// whichever execution policy is chosen.
Ranking topsis(const DecisionMatrix& matrix, Execution exec = Execution::Auto);

/// Scores many independent matrices, distributing whole matrices across
/// threads under Parallel. Infeasible matrices yield std::nullopt.
std::vector<std::optional<Ranking>> topsis_batch(std::span<const DecisionMatrix> matrices,
                                                 Execution exec = Execution::Auto);

}  // namespace trajplan::mcda
