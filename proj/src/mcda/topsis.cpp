#include "trajplan/mcda/topsis.hpp"

#include <algorithm>
#include <numeric>

namespace trajplan::mcda {

namespace {

std::string describe(const std::vector<ViolationReport>& reports) {
    std::string msg = "every alternative violates a threshold";
    for (const auto& r : reports) {
        msg += "; alternative " + std::to_string(r.alternative) + ":";
        for (const auto& v : r.violations) {
            msg += " " + v.criterion_id + "=" + std::to_string(v.measured) +
                   (v.threshold.kind == BoundKind::Max ? " > " : " < ") +
                   std::to_string(v.threshold.value);
        }
    }
    return msg;
}

NormalizedMatrix normalize_dense(const DenseMatrix& raw, Execution exec) {
    return resolve(exec, raw.rows() * raw.cols()) == Execution::Parallel
               ? parallel::normalize_columns(raw)
               : serial::normalize_columns(raw);
}

}  // namespace

AllInfeasibleError::AllInfeasibleError(std::vector<ViolationReport> reports)
    : Error(ErrorCode::AllInfeasible, describe(reports)), reports_(std::move(reports)) {}

double Ranking::score_of(AlternativeId id) const {
    for (std::size_t i = 0; i < ids.size(); ++i)
        if (ids[i] == id) return scores[i];
    throw Error(ErrorCode::UnknownAlternative,
                "alternative " + std::to_string(id) + " is not in the ranking");
}

bool Ranking::contains(AlternativeId id) const {
    return std::find(ids.begin(), ids.end(), id) != ids.end();
}

ViolationReport check_thresholds(const CriteriaSet& criteria, const Alternative& alternative) {
    ViolationReport report{alternative.id, {}};
    for (std::size_t j = 0; j < criteria.size(); ++j) {
        const auto& t = criteria[j].threshold;
        if (t && !t->admits(alternative.values[j]))
            report.violations.push_back({criteria[j].id, alternative.values[j], *t});
    }
    return report;
}

FeasibleSet filter_feasible(const DecisionMatrix& matrix) {
    std::vector<Alternative> kept;
    std::vector<ViolationReport> excluded;
    for (const auto& alt : matrix.alternatives()) {
        auto report = check_thresholds(matrix.criteria(), alt);
        if (report.feasible())
            kept.push_back(alt);
        else
            excluded.push_back(std::move(report));
    }
    if (kept.empty()) throw AllInfeasibleError(std::move(excluded));
    return {DecisionMatrix(matrix.criteria(), std::move(kept)), std::move(excluded)};
}

NormalizedMatrix normalize(const DecisionMatrix& matrix, Execution exec) {
    return normalize_dense(matrix.values(), exec);
}

WeightedNormalizedMatrix apply_weights(const DenseMatrix& normalized, const CriteriaSet& criteria,
                                       Execution exec) {
    const auto weights = criteria.weights();
    auto values = resolve(exec, normalized.rows() * normalized.cols()) == Execution::Parallel
                      ? parallel::weight_columns(normalized, weights)
                      : serial::weight_columns(normalized, weights);
    return {std::move(values), criteria.ids()};
}

IdealPair ideal_points(const WeightedNormalizedMatrix& v, const CriteriaSet& criteria,
                       Execution exec) {
    std::vector<double> max, min;
    if (resolve(exec, v.values.rows() * v.values.cols()) == Execution::Parallel)
        parallel::column_extremes(v.values, max, min);
    else
        serial::column_extremes(v.values, max, min);

    IdealPair ideals{std::vector<double>(criteria.size()), std::vector<double>(criteria.size())};
    for (std::size_t j = 0; j < criteria.size(); ++j) {
        const bool benefit = criteria[j].direction == Direction::Benefit;
        ideals.positive[j] = benefit ? max[j] : min[j];
        ideals.negative[j] = benefit ? min[j] : max[j];
    }
    return ideals;
}

ClosenessResult closeness_scores(const WeightedNormalizedMatrix& v, const IdealPair& ideals,
                                 Execution exec) {
    const auto sep = resolve(exec, v.values.rows() * v.values.cols()) == Execution::Parallel
                         ? parallel::separations(v.values, ideals.positive, ideals.negative)
                         : serial::separations(v.values, ideals.positive, ideals.negative);
    ClosenessResult out{std::vector<double>(v.values.rows()), false};
    for (std::size_t i = 0; i < out.scores.size(); ++i) {
        const double total = sep.positive[i] + sep.negative[i];
        if (total == 0.0) {
            out.scores[i] = 1.0;
            out.degenerate = true;
        } else {
            out.scores[i] = sep.negative[i] / total;
        }
    }
    return out;
}

Ranking rank(std::span<const AlternativeId> ids, std::span<const double> scores) {
    Ranking out;
    out.ids.assign(ids.begin(), ids.end());
    out.scores.assign(scores.begin(), scores.end());

    std::vector<std::size_t> idx(ids.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return ids[a] < ids[b];
    });
    out.order.reserve(idx.size());
    for (auto i : idx) out.order.push_back(ids[i]);
    if (!out.order.empty()) out.best_id = out.order.front();
    return out;
}

Ranking topsis(const DecisionMatrix& matrix, Execution exec) {
    auto feasible = filter_feasible(matrix);
    const auto& m = feasible.matrix;
    exec = resolve(exec, m.rows() * m.cols());

    auto normalized = normalize(m, exec);
    auto weighted = apply_weights(normalized.values, m.criteria(), exec);
    auto ideals = ideal_points(weighted, m.criteria(), exec);
    auto closeness = closeness_scores(weighted, ideals, exec);

    std::vector<AlternativeId> ids;
    ids.reserve(m.rows());
    for (const auto& a : m.alternatives()) ids.push_back(a.id);

    auto ranking = rank(ids, closeness.scores);
    ranking.degenerate = closeness.degenerate;
    for (auto j : normalized.zero_columns) ranking.zero_columns.push_back(m.criteria()[j].id);
    ranking.excluded = std::move(feasible.excluded);
    return ranking;
}

std::vector<std::optional<Ranking>> topsis_batch(std::span<const DecisionMatrix> matrices,
                                                 Execution exec) {
    std::vector<std::optional<Ranking>> out(matrices.size());
    const auto n = static_cast<std::ptrdiff_t>(matrices.size());
    auto score_one = [&](std::ptrdiff_t k) {
        try {
            out[k] = topsis(matrices[k], Execution::Serial);
        } catch (const AllInfeasibleError&) {
            out[k] = std::nullopt;
        }
    };
    if (exec == Execution::Serial) {
        for (std::ptrdiff_t k = 0; k < n; ++k) score_one(k);
    } else {
#pragma omp parallel for schedule(dynamic, 4)
        for (std::ptrdiff_t k = 0; k < n; ++k) score_one(k);
    }
    return out;
}

}  // namespace trajplan::mcda
