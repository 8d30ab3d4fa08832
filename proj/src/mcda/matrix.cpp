#include "trajplan/mcda/matrix.hpp"

#include <cmath>
#include <set>

#include "trajplan/error.hpp"

namespace trajplan::mcda {

DecisionMatrix::DecisionMatrix(CriteriaSet criteria, std::vector<Alternative> alternatives)
    : criteria_(std::move(criteria)), alternatives_(std::move(alternatives)) {
    if (alternatives_.empty())
        throw Error(ErrorCode::InvalidMatrix, "decision matrix needs at least one alternative");
    std::set<AlternativeId> seen;
    for (const auto& a : alternatives_) {
        if (a.id < 1)
            throw Error(ErrorCode::InvalidMatrix,
                        "alternative id " + std::to_string(a.id) + " is not >= 1");
        if (!seen.insert(a.id).second)
            throw Error(ErrorCode::InvalidMatrix,
                        "duplicate alternative id " + std::to_string(a.id));
        if (a.values.size() != criteria_.size())
            throw Error(ErrorCode::InvalidMatrix,
                        "alternative " + std::to_string(a.id) + " has " +
                            std::to_string(a.values.size()) + " values for " +
                            std::to_string(criteria_.size()) + " criteria");
        for (double v : a.values)
            if (!std::isfinite(v))
                throw Error(ErrorCode::InvalidMatrix,
                            "alternative " + std::to_string(a.id) + " has a non-finite value");
    }
}

const Alternative* DecisionMatrix::find(AlternativeId id) const {
    for (const auto& a : alternatives_)
        if (a.id == id) return &a;
    return nullptr;
}

DenseMatrix DecisionMatrix::values() const {
    DenseMatrix out(rows(), cols());
    for (std::size_t i = 0; i < rows(); ++i)
        for (std::size_t j = 0; j < cols(); ++j) out(i, j) = alternatives_[i].values[j];
    return out;
}

DecisionMatrix DecisionMatrix::with_criteria(CriteriaSet criteria) const {
    return DecisionMatrix(std::move(criteria), alternatives_);
}

}  // namespace trajplan::mcda
