#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trajplan/mcda/criteria.hpp"

namespace trajplan::mcda {

using AlternativeId = std::int64_t;

// Row-major m x n block of doubles.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    std::span<const double> data() const { return data_; }

    bool operator==(const DenseMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

struct Alternative {
    AlternativeId id = 0;
    std::optional<std::string> label;
    std::vector<double> values;

    bool operator==(const Alternative&) const = default;
};

/// Raw measurements: one Alternative per row, one Criterion per column.
///
/// Construction validates at least one alternative, ids >= 1 and unique,
/// rectangular rows and finite values; violations throw InvalidMatrix.
class DecisionMatrix {
public:
    DecisionMatrix(CriteriaSet criteria, std::vector<Alternative> alternatives);

    const CriteriaSet& criteria() const { return criteria_; }
    const std::vector<Alternative>& alternatives() const { return alternatives_; }
    std::size_t rows() const { return alternatives_.size(); }
    std::size_t cols() const { return criteria_.size(); }

    const Alternative* find(AlternativeId id) const;
    DenseMatrix values() const;

    DecisionMatrix with_criteria(CriteriaSet criteria) const;

    bool operator==(const DecisionMatrix&) const = default;

private:
    CriteriaSet criteria_;
    std::vector<Alternative> alternatives_;
};

struct NormalizedMatrix {
    DenseMatrix values;
    // Columns whose L2 norm was zero; their entries are all 0.
    std::vector<std::size_t> zero_columns;
};

struct WeightedNormalizedMatrix {
    DenseMatrix values;
    std::vector<std::string> criterion_ids;
};

}  // namespace trajplan::mcda
