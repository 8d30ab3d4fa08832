#pragma once

// Numeric kernels behind the TOPSIS pipeline.
//
// Each kernel exists twice: a plain serial loop nest (the reference) and an
// OpenMP version that splits work over columns or rows. Both accumulate every
// sum in the same element order, so they return bit-identical results; the
// tests and the benchmark compare them directly.

#include <span>
#include <vector>

#include "trajplan/mcda/criteria.hpp"
#include "trajplan/mcda/matrix.hpp"

namespace trajplan::mcda {

enum class Execution { Serial, Parallel, Auto };

// Auto switches to the parallel kernels at this many matrix cells.
inline constexpr std::size_t kParallelCellThreshold = 1 << 14;

Execution resolve(Execution exec, std::size_t cells);

struct Separations {
    std::vector<double> positive;  // S+ per row
    std::vector<double> negative;  // S- per row
};

namespace serial {

NormalizedMatrix normalize_columns(const DenseMatrix& raw);
DenseMatrix weight_columns(const DenseMatrix& normalized, std::span<const double> weights);
// Per-column max and min of `v`.
void column_extremes(const DenseMatrix& v, std::vector<double>& max, std::vector<double>& min);
Separations separations(const DenseMatrix& v, std::span<const double> positive_ideal,
                        std::span<const double> negative_ideal);

}  // namespace serial

namespace parallel {

NormalizedMatrix normalize_columns(const DenseMatrix& raw);
DenseMatrix weight_columns(const DenseMatrix& normalized, std::span<const double> weights);
void column_extremes(const DenseMatrix& v, std::vector<double>& max, std::vector<double>& min);
Separations separations(const DenseMatrix& v, std::span<const double> positive_ideal,
                        std::span<const double> negative_ideal);

// Number of worker threads the parallel kernels will use (1 without OpenMP).
int worker_count();

}  // namespace parallel

}  // namespace trajplan::mcda
