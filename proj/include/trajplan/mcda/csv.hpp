#pragma once

#include <string>
#include <string_view>

#include "trajplan/mcda/matrix.hpp"

namespace trajplan::mcda {

/// Reads a decision matrix from CSV: the header names the id column first
/// and then criterion ids; each row is `alternative id, values...`. Header
/// columns are matched to `criteria` by id, in any order. A missing or
/// unknown column throws InvalidMatrix naming it.
DecisionMatrix read_matrix_csv(std::string_view text, const CriteriaSet& criteria);

/// Writes the matrix with shortest round-trip decimal formatting, so that
/// read_matrix_csv(write_matrix_csv(m)) reproduces every value exactly.
std::string write_matrix_csv(const DecisionMatrix& matrix);

// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);

}  // namespace trajplan::mcda
