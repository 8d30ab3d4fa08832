#pragma once

#include <string>

#include "trajplan/adaptive/session_state.hpp"

namespace trajplan::testing {

// Session state holding `matrix` at revision 1, built without the journal.
inline SessionState state_from(const mcda::DecisionMatrix& matrix, std::string id = "t") {
    SessionState s;
    s.id = std::move(id);
    s.criteria = matrix.criteria();
    s.column_last.assign(matrix.criteria().size(), std::nullopt);
    for (const auto& a : matrix.alternatives()) s.cells[a.id] = a.values;
    s.revision = 1;
    return s;
}

}  // namespace trajplan::testing
