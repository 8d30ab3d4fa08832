#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "trajplan/mcda/json_io.hpp"
#include "trajplan/mcda/topsis.hpp"

namespace trajplan {

using Revision = std::uint64_t;
using Timestamp = std::int64_t;  // milliseconds since the Unix epoch

namespace adaptive {

using mcda::AlternativeId;

struct Recommendation {
    std::string session_id;
    mcda::Ranking ranking;
    AlternativeId recommended_id = 0;  // == ranking.best_id
    Timestamp generated_at = 0;
    Revision matrix_revision = 0;

    bool operator==(const Recommendation&) const = default;
};

enum class Verdict { Accepted, Overridden };

struct FeedbackEvent {
    std::string session_id;
    AlternativeId recommended_id = 0;
    AlternativeId chosen_id = 0;
    Verdict verdict = Verdict::Accepted;  // Accepted iff chosen == recommended
    Timestamp timestamp = 0;

    bool operator==(const FeedbackEvent&) const = default;
};

FeedbackEvent make_feedback(std::string session_id, AlternativeId recommended_id,
                            AlternativeId chosen_id, Timestamp timestamp);

struct Alert {
    std::string session_id;
    AlternativeId chosen_id = 0;
    AlternativeId recommended_id = 0;
    double score_gap = 0.0;  // C(recommended) - C(chosen), >= 0
    std::optional<mcda::ViolationReport> violated_constraints;

    bool operator==(const Alert&) const = default;
};

std::string_view to_string(Verdict v);
Verdict parse_verdict(std::string_view s);

Json to_json(const Recommendation& r);
Json to_json(const FeedbackEvent& f);
Json to_json(const Alert& a);
Recommendation recommendation_from_json(const Json& j);
FeedbackEvent feedback_from_json(const Json& j);
Alert alert_from_json(const Json& j);

}  // namespace adaptive
}  // namespace trajplan
