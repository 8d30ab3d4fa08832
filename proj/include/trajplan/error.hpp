#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace trajplan {

// Machine-readable error codes. The names are part of the wire contract:
// HTTP error bodies and CLI diagnostics report them verbatim.
enum class ErrorCode {
    AllInfeasible,
    EmptySession,
    InvalidCriteria,
    InvalidMatrix,
    MalformedFrame,
    UnknownCriterion,
    NonFiniteValue,
    SessionNotFound,
    CorruptLog,
    UnknownScenario,
    InvalidScenarioFile,
    NotReady,
    UnknownAlternative,
    InvalidRequest,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Raised by log replay; `sequence` is the first record that could not be
// accepted (for a gap 5 -> 7 that is 6).
class CorruptLogError : public Error {
public:
    CorruptLogError(std::uint64_t sequence, const std::string& reason)
        : Error(ErrorCode::CorruptLog,
                "corrupt log at sequence " + std::to_string(sequence) + ": " + reason),
          sequence_(sequence) {}

    std::uint64_t sequence() const noexcept { return sequence_; }

private:
    std::uint64_t sequence_;
};

}  // namespace trajplan
