#pragma once

#include <stdexcept>
#include <string>

namespace ilmsa {

enum class ErrorCode {
    DegenerateSegment,
    OffPlanePoint,
    DegenerateHull,
    SchemaViolation,
    InvariantViolation,
    PlacementFailure,
    InvalidExtension,
    TooFewControlPoints,
    ParameterOutOfRange,
    EmptyVertexSet,
    OutOfBounds,
    NoPathWithinBudget,
    StartOrGoalBlocked,
    NoFeasiblePlane,
    NoPath,
    CorridorBlocked,
    TooShort,
    EmptyCandidateSet,
    EmptySample,
    InsufficientGroups,
    EmptyInput,
    IoError,
};

const char* error_code_name(ErrorCode code);

/// Library-wide exception. `detail` carries the id of the offending entity
/// when one exists (e.g. the obstacle blocking a start point).
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message, std::string detail = {})
        : std::runtime_error(message), code_(code), detail_(std::move(detail)) {}

    ErrorCode code() const { return code_; }
    const std::string& detail() const { return detail_; }

  private:
    ErrorCode code_;
    std::string detail_;
};

}  // namespace ilmsa
