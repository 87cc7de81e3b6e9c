#include "ilmsa/errors.hpp"

namespace ilmsa {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::DegenerateSegment: return "DegenerateSegment";
        case ErrorCode::OffPlanePoint: return "OffPlanePoint";
        case ErrorCode::DegenerateHull: return "DegenerateHull";
        case ErrorCode::SchemaViolation: return "SchemaViolation";
        case ErrorCode::InvariantViolation: return "InvariantViolation";
        case ErrorCode::PlacementFailure: return "PlacementFailure";
        case ErrorCode::InvalidExtension: return "InvalidExtension";
        case ErrorCode::TooFewControlPoints: return "TooFewControlPoints";
        case ErrorCode::ParameterOutOfRange: return "ParameterOutOfRange";
        case ErrorCode::EmptyVertexSet: return "EmptyVertexSet";
        case ErrorCode::OutOfBounds: return "OutOfBounds";
        case ErrorCode::NoPathWithinBudget: return "NoPathWithinBudget";
        case ErrorCode::StartOrGoalBlocked: return "StartOrGoalBlocked";
        case ErrorCode::NoFeasiblePlane: return "NoFeasiblePlane";
        case ErrorCode::NoPath: return "NoPath";
        case ErrorCode::CorridorBlocked: return "CorridorBlocked";
        case ErrorCode::TooShort: return "TooShort";
        case ErrorCode::EmptyCandidateSet: return "EmptyCandidateSet";
        case ErrorCode::EmptySample: return "EmptySample";
        case ErrorCode::InsufficientGroups: return "InsufficientGroups";
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::IoError: return "IoError";
    }
    return "UnknownError";
}

}  // namespace ilmsa
