#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mslab {

enum class ErrorCode {
    Parse,
    NonSquare,
    LengthMismatch,
    InvalidMetric,
    KatetovViolation,
    DuplicatePoint,
    SpaceMismatch,
    LambdaOutOfRange,
    DenominatorMismatch,
    EmptyGlue,
    NotIsometry,
    IndexOutOfRange,
    IndexClash,
    PreconditionA,
    PreconditionB,
    DiameterExceeded,
    MetricFailure,
    EmptyState,
    BudgetExceeded,
    Unsaturated,
    EmptySubset,
    InvalidLandmarks,
    NotOnSphere,
    DimensionMismatch,
    OverlappingSupports,
    InvalidStepFunction,
    InvalidProfile,
    SelfLoop,
    UndeterminedMembership,
    IncompatibleCodes,
    InvalidArgument,
};

constexpr std::string_view to_string(ErrorCode c) {
    switch (c) {
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::InvalidMetric: return "InvalidMetric";
    case ErrorCode::KatetovViolation: return "KatetovViolation";
    case ErrorCode::DuplicatePoint: return "DuplicatePoint";
    case ErrorCode::SpaceMismatch: return "SpaceMismatch";
    case ErrorCode::LambdaOutOfRange: return "LambdaOutOfRange";
    case ErrorCode::DenominatorMismatch: return "DenominatorMismatch";
    case ErrorCode::EmptyGlue: return "EmptyGlue";
    case ErrorCode::NotIsometry: return "NotIsometry";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::IndexClash: return "IndexClash";
    case ErrorCode::PreconditionA: return "PreconditionA";
    case ErrorCode::PreconditionB: return "PreconditionB";
    case ErrorCode::DiameterExceeded: return "DiameterExceeded";
    case ErrorCode::MetricFailure: return "MetricFailure";
    case ErrorCode::EmptyState: return "EmptyState";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::Unsaturated: return "Unsaturated";
    case ErrorCode::EmptySubset: return "EmptySubset";
    case ErrorCode::InvalidLandmarks: return "InvalidLandmarks";
    case ErrorCode::NotOnSphere: return "NotOnSphere";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::OverlappingSupports: return "OverlappingSupports";
    case ErrorCode::InvalidStepFunction: return "InvalidStepFunction";
    case ErrorCode::InvalidProfile: return "InvalidProfile";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::UndeterminedMembership: return "UndeterminedMembership";
    case ErrorCode::IncompatibleCodes: return "IncompatibleCodes";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

/// Raised on precondition violations and on constructions whose output
/// fails validation. `indices()` carries the offending point indices
/// (a pair or a triple) when there is one.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what, std::vector<std::size_t> indices = {})
        : std::runtime_error(std::string(to_string(code)) + ": " + what),
          code_(code),
          indices_(std::move(indices)) {}

    ErrorCode code() const noexcept { return code_; }
    const std::vector<std::size_t>& indices() const noexcept { return indices_; }

private:
    ErrorCode code_;
    std::vector<std::size_t> indices_;
};

}  // namespace mslab
