#pragma once

#include <stdexcept>
#include <string>

namespace specgraph {

/// Every failure the library reports deliberately. Callers can branch on the
/// code; the message carries the human-readable detail.
enum class ErrorCode {
    self_loop,
    duplicate_edge,
    index_out_of_range,
    nonpositive_weight,
    invalid_size,
    not_a_permutation,
    disconnected,
    not_symmetric,
    too_large,
    empty_side,
    expansion_size_violation,
    same_vertex,
    zero_denominator,
    disconnected_for_scaling,
    dimension_too_large,
    degenerate_column,
    multiple_zero_eigenvalues,
    negative_eigenvalue,
    target_too_large,
    parse_error,
    invariant_violation,
    io_error,
    invalid_argument,
};

inline const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::self_loop: return "SelfLoop";
        case ErrorCode::duplicate_edge: return "DuplicateEdge";
        case ErrorCode::index_out_of_range: return "IndexOutOfRange";
        case ErrorCode::nonpositive_weight: return "NonpositiveWeight";
        case ErrorCode::invalid_size: return "InvalidSize";
        case ErrorCode::not_a_permutation: return "NotAPermutation";
        case ErrorCode::disconnected: return "Disconnected";
        case ErrorCode::not_symmetric: return "NotSymmetric";
        case ErrorCode::too_large: return "TooLarge";
        case ErrorCode::empty_side: return "EmptySide";
        case ErrorCode::expansion_size_violation: return "ExpansionSizeViolation";
        case ErrorCode::same_vertex: return "SameVertex";
        case ErrorCode::zero_denominator: return "ZeroDenominator";
        case ErrorCode::disconnected_for_scaling: return "DisconnectedForScaling";
        case ErrorCode::dimension_too_large: return "DimensionTooLarge";
        case ErrorCode::degenerate_column: return "DegenerateColumn";
        case ErrorCode::multiple_zero_eigenvalues: return "MultipleZeroEigenvalues";
        case ErrorCode::negative_eigenvalue: return "NegativeEigenvalue";
        case ErrorCode::target_too_large: return "TargetTooLarge";
        case ErrorCode::parse_error: return "ParseError";
        case ErrorCode::invariant_violation: return "InvariantViolation";
        case ErrorCode::io_error: return "IoError";
        case ErrorCode::invalid_argument: return "InvalidArgument";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace specgraph
