#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pigas {

enum class ErrorCode {
    NodeOutOfRange,
    SelfLoop,
    DuplicateEdge,
    Disconnected,
    NoDampedNode,
    NonpositiveWeight,
    InvalidParams,
    SingularBlock,
    NotBlack,
    IncompleteColoring,
    NotRichlyBalanced,
    NotInKernelClass,
    SizeGuard,
    MalformedForest,
    AllUndamped,
    StepTooLarge,
    MalformedHeader,
    LiteralOutOfRange,
    EmptyClause,
    UnexpectedBlackVariableNode,
    Parse,
    Io,
};

std::string_view to_string(ErrorCode code);

/// Every recoverable failure in the library is reported through this type;
/// `code()` names the violated invariant, `what()` carries the detail.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace pigas
