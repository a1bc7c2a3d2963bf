#include "pigas/error.hpp"

namespace pigas {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::NodeOutOfRange: return "NodeOutOfRange";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::NoDampedNode: return "NoDampedNode";
    case ErrorCode::NonpositiveWeight: return "NonpositiveWeight";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::SingularBlock: return "SingularBlock";
    case ErrorCode::NotBlack: return "NotBlack";
    case ErrorCode::IncompleteColoring: return "IncompleteColoring";
    case ErrorCode::NotRichlyBalanced: return "NotRichlyBalanced";
    case ErrorCode::NotInKernelClass: return "NotInKernelClass";
    case ErrorCode::SizeGuard: return "SizeGuard";
    case ErrorCode::MalformedForest: return "MalformedForest";
    case ErrorCode::AllUndamped: return "AllUndamped";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::MalformedHeader: return "MalformedHeader";
    case ErrorCode::LiteralOutOfRange: return "LiteralOutOfRange";
    case ErrorCode::EmptyClause: return "EmptyClause";
    case ErrorCode::UnexpectedBlackVariableNode: return "UnexpectedBlackVariableNode";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

}  // namespace pigas
