#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dbb {

enum class ErrorCode {
    NegativeWeight,
    ProximityOutOfRange,
    NonFiniteWeight,
    DuplicateEdge,
    AsymmetricUndirected,
    WrongSemantics,
    TooFewNodes,
    ClosureMismatch,
    NotSemiTriangular,
    UnknownMeasure,
    UnlawfulAlgebra,
    InvalidInput,
    Io,
};

std::string_view to_string(ErrorCode code);

// Every recoverable failure in the library surfaces as this exception.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace dbb
