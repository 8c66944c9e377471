#pragma once

#include <stdexcept>
#include <string>

namespace origami {

enum class ErrorKind {
    InvalidInput,
    NonOrientable,
    Degenerate,
    NonManifold,
    ZeroAxis,
    NonUnitAxis,
    FunctorialityViolation,
    ShapeMismatch,
    LiftFailure,
    ExactnessViolation,
    NotACycle,
    WellDefinednessViolation,
    NonRigidMotion,
    DegenerateFace,
    DegenerateHinge,
    ParseError,
    IndexOutOfRange,
    InvalidParams,
    UnknownCellId,
};

const char *to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so callers (and the CLI
// exit-code mapping) can branch without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string &message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), m_kind(kind) {}

    ErrorKind kind() const { return m_kind; }

private:
    ErrorKind m_kind;
};

} // namespace origami
