#include "origami/error.hpp"

namespace origami {

const char *to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::NonOrientable: return "NonOrientable";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::NonManifold: return "NonManifold";
    case ErrorKind::ZeroAxis: return "ZeroAxis";
    case ErrorKind::NonUnitAxis: return "NonUnitAxis";
    case ErrorKind::FunctorialityViolation: return "FunctorialityViolation";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::LiftFailure: return "LiftFailure";
    case ErrorKind::ExactnessViolation: return "ExactnessViolation";
    case ErrorKind::NotACycle: return "NotACycle";
    case ErrorKind::WellDefinednessViolation: return "WellDefinednessViolation";
    case ErrorKind::NonRigidMotion: return "NonRigidMotion";
    case ErrorKind::DegenerateFace: return "DegenerateFace";
    case ErrorKind::DegenerateHinge: return "DegenerateHinge";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::UnknownCellId: return "UnknownCellId";
    }
    return "Unknown";
}

} // namespace origami
