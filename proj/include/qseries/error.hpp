#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qs {

enum class ErrorKind {
    DivisionByZero,
    HeightOverflow,
    BaseNotInUnitDisk,
    PoleAtOmegaPoint,
    GuardViolated,
    PrefactorPole,
    HeadDegenerate,
    NotTerminating,
    Divergent,
    UnsupportedExact,
    ZeroParameter,
    NotBalanced,
    RuleShapeMismatch,
    ParseError,
    CorpusLoadError,
    UnknownName,
    NoAdmissibleRepresentation,
    NoSuchEdge,
    SamplingExhausted,
};

std::string_view kind_name(ErrorKind k);

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    /// True for errors that mean "this sample point is inadmissible".
    bool rejects_point() const noexcept {
        switch (kind_) {
        case ErrorKind::DivisionByZero:
        case ErrorKind::GuardViolated:
        case ErrorKind::PrefactorPole:
        case ErrorKind::HeadDegenerate:
        case ErrorKind::PoleAtOmegaPoint:
        case ErrorKind::ZeroParameter:
            return true;
        default:
            return false;
        }
    }

private:
    ErrorKind kind_;
};

inline std::string_view kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::HeightOverflow: return "HeightOverflow";
    case ErrorKind::BaseNotInUnitDisk: return "BaseNotInUnitDisk";
    case ErrorKind::PoleAtOmegaPoint: return "PoleAtOmegaPoint";
    case ErrorKind::GuardViolated: return "GuardViolated";
    case ErrorKind::PrefactorPole: return "PrefactorPole";
    case ErrorKind::HeadDegenerate: return "HeadDegenerate";
    case ErrorKind::NotTerminating: return "NotTerminating";
    case ErrorKind::Divergent: return "Divergent";
    case ErrorKind::UnsupportedExact: return "UnsupportedExact";
    case ErrorKind::ZeroParameter: return "ZeroParameter";
    case ErrorKind::NotBalanced: return "NotBalanced";
    case ErrorKind::RuleShapeMismatch: return "RuleShapeMismatch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::CorpusLoadError: return "CorpusLoadError";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::NoAdmissibleRepresentation: return "NoAdmissibleRepresentation";
    case ErrorKind::NoSuchEdge: return "NoSuchEdge";
    case ErrorKind::SamplingExhausted: return "SamplingExhausted";
    }
    return "Unknown";
}

}  // namespace qs
