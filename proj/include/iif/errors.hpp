#pragma once

#include <stdexcept>
#include <string>

namespace iif {

/// Error categories surfaced by the library. `Parse` and `Usage` map to CLI
/// exit code 2, everything else to exit code 1.
enum class Errc {
    ZeroScalar,
    DimensionMismatch,
    SingularMatrix,
    SingularTransform,
    SingularForm,
    NotApplicable,
    NotDiagonalizable,
    BlockLeakage,
    SpectrumOutsideField,
    IllConditioned,
    NotSelfadjoint,
    NotEigenvalue,
    PairingMismatch,
    ParameterOutOfDomain,
    HypothesisViolation,
    NotConstructible,
    BadFunctionalParameter,
    ParseError,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::ZeroScalar: return "ZeroScalar";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::SingularMatrix: return "SingularMatrix";
        case Errc::SingularTransform: return "SingularTransform";
        case Errc::SingularForm: return "SingularForm";
        case Errc::NotApplicable: return "NotApplicable";
        case Errc::NotDiagonalizable: return "NotDiagonalizable";
        case Errc::BlockLeakage: return "BlockLeakage";
        case Errc::SpectrumOutsideField: return "SpectrumOutsideField";
        case Errc::IllConditioned: return "IllConditioned";
        case Errc::NotSelfadjoint: return "NotSelfadjoint";
        case Errc::NotEigenvalue: return "NotEigenvalue";
        case Errc::PairingMismatch: return "PairingMismatch";
        case Errc::ParameterOutOfDomain: return "ParameterOutOfDomain";
        case Errc::HypothesisViolation: return "HypothesisViolation";
        case Errc::NotConstructible: return "NotConstructible";
        case Errc::BadFunctionalParameter: return "BadFunctionalParameter";
        case Errc::ParseError: return "ParseError";
    }
    return "Unknown";
}

}  // namespace iif
