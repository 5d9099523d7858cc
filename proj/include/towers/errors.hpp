#pragma once

#include <stdexcept>
#include <string>

namespace towers {

enum class Errc {
    NonUnit,
    BadGenerator,
    PrecisionTooLow,
    PatternInvalid,
    NotInGroup,
    NotDivisible,
    InfeasibleEnumeration,
    NonConstantFiber,
    SamplerStuck,
    BadLevel,
    NotSymplectic,
    DecompositionFailure,
    CompletionFailure,
    ConfigError,
    IOError,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::NonUnit: return "NonUnit";
        case Errc::BadGenerator: return "BadGenerator";
        case Errc::PrecisionTooLow: return "PrecisionTooLow";
        case Errc::PatternInvalid: return "PatternInvalid";
        case Errc::NotInGroup: return "NotInGroup";
        case Errc::NotDivisible: return "NotDivisible";
        case Errc::InfeasibleEnumeration: return "InfeasibleEnumeration";
        case Errc::NonConstantFiber: return "NonConstantFiber";
        case Errc::SamplerStuck: return "SamplerStuck";
        case Errc::BadLevel: return "BadLevel";
        case Errc::NotSymplectic: return "NotSymplectic";
        case Errc::DecompositionFailure: return "DecompositionFailure";
        case Errc::CompletionFailure: return "CompletionFailure";
        case Errc::ConfigError: return "ConfigError";
        case Errc::IOError: return "IOError";
    }
    return "?";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace towers
