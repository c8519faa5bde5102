#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace randsurf {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition (non-prime modulus, q out of range, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// An enumeration or table would exceed the configured work/memory budget.
class BudgetError : public Error {
public:
    using Error::Error;
};

/// A rational formula that must produce an integer did not. Always an internal bug.
class NonIntegralError : public Error {
public:
    using Error::Error;
};

/// Text input could not be parsed. `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

enum class ValidationCode {
    TooFewCurves,
    UnknownCurve,
    DuplicateCurve,
    BadCurveData,
    BadPoint,
    DPoint,
    BlockGcd,
    BlockTooSmall,
    BlockIndex,
    LinePairCoverage,
    SurfaceNoether,
};

const char* to_string(ValidationCode code) noexcept;

/// Arrangement fails one of the structural checks of `validate`.
class ValidationError : public Error {
public:
    ValidationError(ValidationCode code, const std::string& what)
        : Error(std::string(to_string(code)) + ": " + what), code_(code) {}
    ValidationCode code() const noexcept { return code_; }

private:
    ValidationCode code_;
};

/// A sampled solution makes an exceptional multiplicity vanish mod p.
class ExceptionalVanishes : public Error {
public:
    using Error::Error;
};

/// The solution set of a Diophantine system is empty.
class EmptySolutionSet : public Error {
public:
    using Error::Error;
};

/// Rejection sampling ran out of attempts.
class ExhaustedTries : public Error {
public:
    using Error::Error;
};

} // namespace randsurf
