#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ciani {

// Base class for all library errors. Concrete types name the violated
// precondition; the CLI maps them onto exit codes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CompositeModulus : Error { using Error::Error; };
struct NotANonResidue : Error { using Error::Error; };
struct DivisionByZero : Error { using Error::Error; };
struct CtxMismatch : Error { using Error::Error; };
struct FourDoesNotDivideGroupOrder : Error { using Error::Error; };

struct SingularLambda : Error { using Error::Error; };
struct NotSupersingular : Error { using Error::Error; };

struct SingularCurve : Error { using Error::Error; };
struct NotSuperspecial : Error { using Error::Error; };
struct ZeroMu : Error { using Error::Error; };
struct DegenerateS : Error { using Error::Error; };
struct SingularResult : Error { using Error::Error; };

struct NonSquareQ : Error { using Error::Error; };
struct CeilingExceeded : Error { using Error::Error; };
struct ScanTooLarge : Error { using Error::Error; };

// A verified mathematical property failed at runtime. Signals a library bug
// (or a falsified expectation); the CLI turns it into exit code 1.
struct InvariantViolation : Error { using Error::Error; };

struct ParseError : Error {
    size_t position;
    ParseError(const std::string& what, size_t pos)
        : Error(what + " at position " + std::to_string(pos)), position(pos) {}
};

}  // namespace ciani
