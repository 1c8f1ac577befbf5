#pragma once

#include <stdexcept>
#include <string>

namespace jaudit {

// Base class for every recoverable error the library raises. Callers that
// want blanket handling (the CLI, the audit report assembler) catch this;
// anything else escaping is a genuine bug.
struct AuditError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : AuditError {
    using AuditError::AuditError;
};
struct ValidationError : AuditError {
    using AuditError::AuditError;
};
struct MixedScaleError : AuditError {
    using AuditError::AuditError;
};
struct ConfigError : AuditError {
    using AuditError::AuditError;
};

struct UnlabeledError : AuditError {
    using AuditError::AuditError;
};
struct DegenerateVarianceError : AuditError {
    using AuditError::AuditError;
};
struct NoComparablePairsError : AuditError {
    using AuditError::AuditError;
};
struct AllSkippedError : AuditError {
    using AuditError::AuditError;
};
struct DegenerateDenominatorError : AuditError {
    using AuditError::AuditError;
};
struct UnknownCandidateError : AuditError {
    using AuditError::AuditError;
};
struct LengthMismatchError : AuditError {
    using AuditError::AuditError;
};

struct PositivityError : AuditError {
    using AuditError::AuditError;
};
struct UnlabeledOracleBestError : AuditError {
    using AuditError::AuditError;
};
struct TooManySkipsError : AuditError {
    using AuditError::AuditError;
};
struct DegenerateInputError : AuditError {
    using AuditError::AuditError;
};

struct InfeasibleError : AuditError {
    using AuditError::AuditError;
};
struct NoBracketError : AuditError {
    using AuditError::AuditError;
};
struct InsufficientDataError : AuditError {
    using AuditError::AuditError;
};
struct InsufficientSamplesError : AuditError {
    using AuditError::AuditError;
};

} // namespace jaudit
