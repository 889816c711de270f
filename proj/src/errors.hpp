#pragma once

#include <stdexcept>
#include <string>

namespace eh {

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EvaluationDomainError : DomainError {
    using DomainError::DomainError;
};

struct QuadratureFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CflViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonFiniteValue : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GridTooCoarse : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ChainEscapesDomain : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateBase : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoAdmissibleBase : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotFound : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace eh
