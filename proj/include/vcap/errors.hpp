#pragma once

#include <stdexcept>
#include <string>

namespace vcap {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Violated precondition that can be pinned to concrete input data.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical procedure produced results that contradict a structural property
/// (monotonicity, convergence) it relies on.
class InconsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad configuration or input document.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace vcap
