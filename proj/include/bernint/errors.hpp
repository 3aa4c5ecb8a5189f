#pragma once

#include <stdexcept>
#include <string>

namespace bernint {

// Invalid argument outside an operation's mathematical domain (k > n, x outside [0,1], ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Unknown catalog id or malformed function / rule / rational spec.
class LookupError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Derivative order requested beyond a function's smoothness.
class SmoothnessError : public DomainError {
public:
    using DomainError::DomainError;
};

// Derivative order exceeds polynomial degree where that is not allowed.
class DegreeError : public DomainError {
public:
    using DomainError::DomainError;
};

// A theorem's hypotheses do not hold for the given input.
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A high-precision value lies too close to a rounding decision point to be rounded safely.
class AmbiguousTie : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace bernint
