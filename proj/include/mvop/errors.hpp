#pragma once

#include <stdexcept>
#include <string>

namespace mvop {

/// Invalid parameter or index (N < 1, degree out of range, bad model spec).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A zero leading recurrence coefficient was met while solving forward.
class SingularRecurrence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The block size does not divide the matrix or the band is too wide.
class PartitionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A block that must be inverted is singular or its condition number exceeds the limit.
class IllConditionedBlock : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Data required by an operation is absent from its context object.
class ContextError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace mvop
