#pragma once

#include <stdexcept>
#include <string>

namespace mwin {

// Raised when an argument lies outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Raised when an iterative method fails to converge or a bracket is lost.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

[[noreturn]] inline void domain_fail(const std::string& where, const std::string& what)
{
    throw DomainError(where + ": " + what);
}

}  // namespace detail
}  // namespace mwin
