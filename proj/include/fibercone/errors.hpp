#pragma once

#include <stdexcept>
#include <string>

namespace fibercone {

/// A caller-supplied value violates an operation's precondition.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An input document could not be parsed or is inconsistent.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A bounded search proved that no answer exists (e.g. a digraph is not primitive).
class SearchFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An identity that the mathematics guarantees did not hold. Always a bug.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline void ensure(bool condition, const std::string& message)
{
    if (!condition)
        throw InternalError(message);
}

} // namespace fibercone
