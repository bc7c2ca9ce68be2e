#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace betaxp {

/// Input outside the documented domain of an operation (x out of range,
/// malformed digit word, mismatched swap occurrence, ...).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed textual input (base spec, digit-sequence literal, config file).
struct ParseError : DomainError {
    explicit ParseError(const std::string& what) : DomainError(what) {}
};

/// A computation could not be certified at the working precision and the
/// caller gave no way to report a partial answer.  Raising precision may or
/// may not help (tangential roots never certify).
struct PrecisionExhaustion : std::runtime_error {
    explicit PrecisionExhaustion(const std::string& what) : std::runtime_error(what) {}
};

/// A digit decision fell inside the ambiguity band around a threshold and
/// could not be resolved.  `index` is the 1-based digit position.
struct UndeterminedDigit : std::runtime_error {
    std::size_t index;
    UndeterminedDigit(std::size_t index_, const std::string& what)
        : std::runtime_error(what), index(index_) {}
};

} // namespace betaxp
