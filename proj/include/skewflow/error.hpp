#ifndef SKEWFLOW_ERROR_HPP
#define SKEWFLOW_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace skewflow {

// Input that violates a structural contract (bad graph, inadmissible word,
// mismatched step sizes, malformed config). Maps to CLI exit code 2.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Literal or document parse failure; `position` is a 0-based character offset.
class ParseError : public ValidationError {
public:
    ParseError(const std::string& what, std::size_t position)
        : ValidationError(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// Integration produced a non-finite state. Exit code 3.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Work estimate exceeded the configured guard. Exit code 4.
class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace skewflow

#endif
