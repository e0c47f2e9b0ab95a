#pragma once

#include <stdexcept>
#include <string>

namespace zelab {

// Malformed input data (matrix files, ensemble files, distribution specs).
// `line` is 1-based when the source is a text stream, 0 when not applicable.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + std::move(message)
                                      : std::move(message)),
          line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

// A caller violated a documented precondition (out-of-range parameter,
// mismatched dimensions, invalid probability).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Parameters that are well-formed but cannot be run to completion: a phase
// size hit zero or below, the surviving universe emptied, or a draw needs
// more rows than remain.  Maps to the "parameter-infeasible" outcome.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace zelab
