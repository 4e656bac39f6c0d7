#pragma once

#include <stdexcept>
#include <string>

namespace swingfreq {

/// Mathematical-domain violation: invalid parameters, negative radicands,
/// inconsistent oscillation bounds.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Initial energy at or above the potential barrier. This is the stability
/// signal of the model, not a numerical failure.
class InstabilityError : public DomainError {
public:
    explicit InstabilityError(const std::string& what) : DomainError(what) {}
};

/// Simulated angle ran away (lost synchronism); carries the time of escape.
class DivergenceError : public DomainError {
public:
    DivergenceError(const std::string& what, double t) : DomainError(what), time(t) {}
    double time;
};

/// An iterative scheme hit its evaluation cap before reaching tolerance.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input text; carries the 1-based line number when known.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, long line_no = 0)
        : std::runtime_error(line_no > 0 ? what + " (line " + std::to_string(line_no) + ")"
                                         : what),
          line(line_no) {}
    long line;
};

/// Filesystem-level failure (open, write, rename).
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace swingfreq
