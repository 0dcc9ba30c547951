#pragma once

#include <stdexcept>
#include <string>

namespace cartan {

// Bad arguments: index out of range, incompatible jet shapes, a = 0 in a
// scaling reduction, malformed scan specs.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A quantity left the domain of the formula being evaluated. Carries the
// offending value (radicand, constant term, ...).
class DomainError : public std::domain_error {
public:
    DomainError(const std::string& what, double value)
        : std::domain_error(what), value_(value) {}

    double value() const noexcept { return value_; }

private:
    double value_;
};

// Hypothesis of a convexity routine does not hold (e.g. |p| >= C^2).
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Two routes to the same quantity disagreed beyond tolerance, or a cometric
// became degenerate.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class IoError : public std::runtime_error {
public:
    IoError(const std::string& what, std::string path)
        : std::runtime_error(what + ": " + path), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

}  // namespace cartan
