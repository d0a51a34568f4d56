#pragma once

#include <stdexcept>
#include <string>

namespace foursq {

/// Raised when an intermediate leaves the signed 64-bit range.
class RangeError : public std::overflow_error {
public:
    explicit RangeError(const std::string& op)
        : std::overflow_error("arithmetic range exceeded in " + op) {}
};

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class UnsupportedQuadruple : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// No admissible value produced a certificate. `trace` lists what was tried.
class NoSolution : public std::runtime_error {
public:
    NoSolution(const std::string& what, std::string trace)
        : std::runtime_error(what), trace_(std::move(trace)) {}
    const std::string& trace() const noexcept { return trace_; }

private:
    std::string trace_;
};

class ResourceLimit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace foursq
