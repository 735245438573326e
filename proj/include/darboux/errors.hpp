#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace darboux {

// Malformed input text (surface expressions, config files).
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, std::size_t offset)
        : std::runtime_error(std::move(message)), offset_(offset) {}

    // Byte offset into the source text where parsing failed.
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

// A documented precondition does not hold (non-isothermal chart, hypothesis
// violation, domain error of an elementary function, ...).
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A numerical procedure failed to meet its accuracy contract
// (factorization breakdown, unacceptable residual, ...).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace darboux
