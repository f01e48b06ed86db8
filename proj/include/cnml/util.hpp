#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cnml {

// Error raised while reading a textual artifact (LTL formula, aag file,
// config file). `position` is a character offset for single-line inputs
// and a line number for line-oriented ones; the message says which.
struct parse_error : std::runtime_error {
    std::size_t position;
    parse_error(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg), position(pos) {}
};

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when an analysis exceeds its state/time budget. Callers that
// expose the three-valued verdict catch this and report ResourceLimit.
struct resource_limit_error : std::runtime_error {
    std::uint64_t explored;
    explicit resource_limit_error(const std::string& msg, std::uint64_t n = 0)
        : std::runtime_error(msg), explored(n) {}
};

}  // namespace cnml
