/**
 * @file error.hpp
 * @brief Exception types shared by all lmsline modules.
 */
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lmsline {

/// Malformed or out-of-contract argument (non-finite coordinate, bad q, ...).
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Data the estimator cannot represent: too few points, or no two distinct
/// x-coordinates (a vertical line has no slope/intercept form).
class DegenerateInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File or text parse failure. Carries the byte offset where parsing stopped.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Broken internal invariant. Reaching this is a bug.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace lmsline
