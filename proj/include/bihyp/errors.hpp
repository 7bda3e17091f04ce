#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bihyp {

// Invalid mathematical input: bad picture, incoherent polynomial data,
// inputs outside the supported theory. CLI maps these to exit code 1.
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Text-level failure with a byte offset into the offending input.
struct parse_error : domain_error {
    std::size_t position;
    parse_error(const std::string& msg, std::size_t pos)
        : domain_error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

} // namespace bihyp
