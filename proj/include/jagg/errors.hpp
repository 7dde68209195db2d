#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jagg {

// Raised by parse_formula and by problem-document loading. `position` is a
// byte offset into the offending input text.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t position)
        : std::runtime_error(message + " (at offset " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// Raised when an exact search would exceed a configured bound from Limits.
// All searches here are exact and potentially exponential; this error makes
// the cost explicit instead of letting a call run away.
class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace jagg
