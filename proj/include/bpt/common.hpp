#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace bpt {

// Positions in the parenthesis sequence are 1-based throughout the public
// API; position 0 is the virtual anchor with excess 0.
using position_t = std::uint64_t;
using excess_t = std::int64_t;

/// Bit patterns supported by rank/select.
enum class Pattern : std::uint8_t { zero = 0, one = 1, pair10 = 2 };

inline const char* to_string(Pattern p) {
  switch (p) {
    case Pattern::zero: return "0";
    case Pattern::one: return "1";
    case Pattern::pair10: return "10";
  }
  return "?";
}

inline constexpr std::uint32_t kNoBucket = std::numeric_limits<std::uint32_t>::max();

/// Thrown when an index file or parenthesis file cannot be decoded.
class format_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

[[noreturn]] inline void throw_range(const char* what, std::uint64_t value, std::uint64_t lo,
                                     std::uint64_t hi) {
  throw std::out_of_range(std::string(what) + ": " + std::to_string(value) + " not in [" +
                          std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

inline void check_range(const char* what, std::uint64_t value, std::uint64_t lo, std::uint64_t hi) {
  if (value < lo || value > hi) throw_range(what, value, lo, hi);
}

}  // namespace detail
}  // namespace bpt
