#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace psub {

using Value = std::int64_t;

// Dedicated sentinels; finite arithmetic never produces them.
inline constexpr Value kNegInf = std::numeric_limits<Value>::min();
inline constexpr Value kPosInf = std::numeric_limits<Value>::max();

enum class Direction { Max, Min };

inline Value worst(Direction d) { return d == Direction::Max ? kNegInf : kPosInf; }
inline bool is_inf(Value v) { return v == kNegInf || v == kPosInf; }
inline bool better(Direction d, Value a, Value b) { return d == Direction::Max ? a > b : a < b; }

struct ParseError : std::runtime_error {
  int line;
  ParseError(int l, const std::string& msg)
      : std::runtime_error("line " + std::to_string(l) + ": " + msg), line(l) {}
};

struct NonPlanarError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OverflowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Checked arithmetic on finite values; sentinels propagate.
inline Value add(Value a, Value b) {
  if (is_inf(a)) return a;
  if (is_inf(b)) return b;
  Value r;
  if (__builtin_add_overflow(a, b, &r) || is_inf(r)) throw OverflowError("value overflow in addition");
  return r;
}

inline Value sub(Value a, Value b) {
  if (is_inf(a)) return a;
  if (is_inf(b)) throw OverflowError("subtracting a sentinel");
  Value r;
  if (__builtin_sub_overflow(a, b, &r) || is_inf(r)) throw OverflowError("value overflow in subtraction");
  return r;
}

inline Value mul(Value a, Value b) {
  Value r;
  if (__builtin_mul_overflow(a, b, &r) || is_inf(r)) throw OverflowError("value overflow in multiplication");
  return r;
}

}  // namespace psub
