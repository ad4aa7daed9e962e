#pragma once

#include <compare>
#include <cstdlib>
#include <string>

namespace mqdtft {

/// An integer or half-integer, stored as twice its value.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  constexpr explicit HalfInt(int value) : twice_(2 * value) {}

  static constexpr HalfInt from_twice(int twice) {
    HalfInt h;
    h.twice_ = twice;
    return h;
  }
  /// Throws InvalidArgument unless `value` is within 1e-9 of a multiple of 1/2.
  static HalfInt from_double(double value);

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }

  constexpr HalfInt operator-() const { return from_twice(-twice_); }
  constexpr HalfInt operator+(HalfInt o) const { return from_twice(twice_ + o.twice_); }
  constexpr HalfInt operator-(HalfInt o) const { return from_twice(twice_ - o.twice_); }
  constexpr HalfInt& operator+=(HalfInt o) {
    twice_ += o.twice_;
    return *this;
  }

  constexpr bool operator==(const HalfInt&) const = default;
  constexpr auto operator<=>(const HalfInt&) const = default;

  /// "3/2", "-1", "0".
  std::string str() const;

 private:
  int twice_ = 0;
};

constexpr HalfInt abs(HalfInt h) { return HalfInt::from_twice(std::abs(h.twice())); }

inline constexpr HalfInt kHalf = HalfInt::from_twice(1);

}  // namespace mqdtft
