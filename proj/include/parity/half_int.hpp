#pragma once

#include <compare>
#include <cstdlib>
#include <string>

#include "parity/errors.hpp"

namespace parity {

/// Exact half-integer (j, mu, nu), stored as twice its value.
class HalfInt {
 public:
  constexpr HalfInt() = default;

  static constexpr HalfInt from_twice(int twice) { return HalfInt(twice); }
  static constexpr HalfInt from_int(int value) { return HalfInt(2 * value); }

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }

  constexpr HalfInt operator-() const { return HalfInt(-twice_); }
  constexpr HalfInt operator+(HalfInt o) const { return HalfInt(twice_ + o.twice_); }
  constexpr HalfInt operator-(HalfInt o) const { return HalfInt(twice_ - o.twice_); }

  constexpr auto operator<=>(const HalfInt&) const = default;

  std::string str() const {
    if (is_integer()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
  }

 private:
  constexpr explicit HalfInt(int twice) : twice_(twice) {}
  int twice_ = 0;
};

/// Integer value of a difference that is known to be integral, e.g. j - mu.
constexpr int integral(HalfInt h) { return h.twice() / 2; }

constexpr bool is_valid_projection(HalfInt j, HalfInt mu) {
  return j.twice() >= 0 && std::abs(mu.twice()) <= j.twice() &&
         (j.twice() - mu.twice()) % 2 == 0;
}

inline void require_projection(HalfInt j, HalfInt mu, const char* name) {
  if (j.twice() < 0) throw DomainError("negative j = " + j.str());
  if (!is_valid_projection(j, mu)) {
    throw DomainError(std::string("invalid projection ") + name + " = " + mu.str() +
                      " for j = " + j.str());
  }
}

/// Position of mu in a block ordered from +j down to -j.
constexpr int projection_index(HalfInt j, HalfInt mu) { return (j.twice() - mu.twice()) / 2; }

constexpr HalfInt projection_at(HalfInt j, int index) { return HalfInt::from_twice(j.twice() - 2 * index); }

/// (-1)^n for an integer n.
constexpr double sign_power(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

}  // namespace parity
