#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace adderstats {

using BigInt = boost::multiprecision::cpp_int;

/// A dyadic rational: num / 2^exp with an arbitrary-precision numerator.
///
/// Dyadic rationals are closed under addition, subtraction, and
/// multiplication, so every probability in the block-adder model (all base
/// probabilities have power-of-two denominators) can be carried exactly.
/// The representation is canonical: num is odd, or num is zero, or exp is 0.
class Dyadic {
public:
  Dyadic() : num_(0), exp_(0) {}

  explicit Dyadic(BigInt integer_value) : num_(std::move(integer_value)), exp_(0) {}
  explicit Dyadic(std::int64_t integer_value) : num_(integer_value), exp_(0) {}

  Dyadic(BigInt numerator, std::uint64_t exponent)
      : num_(std::move(numerator)), exp_(exponent) {
    normalize();
  }

  static Dyadic one() { return Dyadic(BigInt(1)); }

  /// Exact conversion; every finite double is a dyadic rational.
  static Dyadic from_double(double value) {
    if (!std::isfinite(value)) {
      throw std::invalid_argument("Dyadic::from_double: value is not finite");
    }
    if (value == 0.0) {
      return Dyadic();
    }
    int exp2 = 0;
    const double frac = std::frexp(value, &exp2);  // value = frac * 2^exp2
    const auto mantissa = static_cast<std::int64_t>(std::ldexp(frac, 53));
    const std::int64_t shift = 53 - static_cast<std::int64_t>(exp2);
    if (shift <= 0) {
      return Dyadic(BigInt(mantissa) << static_cast<std::size_t>(-shift));
    }
    return Dyadic(BigInt(mantissa), static_cast<std::uint64_t>(shift));
  }

  const BigInt& numerator() const { return num_; }
  std::uint64_t exponent() const { return exp_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_negative() const { return num_ < 0; }

  /// Nearest double (to within < 1 ulp of a 64-bit mantissa); huge exponents
  /// saturate to 0 or +/-inf like any double computation would.
  double to_double() const {
    if (num_.is_zero()) {
      return 0.0;
    }
    const bool negative = num_ < 0;
    const BigInt mag = negative ? BigInt(-num_) : num_;
    const std::size_t bits = boost::multiprecision::msb(mag) + 1;
    std::uint64_t top = 0;
    std::int64_t top_shift = 0;
    if (bits <= 64) {
      top = mag.template convert_to<std::uint64_t>();
    } else {
      top_shift = static_cast<std::int64_t>(bits - 64);
      top = BigInt(mag >> static_cast<std::size_t>(bits - 64))
                .template convert_to<std::uint64_t>();
      if (boost::multiprecision::bit_test(mag, static_cast<unsigned>(bits - 65)) &&
          top != std::numeric_limits<std::uint64_t>::max()) {
        ++top;
      }
    }
    const std::int64_t e2 = top_shift - static_cast<std::int64_t>(exp_);
    const int clamped = static_cast<int>(std::clamp<std::int64_t>(e2, -1500, 1500));
    const double result = std::ldexp(static_cast<double>(top), clamped);
    return negative ? -result : result;
  }

  /// Human-readable form: "num" when integral, else "num/2^exp".
  std::string to_string() const {
    if (exp_ == 0) {
      return num_.str();
    }
    return num_.str() + "/2^" + std::to_string(exp_);
  }

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    const std::uint64_t e = std::max(a.exp_, b.exp_);
    return Dyadic((a.num_ << static_cast<std::size_t>(e - a.exp_)) +
                      (b.num_ << static_cast<std::size_t>(e - b.exp_)),
                  e);
  }

  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) {
    const std::uint64_t e = std::max(a.exp_, b.exp_);
    return Dyadic((a.num_ << static_cast<std::size_t>(e - a.exp_)) -
                      (b.num_ << static_cast<std::size_t>(e - b.exp_)),
                  e);
  }

  friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    return Dyadic(a.num_ * b.num_, a.exp_ + b.exp_);
  }

  Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }
  Dyadic& operator-=(const Dyadic& o) { return *this = *this - o; }
  Dyadic& operator*=(const Dyadic& o) { return *this = *this * o; }

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exp_ == b.exp_ && a.num_ == b.num_;
  }

  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    const std::uint64_t e = std::max(a.exp_, b.exp_);
    const BigInt lhs = a.num_ << static_cast<std::size_t>(e - a.exp_);
    const BigInt rhs = b.num_ << static_cast<std::size_t>(e - b.exp_);
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

private:
  void normalize() {
    if (num_.is_zero()) {
      exp_ = 0;
      return;
    }
    if (exp_ == 0 || boost::multiprecision::bit_test(num_ < 0 ? BigInt(-num_) : num_, 0)) {
      return;
    }
    const BigInt mag = num_ < 0 ? BigInt(-num_) : num_;
    const std::uint64_t trailing = boost::multiprecision::lsb(mag);
    const std::uint64_t shift = std::min(trailing, exp_);
    num_ >>= static_cast<std::size_t>(shift);
    exp_ -= shift;
  }

  BigInt num_;
  std::uint64_t exp_;
};

}  // namespace adderstats
