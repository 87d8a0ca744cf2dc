#pragma once

#include <stdexcept>
#include <string>

namespace adderstats {

/// Parameters of a block-based approximate adder.
///
/// An n-bit adder is split into m = n/k blocks of k bits each. The sum bits
/// of block i are produced by a sub-adder whose carry-in is speculated from
/// the l input bits directly below bit position i*k (carry-in 0 to that
/// generator). Derived values: t = floor(l/k) is the number of whole blocks a
/// generator spans, k_prime = l - t*k its partial-block remainder.
struct AdderConfig {
  int n = 0;        // adder width in bits
  int k = 0;        // block size in bits
  int l = 0;        // carry-generator length in bits
  int m = 0;        // number of blocks, n / k
  int t = 0;        // floor(l / k)
  int k_prime = 0;  // l - t * k, in [0, k)

  friend bool operator==(const AdderConfig&, const AdderConfig&) = default;
};

enum class ConfigErrorCode {
  width_not_positive,
  block_size_not_positive,
  generator_length_not_positive,
  block_size_does_not_divide_width,
  generator_too_long,
};

class ConfigError : public std::invalid_argument {
public:
  ConfigError(ConfigErrorCode code, const std::string& message)
      : std::invalid_argument(message), code_(code) {}

  ConfigErrorCode code() const { return code_; }

private:
  ConfigErrorCode code_;
};

/// Validates (n, k, l) and fills in the derived parameters.
///
/// Requires k to divide n with at least two blocks, and 1 <= l <= n - k: a
/// carry generator never needs more bits than exist below the leftmost
/// block, so longer generators have no defined meaning and are rejected
/// rather than clamped. The named adder families map onto the result
/// directly (ACA: k = 1; ETA-II and SCSA: k = l; ETA-IV: k = 2l; CSAA:
/// l = 2k).
inline AdderConfig validate_config(int n, int k, int l) {
  if (n <= 0) {
    throw ConfigError(ConfigErrorCode::width_not_positive,
                      "adder width n must be positive, got " + std::to_string(n));
  }
  if (k <= 0) {
    throw ConfigError(ConfigErrorCode::block_size_not_positive,
                      "block size k must be positive, got " + std::to_string(k));
  }
  if (l <= 0) {
    throw ConfigError(
        ConfigErrorCode::generator_length_not_positive,
        "carry-generator length l must be positive, got " + std::to_string(l));
  }
  if (n % k != 0) {
    throw ConfigError(ConfigErrorCode::block_size_does_not_divide_width,
                      "block size k = " + std::to_string(k) +
                          " does not divide adder width n = " + std::to_string(n));
  }
  if (l > n - k) {
    throw ConfigError(ConfigErrorCode::generator_too_long,
                      "carry-generator length l = " + std::to_string(l) +
                          " exceeds n - k = " + std::to_string(n - k) +
                          " (no input bits exist beyond that window)");
  }
  AdderConfig cfg;
  cfg.n = n;
  cfg.k = k;
  cfg.l = l;
  cfg.m = n / k;
  cfg.t = l / k;
  cfg.k_prime = l - cfg.t * k;
  return cfg;
}

}  // namespace adderstats
