#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "adderstats/config.hpp"
#include "adderstats/dyadic.hpp"

namespace adderstats {

enum class OracleErrorCode {
  width_exceeds_word,       // behavioral model is a 64-bit-word implementation
  exhaustive_cap_exceeded,  // 4^n input pairs would be too many
  no_samples,
};

class OracleError : public std::runtime_error {
public:
  OracleError(OracleErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  OracleErrorCode code() const { return code_; }

private:
  OracleErrorCode code_;
};

namespace detail {

inline std::uint64_t mask_bits(int width) {
  return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

}  // namespace detail

/// One bit-true evaluation of the approximate adder next to the exact sum.
/// Both sums are (n+1)-bit values: the low n bits plus a carry-out at bit n.
struct BehavioralResult {
  std::uint64_t approx_sum;  // low n bits of the approximate sum
  std::uint64_t exact_sum;   // low n bits of a + b
  bool approx_carry;         // carry-out of the leftmost sub-adder
  bool exact_carry;
  int width;                 // n

  bool error_is_zero() const {
    return approx_sum == exact_sum && approx_carry == exact_carry;
  }

  /// The approximate sum never exceeds the exact one (the signed error is
  /// zero or negative); this predicate is what the sign-invariant checks
  /// assert rather than assume.
  bool error_is_nonpositive() const {
    if (approx_carry != exact_carry) {
      return exact_carry;
    }
    return approx_sum <= exact_sum;
  }

  /// |approx - exact| as a plain integer. The magnitude fits 64 bits for
  /// any n <= 64 because the two sums differ below bit n.
  std::uint64_t error_magnitude() const {
    const unsigned __int128 a =
        (static_cast<unsigned __int128>(approx_carry) << width) | approx_sum;
    const unsigned __int128 e =
        (static_cast<unsigned __int128>(exact_carry) << width) | exact_sum;
    const unsigned __int128 diff = a <= e ? e - a : a - e;
    return static_cast<std::uint64_t>(diff);
  }
};

/// Evaluates the block-based approximate adder on one input pair.
///
/// Block i's sum is (a_block + b_block + c_i) mod 2^k where the speculated
/// carry c_i is the carry-out of adding the input slices covering the l bits
/// directly below bit position i*k, with carry-in 0 to that window. The
/// window's lower end clamps at bit 0, so for i <= t it covers all remaining
/// input bits and the speculated carry is always correct; c_0 is 0. The
/// adder's carry-out comes from the leftmost sub-adder only.
inline BehavioralResult approx_add(const AdderConfig& cfg, std::uint64_t a,
                                   std::uint64_t b) {
  if (cfg.n > 64) {
    throw OracleError(OracleErrorCode::width_exceeds_word,
                      "behavioral model supports widths up to 64 bits, got n = " +
                          std::to_string(cfg.n));
  }
  const std::uint64_t input_mask = detail::mask_bits(cfg.n);
  if (a > input_mask || b > input_mask) {
    throw std::out_of_range("approx_add: input exceeds " + std::to_string(cfg.n) +
                            " bits");
  }

  const int k = cfg.k;
  const std::uint64_t block_mask = detail::mask_bits(k);

  std::uint64_t approx = 0;
  bool approx_carry = false;
  for (int i = 0; i < cfg.m; ++i) {
    const int base = i * k;
    std::uint64_t speculated = 0;
    if (i > 0) {
      const int lo = std::max(0, base - cfg.l);
      const int width = base - lo;
      const std::uint64_t wa = (a >> lo) & detail::mask_bits(width);
      const std::uint64_t wb = (b >> lo) & detail::mask_bits(width);
      speculated = (wa + wb) >> width;  // width <= n - k <= 63
    }
    const std::uint64_t block_sum =
        ((a >> base) & block_mask) + ((b >> base) & block_mask) + speculated;
    approx |= (block_sum & block_mask) << base;
    if (i == cfg.m - 1) {
      approx_carry = (block_sum >> k) != 0;
    }
  }

  BehavioralResult result;
  result.width = cfg.n;
  result.approx_sum = approx;
  result.approx_carry = approx_carry;
  if (cfg.n == 64) {
    result.exact_sum = a + b;
    result.exact_carry = result.exact_sum < a;
  } else {
    const std::uint64_t sum = a + b;
    result.exact_sum = sum & input_mask;
    result.exact_carry = (sum >> cfg.n) != 0;
  }
  return result;
}

enum class SampleSource { exhaustive, monte_carlo };

/// Observed counts of error magnitudes over a set of input pairs.
struct EmpiricalDistribution {
  AdderConfig config;
  SampleSource source = SampleSource::exhaustive;
  std::uint64_t total_samples = 0;
  std::uint64_t seed = 0;  // meaningful for monte_carlo only
  std::map<std::uint64_t, std::uint64_t> counts;  // error magnitude -> occurrences
  std::uint64_t positive_error_pairs = 0;  // pairs where approx > exact; expected 0

  std::uint64_t count_of(std::uint64_t magnitude) const {
    const auto it = counts.find(magnitude);
    return it == counts.end() ? 0 : it->second;
  }

  double error_rate() const {
    return static_cast<double>(total_samples - count_of(0)) /
           static_cast<double>(total_samples);
  }

  /// count / 4^n as an exact dyadic value; meaningful for exhaustive runs.
  Dyadic exact_probability(std::uint64_t magnitude) const {
    return Dyadic(BigInt(count_of(magnitude)),
                  2 * static_cast<std::uint64_t>(config.n));
  }
};

namespace detail {

/// Count accumulator with a dense fast path. Magnitudes whose 1-bits all
/// sit at block boundaries (every magnitude the model is supposed to
/// produce) are folded to an m-bit id and counted in a flat array; anything
/// else falls back to an exact side map, so an off-grid magnitude would be
/// recorded faithfully rather than aliased.
class MagnitudeCounter {
public:
  MagnitudeCounter(const AdderConfig& cfg) : cfg_(cfg) {
    dense_ = cfg.m <= 20;
    if (dense_) {
      dense_counts_.assign(std::size_t{1} << cfg.m, 0);
      grid_mask_ = 0;
      for (int i = 0; i < cfg.m; ++i) {
        grid_mask_ |= std::uint64_t{1} << (i * cfg.k);
      }
    }
  }

  void add(std::uint64_t magnitude, std::uint64_t times = 1) {
    if (dense_ && (magnitude & ~grid_mask_) == 0) {
      std::uint64_t id = 0;
      for (int i = 0; i < cfg_.m; ++i) {
        id |= ((magnitude >> (i * cfg_.k)) & 1) << i;
      }
      dense_counts_[id] += times;
      return;
    }
    sparse_counts_[magnitude] += times;
  }

  void merge_into(std::map<std::uint64_t, std::uint64_t>& out) const {
    if (dense_) {
      for (std::size_t id = 0; id < dense_counts_.size(); ++id) {
        if (dense_counts_[id] == 0) {
          continue;
        }
        std::uint64_t magnitude = 0;
        for (int i = 0; i < cfg_.m; ++i) {
          magnitude |= ((id >> i) & 1) << (i * cfg_.k);
        }
        out[magnitude] += dense_counts_[id];
      }
    }
    for (const auto& [magnitude, count] : sparse_counts_) {
      out[magnitude] += count;
    }
  }

private:
  AdderConfig cfg_;
  bool dense_ = false;
  std::uint64_t grid_mask_ = 0;
  std::vector<std::uint64_t> dense_counts_;
  std::unordered_map<std::uint64_t, std::uint64_t> sparse_counts_;
};

inline std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace detail

inline constexpr int kDefaultExhaustiveWidthCap = 14;

/// Runs the adder on all 4^n input pairs and tallies error magnitudes. This
/// is the ground truth every analytical result is checked against; it is
/// also O(4^n), hence the width cap.
inline EmpiricalDistribution exhaustive_distribution(
    const AdderConfig& cfg, int max_width = kDefaultExhaustiveWidthCap) {
  const int effective_cap = std::min(max_width, 31);  // 4^n must fit the tally
  if (cfg.n > effective_cap) {
    throw OracleError(OracleErrorCode::exhaustive_cap_exceeded,
                      "exhaustive oracle refused: n = " + std::to_string(cfg.n) +
                          " means 4^" + std::to_string(cfg.n) +
                          " evaluations; cap is n <= " + std::to_string(effective_cap));
  }

  EmpiricalDistribution dist;
  dist.config = cfg;
  dist.source = SampleSource::exhaustive;
  dist.total_samples = std::uint64_t{1} << (2 * cfg.n);

  detail::MagnitudeCounter counter(cfg);
  const std::uint64_t limit = std::uint64_t{1} << cfg.n;
  for (std::uint64_t a = 0; a < limit; ++a) {
    for (std::uint64_t b = 0; b < limit; ++b) {
      const BehavioralResult r = approx_add(cfg, a, b);
      if (!r.error_is_nonpositive()) {
        ++dist.positive_error_pairs;
      }
      counter.add(r.error_magnitude());
    }
  }
  counter.merge_into(dist.counts);
  return dist;
}

inline constexpr std::uint64_t kMonteCarloChunk = 1 << 16;

/// Draws input pairs uniformly and independently. Sampling is chunked with
/// a fixed chunk size, and each chunk's generator is seeded from the master
/// seed and the chunk index alone, so results are reproducible and chunks
/// could be evaluated in any order or in parallel without changing the
/// counts.
inline EmpiricalDistribution monte_carlo_distribution(const AdderConfig& cfg,
                                                      std::uint64_t samples,
                                                      std::uint64_t seed) {
  if (samples == 0) {
    throw OracleError(OracleErrorCode::no_samples,
                      "monte_carlo_distribution requires at least one sample");
  }

  EmpiricalDistribution dist;
  dist.config = cfg;
  dist.source = SampleSource::monte_carlo;
  dist.total_samples = samples;
  dist.seed = seed;

  const std::uint64_t input_mask = detail::mask_bits(cfg.n);
  detail::MagnitudeCounter counter(cfg);
  const std::uint64_t chunks = (samples + kMonteCarloChunk - 1) / kMonteCarloChunk;
  for (std::uint64_t chunk = 0; chunk < chunks; ++chunk) {
    std::mt19937_64 rng(detail::splitmix64_at(seed, chunk));
    const std::uint64_t begin = chunk * kMonteCarloChunk;
    const std::uint64_t end = std::min(samples, begin + kMonteCarloChunk);
    for (std::uint64_t s = begin; s < end; ++s) {
      const std::uint64_t a = rng() & input_mask;
      const std::uint64_t b = rng() & input_mask;
      const BehavioralResult r = approx_add(cfg, a, b);
      if (!r.error_is_nonpositive()) {
        ++dist.positive_error_pairs;
      }
      counter.add(r.error_magnitude());
    }
  }
  counter.merge_into(dist.counts);
  return dist;
}

}  // namespace adderstats
