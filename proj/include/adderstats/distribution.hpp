#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "adderstats/config.hpp"
#include "adderstats/error_rate.hpp"
#include "adderstats/prob.hpp"
#include "adderstats/signal_probs.hpp"

namespace adderstats {

/// One point of the error distribution. A wrong speculated carry always
/// makes the approximate sum smaller, and the magnitude of the deficit has
/// 1-bits only at block boundaries: ones lists the block indices carrying a
/// 1, highest first, with every index in [t+1, m-1] and adjacent indices
/// more than t apart. The zero pattern (correct output) has an empty list.
template <ProbabilityMode P>
struct ErrorPattern {
  std::vector<int> ones;  // block indices, strictly descending
  BigInt magnitude;       // sum of 2^(index * k)
  P probability;

  friend bool operator==(const ErrorPattern& a, const ErrorPattern& b) {
    return a.ones == b.ones && a.magnitude == b.magnitude &&
           a.probability == b.probability;
  }
};

/// The complete distribution: every reachable pattern including the zero
/// pattern, sorted by ascending magnitude, probabilities summing to one.
template <ProbabilityMode P>
struct ErrorDistribution {
  AdderConfig config;
  std::vector<ErrorPattern<P>> patterns;

  friend bool operator==(const ErrorDistribution& a, const ErrorDistribution& b) {
    return a.config == b.config && a.patterns == b.patterns;
  }
};

/// Pattern counts by block span: counts[i-1] (for i in 1..m) is the number
/// of error patterns, including the zero pattern, an i-block adder tail
/// admits. The recurrence splits on whether the lowest admissible block
/// carries a 1 (which excludes the next t blocks) or not:
///
///   x_1 = ... = x_{t+1} = 1,   x_i = x_{i-t-1} + x_{i-1}  for i > t+1.
///
/// The total pattern count is x_m: 2^(m-1) when t = 0, the m-th Fibonacci
/// number when t = 1.
inline std::vector<BigInt> pattern_count_sequence(const AdderConfig& cfg) {
  std::vector<BigInt> x(static_cast<std::size_t>(cfg.m) + 1);
  for (int i = 1; i <= cfg.m; ++i) {
    x[i] = (i <= cfg.t + 1) ? BigInt(1) : BigInt(x[i - cfg.t - 1] + x[i - 1]);
  }
  x.erase(x.begin());
  return x;
}

/// Total number of error patterns (including the zero pattern), computed in
/// O(m) without enumeration.
inline BigInt count_patterns(const AdderConfig& cfg) {
  return pattern_count_sequence(cfg).back();
}

namespace detail {

/// Probability that, given a 1 at some block j of the error pattern, the
/// next 1 falls at block j + gap. Position independent under uniform
/// inputs, so it is tabulated by gap; entries below t+1 are unreachable and
/// left at zero.
///
/// A 1 at block i requires the t whole blocks below it to propagate and the
/// group below the generator window to raise the true carry the window
/// cannot see; everything between that group and block j must then keep the
/// shorter (imaginary) adder tail correct, contributing a prefix-correct
/// factor. When the window ends inside a block (k_prime > 0) there are two
/// disjoint ways: the left group propagates while the right group
/// generates, or the whole extra block propagates and the left group of the
/// block below generates.
template <ProbabilityMode P>
std::vector<P> next_one_prob_by_gap(const AdderConfig& cfg, const SignalProbs<P>& sp,
                                    const PrefixCorrectProbs<P>& prefix) {
  const int m = cfg.m;
  const int t = cfg.t;

  P pow_t = ProbTraits<P>::one();
  for (int j = 0; j < t; ++j) {
    pow_t = pow_t * sp.block.propagate;
  }

  std::vector<P> e(static_cast<std::size_t>(m), ProbTraits<P>::zero());
  for (int gap = t + 1; gap < m; ++gap) {
    if (cfg.k_prime == 0) {
      e[gap] = pow_t * sp.block.generate * prefix[gap - t - 1];
    } else if (gap == t + 1) {
      e[gap] = pow_t * sp.left->propagate * sp.right->generate;
    } else {
      e[gap] = pow_t * sp.left->propagate * sp.right->generate * prefix[gap - t - 1] +
               pow_t * sp.block.propagate * sp.left->generate * prefix[gap - t - 2];
    }
  }
  return e;
}

}  // namespace detail

/// Probability that, given a 1 at block j of the error pattern (j = 0 means
/// block i holds the rightmost 1), the next 1 falls at block i. Requires
/// t+1 <= i <= m-1, 0 <= j < i, and i - j > t; violations are programming
/// errors.
template <ProbabilityMode P>
P next_one_prob(const AdderConfig& cfg, const SignalProbs<P>& sp,
                const PrefixCorrectProbs<P>& prefix, int i, int j) {
  if (i < cfg.t + 1 || i > cfg.m - 1 || j < 0 || j >= i || i - j <= cfg.t) {
    throw std::logic_error("next_one_prob: index contract violated (i=" +
                           std::to_string(i) + ", j=" + std::to_string(j) + ")");
  }
  return detail::next_one_prob_by_gap(cfg, sp, prefix)[static_cast<std::size_t>(i - j)];
}

enum class StreamOutcome { completed, aborted };

template <ProbabilityMode P>
struct StreamSummary {
  std::uint64_t visited = 0;  // patterns delivered, zero pattern included
  P mass = ProbTraits<P>::zero();
  StreamOutcome outcome = StreamOutcome::completed;
};

/// Walks every error pattern exactly once, depth first, and hands each to
/// the visitor. At each block i the traversal first places a 1 (jumping
/// past the t blocks an error 1 excludes) and then skips to block i+1;
/// reaching past the last block finalizes the pattern with the probability
/// that nothing above its highest 1 goes wrong. Peak memory is O(m),
/// independent of the pattern count, and the visit order is deterministic.
///
/// The visitor receives const ErrorPattern<P>& and may return bool; false
/// aborts the walk, reported as StreamOutcome::aborted.
template <ProbabilityMode P, class Visitor>
StreamSummary<P> stream_distribution(const AdderConfig& cfg, Visitor&& visit) {
  const int m = cfg.m;
  const int t = cfg.t;

  const SignalProbs<P> sp = signal_probs<P>(cfg);
  const PrefixCorrectProbs<P> prefix = prefix_correct_probs(cfg, sp);
  const std::vector<P> edge = detail::next_one_prob_by_gap(cfg, sp, prefix);

  struct Frame {
    int i;
    int j;
    std::uint32_t depth;  // number of ones already placed below
    BigInt magnitude;
    P prob;
  };

  std::vector<Frame> stack;
  std::vector<int> path(static_cast<std::size_t>(m), 0);  // ones, ascending
  stack.push_back(Frame{t + 1, 0, 0, BigInt(0), ProbTraits<P>::one()});

  StreamSummary<P> summary;
  ErrorPattern<P> pattern;
  while (!stack.empty()) {
    Frame frame = std::move(stack.back());
    stack.pop_back();

    if (frame.i >= m) {
      pattern.ones.assign(path.rend() - frame.depth, path.rend());
      pattern.magnitude = std::move(frame.magnitude);
      pattern.probability = frame.prob * prefix[m - frame.j - 1];
      ++summary.visited;
      summary.mass += pattern.probability;
      bool keep_going = true;
      if constexpr (std::is_void_v<decltype(visit(pattern))>) {
        visit(pattern);
      } else {
        keep_going = static_cast<bool>(visit(pattern));
      }
      if (!keep_going) {
        summary.outcome = StreamOutcome::aborted;
        return summary;
      }
      continue;
    }

    // Skip branch pushed first so the place branch is explored first.
    stack.push_back(Frame{frame.i + 1, frame.j, frame.depth, frame.magnitude, frame.prob});
    path[frame.depth] = frame.i;
    stack.push_back(Frame{frame.i + t + 1, frame.i, frame.depth + 1,
                          frame.magnitude + (BigInt(1) << (frame.i * cfg.k)),
                          frame.prob * edge[static_cast<std::size_t>(frame.i - frame.j)]});
  }
  return summary;
}

inline constexpr std::uint64_t kDefaultPatternCap = std::uint64_t{1} << 26;

class PatternCapError : public std::runtime_error {
public:
  PatternCapError(BigInt predicted, std::uint64_t cap)
      : std::runtime_error(
            "enumeration refused: predicted pattern count " + predicted.str() +
            " exceeds the cap of " + std::to_string(cap) +
            "; use stream_distribution for memory-bounded delivery"),
        predicted_(std::move(predicted)),
        cap_(cap) {}

  const BigInt& predicted() const { return predicted_; }
  std::uint64_t cap() const { return cap_; }

private:
  BigInt predicted_;
  std::uint64_t cap_;
};

/// Materializes the complete error distribution, sorted by ascending
/// magnitude. Runtime is proportional to the pattern count; predicted
/// counts above max_patterns are refused up front.
template <ProbabilityMode P>
ErrorDistribution<P> enumerate_distribution(const AdderConfig& cfg,
                                            std::uint64_t max_patterns = kDefaultPatternCap) {
  const BigInt predicted = count_patterns(cfg);
  if (predicted > max_patterns) {
    throw PatternCapError(predicted, max_patterns);
  }

  ErrorDistribution<P> dist;
  dist.config = cfg;
  dist.patterns.reserve(predicted.template convert_to<std::size_t>());
  stream_distribution<P>(cfg, [&dist](const ErrorPattern<P>& pattern) {
    dist.patterns.push_back(pattern);
  });
  std::sort(dist.patterns.begin(), dist.patterns.end(),
            [](const ErrorPattern<P>& a, const ErrorPattern<P>& b) {
              return a.magnitude < b.magnitude;
            });
  return dist;
}

}  // namespace adderstats
