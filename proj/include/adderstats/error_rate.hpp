#pragma once

#include <utility>
#include <vector>

#include "adderstats/config.hpp"
#include "adderstats/prob.hpp"
#include "adderstats/signal_probs.hpp"

namespace adderstats {

/// probs[i] is the probability that the speculated carry-ins of blocks
/// 0 through i are all correct; complement[i] is the probability that at
/// least one of them is wrong. The adder output is correct exactly when
/// every speculated carry is, so the error rate is complement[m-1].
///
/// Both vectors are computed by their own recursions rather than deriving
/// one from the other: in float mode 1 - probs[m-1] would cancel away all
/// relative precision once the error rate drops below ~1e-13, while the
/// complement recursion sums only positive terms. In exact mode the two
/// vectors add to one bit-exactly.
template <ProbabilityMode P>
struct PrefixCorrectProbs {
  AdderConfig config;
  std::vector<P> probs;       // length m, non-increasing, probs[i] = 1 for i <= t
  std::vector<P> complement;  // complement[i] = 1 - probs[i], cancellation-free

  const P& operator[](std::size_t i) const { return probs[i]; }
  std::size_t size() const { return probs.size(); }

  P error_rate() const { return complement.back(); }
};

/// Bottom-up evaluation of the prefix-correctness recursion.
///
/// For i <= t every generator window still covers all lower input bits, so
/// probs[i] = 1. For i > t, classify the blocks below block i from the top
/// down: a generate or kill outcome within the window pins the speculated
/// carry to the correct value and reduces to a shorter prefix; a propagate
/// run that exhausts the window can only stay correct if the first decided
/// group below it kills (a generate there means the true carry is 1 while
/// the truncated window speculates 0); an all-propagate suffix down to block
/// 0 is always correct. Under uniform inputs the per-block probabilities are
/// position independent, so the propagate prefix products collapse to powers.
///
/// With pp = P(block propagates), pg = P(generates), pk = P(kills), and
/// pgl = P(left group generates) this gives, for i > t:
///
///   probs[i] = pp^i
///            + sum_{j=1..t} pp^(j-1) * pg * probs[i-j]
///            + sum_{j=1..i} pp^(j-1) * pk * probs[i-j]
///            + [k_prime > 0]  pp^t * pgl * probs[i-t-1]
///
/// The extra term appears only when the generator ends inside a block: its
/// window additionally covers that block's left group, whose generate
/// outcome still yields a correct speculated carry.
///
/// The complement recursion carries the same reduction weights and adds the
/// branches the correctness recursion drops, namely the generate events the
/// window cannot see (a generate right below an exhausted window, which the
/// speculation misreads as 0). For aligned windows those leak pp^(j-1) * pg
/// for every run length j in [t+1, i]; for split windows the run of length
/// t+1 leaks only its left-propagate right-generate part, the left-generate
/// part being visible.
template <ProbabilityMode P>
PrefixCorrectProbs<P> prefix_correct_probs(const AdderConfig& cfg,
                                           const SignalProbs<P>& sp) {
  const int m = cfg.m;
  const int t = cfg.t;

  std::vector<P> pow_p(static_cast<std::size_t>(m) + 1);
  pow_p[0] = ProbTraits<P>::one();
  for (int j = 1; j <= m; ++j) {
    pow_p[j] = pow_p[j - 1] * sp.block.propagate;
  }

  // Probability that a propagate run of length j ends with a generate the
  // window cannot see. Valid for j in [t+1, i].
  const auto leak = [&](int j) -> P {
    if (cfg.k_prime > 0 && j == t + 1) {
      return pow_p[t] * sp.left->propagate * sp.right->generate;
    }
    return pow_p[j - 1] * sp.block.generate;
  };

  std::vector<P> d(static_cast<std::size_t>(m));
  std::vector<P> q(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    if (i <= t) {
      d[i] = ProbTraits<P>::one();
      q[i] = ProbTraits<P>::zero();
      continue;
    }
    P correct = pow_p[i];
    P wrong = ProbTraits<P>::zero();
    for (int j = 1; j <= t; ++j) {
      const P weight = pow_p[j - 1] * sp.block.generate;
      correct += weight * d[i - j];
      wrong += weight * q[i - j];
    }
    for (int j = 1; j <= i; ++j) {
      const P weight = pow_p[j - 1] * sp.block.kill;
      correct += weight * d[i - j];
      wrong += weight * q[i - j];
    }
    if (cfg.k_prime > 0) {
      const P weight = pow_p[t] * sp.left->generate;
      correct += weight * d[i - t - 1];
      wrong += weight * q[i - t - 1];
    }
    for (int j = t + 1; j <= i; ++j) {
      wrong += leak(j);
    }
    d[i] = correct;
    q[i] = wrong;
  }
  return PrefixCorrectProbs<P>{cfg, std::move(d), std::move(q)};
}

template <ProbabilityMode P>
PrefixCorrectProbs<P> prefix_correct_probs(const AdderConfig& cfg) {
  return prefix_correct_probs(cfg, signal_probs<P>(cfg));
}

/// Probability that at least one speculated carry is wrong.
template <ProbabilityMode P>
P error_rate(const AdderConfig& cfg) {
  return prefix_correct_probs<P>(cfg).error_rate();
}

}  // namespace adderstats
