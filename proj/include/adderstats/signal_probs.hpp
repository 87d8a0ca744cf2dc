#pragma once

#include <optional>

#include "adderstats/config.hpp"
#include "adderstats/prob.hpp"

namespace adderstats {

/// Probabilities that a group of bits propagates, generates, or kills an
/// incoming carry. The three events partition the group's input space, so
/// propagate + generate + kill = 1.
template <ProbabilityMode P>
struct GroupProbs {
  P propagate;
  P generate;
  P kill;
};

/// Under uniform inputs, a w-bit group propagates with probability 2^-w and
/// generates (or kills) with probability 1/2 - 2^-(w+1) = (2^w - 1)/2^(w+1).
template <ProbabilityMode P>
GroupProbs<P> group_signal_probs(int width) {
  GroupProbs<P> g;
  g.propagate = ProbTraits<P>::from_parts(BigInt(1), static_cast<std::uint64_t>(width));
  g.generate = ProbTraits<P>::from_parts((BigInt(1) << width) - 1,
                                         static_cast<std::uint64_t>(width) + 1);
  g.kill = g.generate;
  return g;
}

/// Group-signal probabilities for one block. When the generator length is
/// not a multiple of the block size (k_prime > 0), each block additionally
/// splits into a left group of the top k_prime bits and a right group of the
/// remaining k - k_prime bits; a generator window then ends inside a block,
/// covering only that block's left group.
template <ProbabilityMode P>
struct SignalProbs {
  GroupProbs<P> block;
  std::optional<GroupProbs<P>> left;   // top k_prime bits; engaged iff k_prime > 0
  std::optional<GroupProbs<P>> right;  // bottom k - k_prime bits; engaged iff k_prime > 0
};

template <ProbabilityMode P>
SignalProbs<P> signal_probs(const AdderConfig& cfg) {
  SignalProbs<P> s;
  s.block = group_signal_probs<P>(cfg.k);
  if (cfg.k_prime > 0) {
    s.left = group_signal_probs<P>(cfg.k_prime);
    s.right = group_signal_probs<P>(cfg.k - cfg.k_prime);
  }
  return s;
}

}  // namespace adderstats
