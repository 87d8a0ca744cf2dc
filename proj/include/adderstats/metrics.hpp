#pragma once

#include <vector>

#include "adderstats/config.hpp"
#include "adderstats/distribution.hpp"
#include "adderstats/error_rate.hpp"
#include "adderstats/prob.hpp"

namespace adderstats {

/// Scalar error metrics. MED and MSE are accumulated in exact dyadic
/// arithmetic in both numeric modes (magnitudes reach 2^60 and their squares
/// 2^120, far beyond what a double can add without silent loss) and rounded
/// once on request.
template <ProbabilityMode P>
struct MetricsReport {
  AdderConfig config;
  P er;        // probability of a non-zero error
  Dyadic med;  // expected error magnitude
  Dyadic mse;  // expected squared error magnitude

  double er_value() const { return ProbTraits<P>::to_double(er); }
  double med_value() const { return med.to_double(); }
  double mse_value() const { return mse.to_double(); }
};

template <ProbabilityMode P>
MetricsReport<P> metrics_from_distribution(const ErrorDistribution<P>& dist) {
  MetricsReport<P> report;
  report.config = dist.config;

  // ER is the non-zero mass, summed directly: equal to 1 - P(zero pattern)
  // since the distribution is complete, but free of the cancellation that
  // the subtraction would cost in float mode.
  P erring = ProbTraits<P>::zero();
  for (const ErrorPattern<P>& pattern : dist.patterns) {
    if (pattern.magnitude.is_zero()) {
      continue;
    }
    erring += pattern.probability;
    const Dyadic p = ProbTraits<P>::to_dyadic(pattern.probability);
    report.med += p * Dyadic(pattern.magnitude);
    report.mse += p * Dyadic(pattern.magnitude * pattern.magnitude);
  }
  report.er = erring;
  return report;
}

template <ProbabilityMode P>
struct LeadingOneEntry {
  int block_index;   // i, in [t+1, m-1]
  int bit_position;  // i * k
  P probability;     // mass of patterns whose highest 1 sits at block i
};

/// Distribution of the highest 1 in the error pattern, i.e. the mass of
/// error magnitudes in [2^(ik), 2^((i+1)k)) per block index i. Entries sum
/// to the error rate, since the leading-one events partition the non-zero
/// error event.
template <ProbabilityMode P>
struct LeadingOneHistogram {
  AdderConfig config;
  std::vector<LeadingOneEntry<P>> entries;

  P total() const {
    P sum = ProbTraits<P>::zero();
    for (const auto& entry : entries) {
      sum += entry.probability;
    }
    return sum;
  }
};

/// Analytic path: P(highest 1 at block i) factors into the probability that
/// block i carries a 1 at all times the probability that every block above
/// it stays correct. The first factor is constant in i when the generator
/// length is a multiple of the block size; otherwise the lowest admissible
/// block i = t+1 misses one of the two contributing events and its bar is
/// smaller than all later ones by that constant.
template <ProbabilityMode P>
LeadingOneHistogram<P> leading_one_histogram(const AdderConfig& cfg) {
  const SignalProbs<P> sp = signal_probs<P>(cfg);
  const PrefixCorrectProbs<P> prefix = prefix_correct_probs(cfg, sp);

  P pow_t = ProbTraits<P>::one();
  for (int j = 0; j < cfg.t; ++j) {
    pow_t = pow_t * sp.block.propagate;
  }

  LeadingOneHistogram<P> histogram;
  histogram.config = cfg;
  for (int i = cfg.t + 1; i <= cfg.m - 1; ++i) {
    P one_at_i;
    if (cfg.k_prime == 0) {
      one_at_i = pow_t * sp.block.generate;
    } else {
      const P a = pow_t * sp.left->propagate * sp.right->generate;
      if (i == cfg.t + 1) {
        one_at_i = a;
      } else {
        one_at_i = a + pow_t * sp.block.propagate * sp.left->generate;
      }
    }
    histogram.entries.push_back(
        LeadingOneEntry<P>{i, i * cfg.k, prefix[cfg.m - i - 1] * one_at_i});
  }
  return histogram;
}

/// Binning path: the same histogram read off an enumerated distribution.
/// Must agree with the analytic path entry by entry.
template <ProbabilityMode P>
LeadingOneHistogram<P> bin_by_leading_one(const ErrorDistribution<P>& dist) {
  const AdderConfig& cfg = dist.config;
  LeadingOneHistogram<P> histogram;
  histogram.config = cfg;
  if (cfg.t + 1 > cfg.m - 1) {
    return histogram;  // exact adder: no non-zero patterns
  }
  std::vector<P> mass(static_cast<std::size_t>(cfg.m), ProbTraits<P>::zero());
  for (const ErrorPattern<P>& pattern : dist.patterns) {
    if (!pattern.ones.empty()) {
      mass[static_cast<std::size_t>(pattern.ones.front())] += pattern.probability;
    }
  }
  for (int i = cfg.t + 1; i <= cfg.m - 1; ++i) {
    histogram.entries.push_back(LeadingOneEntry<P>{i, i * cfg.k, mass[i]});
  }
  return histogram;
}

}  // namespace adderstats
