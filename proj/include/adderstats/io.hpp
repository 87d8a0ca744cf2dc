#pragma once

#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "adderstats/config.hpp"
#include "adderstats/distribution.hpp"
#include "adderstats/dyadic.hpp"
#include "adderstats/metrics.hpp"
#include "adderstats/oracle.hpp"
#include "adderstats/prob.hpp"

namespace adderstats {

using ordered_json = nlohmann::ordered_json;

/// Probabilities cross the wire as three fields: the exact dyadic numerator
/// (decimal string), the exact power-of-two exponent, and a float rendering.
/// In float mode the num/exp pair is the exact decomposition of the double,
/// so the schema is identical in both modes and nothing is lost either way.
inline ordered_json dyadic_to_json(const Dyadic& value) {
  return ordered_json{{"num", value.numerator().str()},
                      {"exp", value.exponent()},
                      {"float", value.to_double()}};
}

template <ProbabilityMode P>
ordered_json prob_to_json(const P& p) {
  ordered_json j = dyadic_to_json(ProbTraits<P>::to_dyadic(p));
  j["float"] = ProbTraits<P>::to_double(p);
  return j;
}

inline Dyadic dyadic_from_json(const ordered_json& j) {
  return Dyadic(BigInt(j.at("num").get<std::string>()),
                j.at("exp").get<std::uint64_t>());
}

template <ProbabilityMode P>
P prob_from_json(const ordered_json& j) {
  if constexpr (ProbTraits<P>::exact) {
    return dyadic_from_json(j);
  } else {
    return j.at("float").get<double>();
  }
}

inline ordered_json config_to_json(const AdderConfig& cfg) {
  return ordered_json{{"n", cfg.n}, {"k", cfg.k},           {"l", cfg.l},
                      {"m", cfg.m}, {"t", cfg.t}, {"k_prime", cfg.k_prime}};
}

inline AdderConfig config_from_json(const ordered_json& j) {
  return validate_config(j.at("n").get<int>(), j.at("k").get<int>(),
                         j.at("l").get<int>());
}

namespace detail {

/// Shortest-round-trip-safe float rendering for CSV cells.
inline std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

/// Ones vector as "9;6;3" (highest block first); empty for the zero pattern.
inline std::string format_ones(const std::vector<int>& ones) {
  std::string out;
  for (std::size_t idx = 0; idx < ones.size(); ++idx) {
    if (idx > 0) {
      out += ';';
    }
    out += std::to_string(ones[idx]);
  }
  return out;
}

}  // namespace detail

template <ProbabilityMode P>
ordered_json pattern_to_json(const ErrorPattern<P>& pattern) {
  return ordered_json{{"magnitude", pattern.magnitude.str()},
                      {"ones", pattern.ones},
                      {"prob", prob_to_json(pattern.probability)}};
}

template <ProbabilityMode P>
ErrorPattern<P> pattern_from_json(const ordered_json& j) {
  ErrorPattern<P> pattern;
  pattern.magnitude = BigInt(j.at("magnitude").get<std::string>());
  pattern.ones = j.at("ones").get<std::vector<int>>();
  pattern.probability = prob_from_json<P>(j.at("prob"));
  return pattern;
}

template <ProbabilityMode P>
ordered_json distribution_to_json(const ErrorDistribution<P>& dist) {
  ordered_json j;
  j["config"] = config_to_json(dist.config);
  j["mode"] = ProbTraits<P>::mode_name;
  j["pattern_count"] = std::to_string(dist.patterns.size());
  ordered_json patterns = ordered_json::array();
  for (const auto& pattern : dist.patterns) {
    patterns.push_back(pattern_to_json(pattern));
  }
  j["patterns"] = std::move(patterns);
  return j;
}

template <ProbabilityMode P>
ErrorDistribution<P> distribution_from_json(const ordered_json& j) {
  if (j.at("mode").get<std::string>() != ProbTraits<P>::mode_name) {
    throw std::invalid_argument("distribution_from_json: numeric mode mismatch: " +
                                j.at("mode").get<std::string>() + " vs " +
                                ProbTraits<P>::mode_name);
  }
  ErrorDistribution<P> dist;
  dist.config = config_from_json(j.at("config"));
  for (const auto& pj : j.at("patterns")) {
    dist.patterns.push_back(pattern_from_json<P>(pj));
  }
  return dist;
}

template <ProbabilityMode P>
ordered_json metrics_to_json(const MetricsReport<P>& report) {
  return ordered_json{{"er", prob_to_json(report.er)},
                      {"med", dyadic_to_json(report.med)},
                      {"mse", dyadic_to_json(report.mse)}};
}

/// Full analysis report: a distribution plus its derived metrics. Parses
/// back through distribution_from_json, which ignores the metrics block.
template <ProbabilityMode P>
ordered_json analysis_to_json(const ErrorDistribution<P>& dist,
                              const MetricsReport<P>& report) {
  ordered_json j;
  j["config"] = config_to_json(dist.config);
  j["mode"] = ProbTraits<P>::mode_name;
  j["pattern_count"] = std::to_string(dist.patterns.size());
  j["metrics"] = metrics_to_json(report);
  ordered_json patterns = ordered_json::array();
  for (const auto& pattern : dist.patterns) {
    patterns.push_back(pattern_to_json(pattern));
  }
  j["patterns"] = std::move(patterns);
  return j;
}

/// CSV form of a distribution, one row per pattern:
///   magnitude, log2_bucket (bit position of the leading one; empty for the
///   zero pattern), ones_vector, prob_float, prob_num, prob_exp.
template <ProbabilityMode P>
std::string distribution_to_csv(const ErrorDistribution<P>& dist) {
  std::ostringstream out;
  out << "magnitude,log2_bucket,ones_vector,prob_float,prob_num,prob_exp\n";
  for (const auto& pattern : dist.patterns) {
    const Dyadic p = ProbTraits<P>::to_dyadic(pattern.probability);
    out << pattern.magnitude.str() << ',';
    if (!pattern.ones.empty()) {
      out << pattern.ones.front() * dist.config.k;
    }
    out << ',' << detail::format_ones(pattern.ones) << ','
        << detail::format_double(ProbTraits<P>::to_double(pattern.probability))
        << ',' << p.numerator().str() << ',' << p.exponent() << '\n';
  }
  return out.str();
}

template <ProbabilityMode P>
ordered_json histogram_to_json(const LeadingOneHistogram<P>& histogram) {
  ordered_json j;
  j["config"] = config_to_json(histogram.config);
  j["mode"] = ProbTraits<P>::mode_name;
  ordered_json bars = ordered_json::array();
  for (const auto& entry : histogram.entries) {
    bars.push_back(ordered_json{{"block_index", entry.block_index},
                                {"bit_position", entry.bit_position},
                                {"prob", prob_to_json(entry.probability)}});
  }
  j["bars"] = std::move(bars);
  return j;
}

template <ProbabilityMode P>
std::string histogram_to_csv(const LeadingOneHistogram<P>& histogram) {
  std::ostringstream out;
  out << "block_index,bit_position,prob_float,prob_num,prob_exp\n";
  for (const auto& entry : histogram.entries) {
    const Dyadic p = ProbTraits<P>::to_dyadic(entry.probability);
    out << entry.block_index << ',' << entry.bit_position << ','
        << detail::format_double(ProbTraits<P>::to_double(entry.probability)) << ','
        << p.numerator().str() << ',' << p.exponent() << '\n';
  }
  return out.str();
}

inline ordered_json empirical_to_json(const EmpiricalDistribution& dist) {
  ordered_json j;
  j["config"] = config_to_json(dist.config);
  j["source"] = dist.source == SampleSource::exhaustive ? "exhaustive" : "monte_carlo";
  j["total_samples"] = dist.total_samples;
  if (dist.source == SampleSource::monte_carlo) {
    j["seed"] = dist.seed;
  }
  j["positive_error_pairs"] = dist.positive_error_pairs;
  ordered_json counts = ordered_json::array();
  for (const auto& [magnitude, count] : dist.counts) {
    counts.push_back(
        ordered_json{{"magnitude", std::to_string(magnitude)}, {"count", count}});
  }
  j["counts"] = std::move(counts);
  return j;
}

inline std::string empirical_to_csv(const EmpiricalDistribution& dist) {
  std::ostringstream out;
  out << "magnitude,count\n";
  for (const auto& [magnitude, count] : dist.counts) {
    out << magnitude << ',' << count << '\n';
  }
  return out.str();
}

}  // namespace adderstats
