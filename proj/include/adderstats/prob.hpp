#pragma once

#include <cstdint>
#include <type_traits>
#include <utility>

#include "adderstats/dyadic.hpp"

namespace adderstats {

/// Numeric-mode glue. The analysis pipeline is templated on the probability
/// type P; the two supported modes are binary64 (fast, default) and Dyadic
/// (bit-exact, for equality tests against counting oracles).
template <class P>
struct ProbTraits;

template <>
struct ProbTraits<double> {
  static constexpr bool exact = false;
  static constexpr const char* mode_name = "float";

  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double from_parts(BigInt num, std::uint64_t exp) {
    return Dyadic(std::move(num), exp).to_double();
  }
  static Dyadic to_dyadic(double p) { return Dyadic::from_double(p); }
  static double to_double(double p) { return p; }
};

template <>
struct ProbTraits<Dyadic> {
  static constexpr bool exact = true;
  static constexpr const char* mode_name = "exact";

  static Dyadic zero() { return Dyadic(); }
  static Dyadic one() { return Dyadic::one(); }
  static Dyadic from_parts(BigInt num, std::uint64_t exp) {
    return Dyadic(std::move(num), exp);
  }
  static const Dyadic& to_dyadic(const Dyadic& p) { return p; }
  static double to_double(const Dyadic& p) { return p.to_double(); }
};

template <class P>
concept ProbabilityMode = std::is_same_v<P, double> || std::is_same_v<P, Dyadic>;

}  // namespace adderstats
