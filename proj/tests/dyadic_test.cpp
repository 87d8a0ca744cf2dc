#include "adderstats/dyadic.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

namespace adderstats {
namespace {

Dyadic ratio(std::int64_t num, std::uint64_t exp) { return Dyadic(BigInt(num), exp); }

TEST(Dyadic, RepresentationIsCanonical) {
  const Dyadic half = ratio(4, 3);  // 4/8 normalizes to 1/2
  EXPECT_EQ(half.numerator(), 1);
  EXPECT_EQ(half.exponent(), 1u);

  const Dyadic zero = ratio(0, 17);
  EXPECT_TRUE(zero.is_zero());
  EXPECT_EQ(zero.exponent(), 0u);

  const Dyadic six = ratio(12, 1);  // integral values keep exp 0
  EXPECT_EQ(six.numerator(), 6);
  EXPECT_EQ(six.exponent(), 0u);
}

TEST(Dyadic, BasicArithmetic) {
  EXPECT_EQ(ratio(1, 1) + ratio(1, 2), ratio(3, 2));
  EXPECT_EQ(Dyadic::one() - ratio(3, 2), ratio(1, 2));
  EXPECT_EQ(ratio(3, 2) * ratio(5, 3), ratio(15, 5));
  EXPECT_EQ(ratio(1, 4) * Dyadic(BigInt(16)), Dyadic::one());
}

TEST(Dyadic, Ordering) {
  EXPECT_LT(ratio(1, 2), ratio(1, 1));
  EXPECT_GT(Dyadic::one(), ratio(15, 4));
  EXPECT_LE(ratio(3, 2), ratio(6, 3));
  EXPECT_LT(ratio(-1, 0), Dyadic());
}

TEST(Dyadic, RingLawsOnRandomOperands) {
  std::mt19937_64 rng(20240811);
  std::uniform_int_distribution<std::int64_t> num_dist(-(1ll << 40), 1ll << 40);
  std::uniform_int_distribution<std::uint64_t> exp_dist(0, 70);
  for (int trial = 0; trial < 500; ++trial) {
    const Dyadic a = ratio(num_dist(rng), exp_dist(rng));
    const Dyadic b = ratio(num_dist(rng), exp_dist(rng));
    const Dyadic c = ratio(num_dist(rng), exp_dist(rng));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a - b, Dyadic() - (b - a));
  }
}

TEST(Dyadic, DoubleRoundTripIsExact) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double x = std::ldexp(uni(rng), -static_cast<int>(rng() % 60));
    EXPECT_EQ(Dyadic::from_double(x).to_double(), x);
  }
  EXPECT_EQ(Dyadic::from_double(0.0).to_double(), 0.0);
  EXPECT_EQ(Dyadic::from_double(1.0), Dyadic::one());
  EXPECT_EQ(Dyadic::from_double(0.375), ratio(3, 3));
  EXPECT_EQ(Dyadic::from_double(-0.25), ratio(-1, 2));
}

TEST(Dyadic, ToDoubleHandlesWideValues) {
  // (2^200 + 1) / 2^200 is 1 + 2^-200; nearest double is 1.
  const Dyadic wide((BigInt(1) << 200) + 1, 200);
  EXPECT_DOUBLE_EQ(wide.to_double(), 1.0);

  // 2^-1200 underflows to zero, as any double computation would.
  EXPECT_EQ(ratio(1, 1200).to_double(), 0.0);

  // A 100-bit numerator still converts with ~1 ulp accuracy.
  const Dyadic big((BigInt(1) << 100) - 1, 101);
  EXPECT_NEAR(big.to_double(), 0.5, 1e-15);
}

TEST(Dyadic, FromDoubleRejectsNonFinite) {
  EXPECT_THROW(Dyadic::from_double(std::nan("")), std::invalid_argument);
  EXPECT_THROW(Dyadic::from_double(INFINITY), std::invalid_argument);
}

TEST(Dyadic, Rendering) {
  EXPECT_EQ(ratio(3, 5).to_string(), "3/2^5");
  EXPECT_EQ(Dyadic(BigInt(42)).to_string(), "42");
  EXPECT_EQ(Dyadic().to_string(), "0");
}

}  // namespace
}  // namespace adderstats
