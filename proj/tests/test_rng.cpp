#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "beesvrp/rng.hpp"

namespace beesvrp {
namespace {

TEST(Rng, SameSeedSameStream) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a(), b());
}

TEST(Rng, UniformIntStaysInRangeAndHitsEnds) {
  Rng rng(7);
  std::set<std::int64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto v = rng.uniform_int(-3, 3);
    ASSERT_GE(v, -3);
    ASSERT_LE(v, 3);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 7u);
  EXPECT_EQ(rng.uniform_int(5, 5), 5);
}

TEST(Rng, Uniform01IsHalfOpen) {
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Rng, TriangularBoundsAndMean) {
  Rng rng(3);
  double sum = 0.0;
  constexpr int draws = 200000;
  for (int i = 0; i < draws; ++i) {
    const double v = rng.triangular(0.0, 0.4, 0.8);
    ASSERT_GE(v, 0.0);
    ASSERT_LE(v, 0.8);
    sum += v;
  }
  EXPECT_NEAR(sum / draws, 0.4, 0.005);
  EXPECT_EQ(rng.triangular(0.3, 0.3, 0.3), 0.3);
}

TEST(Rng, ShuffleIsAPermutation) {
  Rng rng(11);
  std::vector<int> v(50);
  std::iota(v.begin(), v.end(), 0);
  rng.shuffle(std::span<int>(v));
  auto sorted = v;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 50; ++i) EXPECT_EQ(sorted[static_cast<std::size_t>(i)], i);
}

TEST(Rng, DerivedSeedsDiffer) {
  std::set<std::uint64_t> seeds;
  for (std::uint64_t s = 0; s < 1000; ++s) seeds.insert(derive_seed(99, s));
  EXPECT_EQ(seeds.size(), 1000u);
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  static_assert(derive_seed(5, 5) == derive_seed(5, 5));
}

}  // namespace
}  // namespace beesvrp
