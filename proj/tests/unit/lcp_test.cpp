#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "piclab/compression/lcp.h"

namespace {

using namespace piclab::compression;
using Kind = LcpResult::Kind;

TEST(CeilLog2, Values) {
  EXPECT_EQ(ceil_log2(1), 0);
  EXPECT_EQ(ceil_log2(2), 1);
  EXPECT_EQ(ceil_log2(3), 2);
  EXPECT_EQ(ceil_log2(4), 2);
  EXPECT_EQ(ceil_log2(5), 3);
  EXPECT_EQ(ceil_log2(1024), 10);
  EXPECT_THROW(ceil_log2(0), std::invalid_argument);
}

TEST(LcpExact, Kinds) {
  auto eq = lcp_exact("0110", "0110");
  EXPECT_TRUE(eq.equal());
  EXPECT_EQ(eq.index, 4u);
  EXPECT_EQ(eq.bits, 9u);  // n = 4: 3 * ceil(log2 6)

  auto diff = lcp_exact("0110", "0100");
  EXPECT_EQ(diff.kind, Kind::kDiffersAt);
  EXPECT_EQ(diff.index, 2u);

  auto prefix = lcp_exact("01", "0110");
  EXPECT_EQ(prefix.kind, Kind::kLengthMismatch);
  EXPECT_EQ(prefix.index, 2u);

  auto empty = lcp_exact("", "");
  EXPECT_TRUE(empty.equal());
  EXPECT_EQ(empty.bits, 3u);
}

Bits random_bits(std::mt19937_64& rng, std::size_t n) {
  Bits b(n, '0');
  for (auto& c : b) c = (rng() & 1u) ? '1' : '0';
  return b;
}

TEST(LcpRandomized, EqualStringsAreAlwaysEqual) {
  std::mt19937_64 rng(5);
  SharedTape tape(9);
  for (int trial = 0; trial < 200; ++trial) {
    auto x = random_bits(rng, 1 + rng() % 40);
    auto r = lcp_randomized(x, x, 0.2, tape);
    EXPECT_TRUE(r.equal());
    EXPECT_EQ(r.index, x.size());
  }
}

TEST(LcpRandomized, ErrorRateWithinBudget) {
  std::mt19937_64 rng(17);
  SharedTape tape(23);
  const double eps = 0.1;
  const int trials = 4000;
  int wrong = 0;
  for (int t = 0; t < trials; ++t) {
    const std::size_t n = 8 + rng() % 57;
    auto x = random_bits(rng, n);
    auto y = x;
    const std::size_t at = rng() % n;
    y[at] = y[at] == '0' ? '1' : '0';
    auto r = lcp_randomized(x, y, eps, tape);
    if (r.kind != Kind::kDiffersAt || r.index != at) ++wrong;
  }
  // Four standard deviations above eps.
  EXPECT_LE(wrong, static_cast<int>(trials * eps + 4 * std::sqrt(trials * eps * (1 - eps))));
}

TEST(LcpRandomized, CostGrowsLogarithmically) {
  SharedTape tape(1);
  Bits x(1000, '0'), y(1000, '0');
  y[700] = '1';
  auto r = lcp_randomized(x, y, 0.01, tape);
  // 2 * ceil(log2 1002) for lengths, ceil(log2 1001) = 10 tests of
  // ceil(log2(10 / 0.01)) + 1 = 11 bits.
  EXPECT_EQ(r.bits, 20u + 10u * 11u);
}

TEST(LcpRandomized, LengthMismatchIsReported) {
  SharedTape tape(3);
  auto r = lcp_randomized("0101", "010111", 0.05, tape);
  EXPECT_EQ(r.kind, Kind::kLengthMismatch);
}

TEST(LcpBox, CountsCallsAndValidates) {
  auto exact = LcpBox::exact();
  EXPECT_TRUE(exact.is_exact());
  exact("0", "1");
  exact("0", "0");
  EXPECT_EQ(exact.calls(), 2u);
  EXPECT_THROW(LcpBox::randomized(0.0, 1), std::invalid_argument);
  EXPECT_THROW(LcpBox::randomized(1.0, 1), std::invalid_argument);
  auto a = LcpBox::randomized(0.3, 77);
  auto b = LcpBox::randomized(0.3, 77);
  Bits x(64, '1'), y(64, '1');
  y[10] = '0';
  for (int n = 0; n < 20; ++n) EXPECT_EQ(a(x, y).index, b(x, y).index);
}

}  // namespace
