#include <gtest/gtest.h>

#include "property_suite.h"

namespace {

TEST(InfoProperties, TwoHundredRandomLaws) {
  auto r = piclab::test_support::run_property_suite(20240611, 200);
  EXPECT_EQ(r.distributions, 200);
  for (const auto& f : r.failures) ADD_FAILURE() << f;
  EXPECT_GT(r.premise_a_held, 60);
  EXPECT_GT(r.premise_b_held, 60);
  EXPECT_EQ(r.prefix_free_checks, 200);
}

TEST(InfoProperties, OtherSeeds) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    auto r = piclab::test_support::run_property_suite(seed, 60);
    EXPECT_TRUE(r.failures.empty()) << "seed " << seed << ": " << r.failures.front();
  }
}

}  // namespace
