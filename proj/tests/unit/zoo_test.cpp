#include <gtest/gtest.h>

#include <vector>

#include "piclab/model/errors.h"
#include "piclab/model/simulator.h"
#include "piclab/zoo/zoo.h"

namespace {

using namespace piclab;
using model::Bits;

void expect_computes_function(const zoo::ZooEntry& e) {
  ASSERT_TRUE(e.function.has_value()) << e.name;
  auto table = model::run_all(e.protocol);
  for (const auto& r : table.runs) {
    for (model::PlayerId i = 0; i < e.protocol.k; ++i) {
      EXPECT_EQ(r.outputs[static_cast<std::size_t>(i)], (*e.function)(i, r.inputs))
          << e.protocol.name << " player " << i;
    }
  }
}

TEST(Zoo, ParityProtocolsComputeParity) {
  for (int k : {3, 4}) {
    for (int n : {1, 2}) {
      expect_computes_function(zoo::ring_parity(k, n));
      expect_computes_function(zoo::star_parity(k, n));
    }
  }
}

TEST(Zoo, AndAndQIndex) {
  expect_computes_function(zoo::and_opt());
  expect_computes_function(zoo::q_index(3, 1));
  expect_computes_function(zoo::q_index(4, 2));
}

TEST(Zoo, CommunicationShapes) {
  auto ring = model::run_all(zoo::ring_parity(4, 2).protocol);
  for (const auto& r : ring.runs) EXPECT_EQ(r.total_bits, 8u);
  auto star = model::run_all(zoo::star_parity(4, 2).protocol);
  for (const auto& r : star.runs) EXPECT_EQ(r.total_bits, 6u);
  auto conj = model::run_all(zoo::and_opt().protocol);
  for (const auto& r : conj.runs) EXPECT_EQ(r.total_bits, 2u);
}

TEST(Zoo, Registry) {
  auto names = zoo::registry_names();
  for (const char* n : {"ring-parity", "star-parity", "and-opt", "q-index", "order-leak"}) {
    EXPECT_TRUE(zoo::in_registry(n)) << n;
  }
  EXPECT_EQ(names.size(), 5u);
  EXPECT_FALSE(zoo::in_registry("nope"));
  EXPECT_THROW(zoo::make("nope", {}), model::ConfigError);
  EXPECT_THROW(zoo::make("ring-parity", {2, 1, 1}), model::ConfigError);
  EXPECT_THROW(zoo::make("q-index", {3, 1, 3}), model::ConfigError);
  EXPECT_EQ(zoo::make("star-parity", {4, 2, 1}).protocol.k, 4);
}

TEST(Zoo, BitHelpers) {
  EXPECT_EQ(zoo::to_bits(5, 4), "0101");
  EXPECT_EQ(zoo::xor_bits("0110", "1100"), "1010");
  auto f = zoo::parity_family(1);
  std::vector<Bits> x{"1", "1", "1"};
  EXPECT_EQ(f(1, x), "1");
  EXPECT_EQ(f(0, x), "0");
}

}  // namespace
