#include <gtest/gtest.h>

#include <vector>

#include "fixtures.h"
#include "piclab/measures/measures.h"
#include "piclab/measures/transforms.h"
#include "piclab/model/errors.h"
#include "piclab/model/simulator.h"
#include "piclab/zoo/zoo.h"

namespace {

using namespace piclab;
using measures::InputDistribution;
using measures::ProtocolSpace;

constexpr double kTol = 1e-9;

std::vector<model::ProtocolDef> randomized_protocols() {
  std::vector<model::ProtocolDef> out{zoo::ring_parity(3, 1).protocol, zoo::ring_parity(3, 2).protocol};
  for (const char* name : {"masked_and.json", "public_swap.json", "masked_xor3.json"}) {
    out.push_back(test_support::load_fixture_tree(name).protocol);
  }
  return out;
}

TEST(Publicize, MovesAllPrivateBits) {
  auto p = zoo::ring_parity(3, 2).protocol;
  auto q = measures::publicize(p);
  EXPECT_EQ(q.total_private_bits(), 0);
  EXPECT_EQ(q.public_tape_bits, p.total_tape_bits());
  auto det = zoo::star_parity(3, 1).protocol;
  EXPECT_EQ(measures::publicize(det).public_tape_bits, 0);
}

TEST(Publicize, ReplaysTheOriginalRuns) {
  for (const auto& p : randomized_protocols()) {
    auto q = measures::publicize(p);
    auto table = model::run_all(p);
    for (const auto& e : table.runs) {
      auto tape = measures::interleave_tapes(p, e.private_tapes, e.public_tape);
      std::vector<model::Bits> none(static_cast<std::size_t>(p.k));
      auto f = model::run(q, e.inputs, none, tape);
      EXPECT_EQ(f.outputs, e.outputs) << p.name;
      EXPECT_EQ(f.received, e.received) << p.name;
    }
  }
}

TEST(Publicize, PreservesPicAndTurnsItIntoIc) {
  for (const auto& p : randomized_protocols()) {
    auto q = measures::publicize(p);
    ProtocolSpace sp(p), sq(q);
    auto mu = InputDistribution::uniform(p);
    const double pic = measures::pic(sp, mu);
    EXPECT_NEAR(measures::pic(sq, mu), pic, kTol) << p.name;
    EXPECT_NEAR(measures::ic(sq, mu), pic, kTol) << p.name;
    EXPECT_NEAR(measures::pic_decomposition(sq, mu).random_term, 0.0, kTol) << p.name;
  }
}

TEST(Derandomize, PicksASeedNoWorseThanAverage) {
  auto e = zoo::ring_parity(3, 1);
  auto pub = measures::publicize(e.protocol);
  auto mu = InputDistribution::uniform(pub);
  auto d = measures::derandomize_zero_error(pub, mu, e.function);
  EXPECT_TRUE(d.protocol.is_deterministic());
  ASSERT_EQ(d.t_values.size(), 2u);
  EXPECT_EQ(d.seed.size(), 1u);
  const double ic_pub = measures::ic(ProtocolSpace(pub), mu);
  const double ic_det = measures::ic(ProtocolSpace(d.protocol), mu);
  EXPECT_LE(ic_det, ic_pub + kTol);
  for (double t : d.t_values) EXPECT_GE(t, ic_det - kTol);
  auto table = model::run_all(d.protocol);
  for (const auto& r : table.runs) EXPECT_EQ(r.outputs[0], (*e.function)(0, r.inputs));
}

TEST(Derandomize, PublicSwapFixture) {
  auto tp = test_support::load_fixture_tree("public_swap.json");
  auto mu = InputDistribution::uniform(tp.protocol);
  auto d = measures::derandomize_zero_error(tp.protocol, mu, tp.function);
  EXPECT_TRUE(d.protocol.is_deterministic());
  EXPECT_LE(measures::ic(ProtocolSpace(d.protocol), mu),
            measures::ic(ProtocolSpace(tp.protocol), mu) + kTol);
}

TEST(Derandomize, RejectsPrivateTapes) {
  auto e = zoo::ring_parity(3, 1);
  EXPECT_THROW(measures::derandomize_zero_error(e.protocol, InputDistribution::uniform(e.protocol),
                                                e.function),
               model::ConfigError);
}

TEST(Product, OutputsConcatenate) {
  auto a = zoo::star_parity(3, 1);
  auto b = zoo::ring_parity(3, 1);
  auto pq = measures::product_protocol(a.protocol, b.protocol);
  auto g = measures::product_function(a.protocol, *a.function, *b.function);
  auto table = model::run_all(pq);
  for (const auto& r : table.runs) {
    for (model::PlayerId i = 0; i < 3; ++i) {
      EXPECT_EQ(r.outputs[static_cast<std::size_t>(i)], g(i, r.inputs));
    }
  }
  EXPECT_EQ(pq.total_private_bits(), 1);
}

TEST(Product, MeasuresAdd) {
  auto a = zoo::star_parity(3, 1).protocol;
  auto b = test_support::two_round_ring().protocol;
  auto pq = measures::product_protocol(a, b);
  auto mu = InputDistribution::uniform(a);
  auto eta = InputDistribution::uniform(b);
  auto prod = InputDistribution::product(mu, a, eta, b, pq);
  ProtocolSpace sa(a), sb(b), sab(pq);
  EXPECT_NEAR(measures::ic(sab, prod), measures::ic(sa, mu) + measures::ic(sb, eta), kTol);
  EXPECT_NEAR(measures::pic(sab, prod), measures::pic(sa, mu) + measures::pic(sb, eta), kTol);
  EXPECT_EQ(measures::cc(sab), measures::cc(sa) + measures::cc(sb));
}

TEST(PadPlayers, IdlePlayersAddNothing) {
  auto a = zoo::and_opt().protocol;
  auto padded = measures::pad_players(a, 3);
  EXPECT_EQ(padded.k, 3);
  ProtocolSpace sa(a), sp(padded);
  EXPECT_NEAR(measures::pic(sp, InputDistribution::uniform(padded)),
              measures::pic(sa, InputDistribution::uniform(a)), kTol);
}

}  // namespace
