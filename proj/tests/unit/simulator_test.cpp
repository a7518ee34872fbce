#include <gtest/gtest.h>

#include <vector>

#include "fixtures.h"
#include "piclab/model/errors.h"
#include "piclab/model/simulator.h"
#include "piclab/zoo/zoo.h"

namespace {

using namespace piclab::model;
using piclab::test_support::two_round_ring;

ProtocolDef two_players(PlayerProgram a, PlayerProgram b) {
  ProtocolDef p;
  p.name = "test";
  p.k = 2;
  p.input_domains = {{"0", "1"}, {"0", "1"}};
  p.private_tape_bits = {0, 0};
  p.programs = {std::move(a), std::move(b)};
  return p;
}

Execution run_plain(const ProtocolDef& p, std::vector<Bits> x) {
  std::vector<Bits> tapes(static_cast<std::size_t>(p.k));
  return run(p, x, tapes, "");
}

TEST(Simulator, StarParityOutputsAndTranscripts) {
  auto e = piclab::zoo::star_parity(3, 1);
  auto run1 = run_plain(e.protocol, {"1", "0", "1"});
  EXPECT_EQ(run1.outputs, (std::vector<Bits>{"0", "0", "0"}));
  auto run2 = run_plain(e.protocol, {"0", "1", "0"});
  EXPECT_EQ(run2.outputs[0], "1");
  EXPECT_EQ(run2.received[0], "10");
  EXPECT_EQ(run2.received[1], "");
  EXPECT_EQ(run2.bidirectional[1], "1");
  EXPECT_EQ(run2.total_bits, 2u);
  EXPECT_EQ(run2.lot_count, 1);
}

TEST(Simulator, TwoRoundRingLots) {
  auto f = two_round_ring();
  auto e = run_plain(f.protocol, {"1", "1", "0"});
  EXPECT_EQ(e.outputs, (std::vector<Bits>{"1", "1", "1"}));
  ASSERT_EQ(e.messages.size(), 6u);
  EXPECT_EQ(e.lot_count, 2);
  for (const auto& m : e.messages) EXPECT_EQ(m.lot, m.send_round);
  // Player 0 hears x_2 in round 1, then x_1 AND x_0 from player 1.
  EXPECT_EQ(e.received[0], "01");
  // Per round: sent then read.
  EXPECT_EQ(e.bidirectional_by_round[0], "1001");
  EXPECT_EQ(e.global_order.size(), 6u);
  int last_lot = 0;
  for (auto id : e.global_order) {
    EXPECT_GE(e.messages[id].lot, last_lot);
    last_lot = e.messages[id].lot;
  }
}

TEST(Simulator, DeadlockIsReported) {
  auto wait_other = [](PlayerId other) {
    return [other](const View& v, int) {
      RoundAction a;
      if (v.received.empty()) a.wait_for = {other};
      else a.halt = true;
      return a;
    };
  };
  auto p = two_players(wait_other(1), wait_other(0));
  EXPECT_THROW(run_plain(p, {"0", "0"}), Deadlock);
}

TEST(Simulator, RunawayPlayerHitsRoundLimit) {
  auto idle = [](const View&, int) { return RoundAction{}; };
  auto done = [](const View&, int) {
    RoundAction a;
    a.output = "0";
    a.halt = true;
    return a;
  };
  auto p = two_players(idle, done);
  p.max_local_rounds = 5;
  EXPECT_THROW(run_plain(p, {"0", "0"}), NonTermination);
}

TEST(Simulator, UnreadMessageIsAViolation) {
  auto sender = [](const View&, int) {
    RoundAction a;
    a.sends[1] = "1";
    a.output = "0";
    a.halt = true;
    return a;
  };
  auto quiet = [](const View&, int) {
    RoundAction a;
    a.output = "0";
    a.halt = true;
    return a;
  };
  EXPECT_THROW(run_plain(two_players(sender, quiet), {"0", "0"}), ModelViolation);
}

TEST(Simulator, BlockedAfterOutputCountsAsIdle) {
  auto waits_after_output = [](const View&, int) {
    RoundAction a;
    a.output = "1";
    a.wait_for = {1};
    return a;
  };
  auto quiet = [](const View&, int) {
    RoundAction a;
    a.output = "0";
    a.halt = true;
    return a;
  };
  auto e = run_plain(two_players(waits_after_output, quiet), {"0", "0"});
  EXPECT_EQ(e.outputs[0], "1");
}

TEST(Simulator, PrefixCodebookIsRejected) {
  // Player 0 sends "1" or "10" depending on its input.
  auto sender = [](const View& v, int) {
    RoundAction a;
    a.sends[1] = v.input == "0" ? "1" : "10";
    a.output = "0";
    a.halt = true;
    return a;
  };
  auto reader = [](const View& v, int round) {
    RoundAction a;
    if (round == 1) a.wait_for = {0};
    else { a.output = v.received.at(0).content; a.halt = true; }
    return a;
  };
  EXPECT_THROW(run_all(two_players(sender, reader)), SelfDelimitingViolation);
}

TEST(Simulator, BudgetIsEnforced) {
  auto e = piclab::zoo::ring_parity(4, 2);
  EXPECT_THROW(run_all(e.protocol, 10), BudgetExceeded);
}

TEST(Simulator, RunAllEnumeratesInputsAndTapes) {
  auto e = piclab::zoo::ring_parity(3, 1);
  auto table = run_all(e.protocol);
  EXPECT_EQ(table.input_rows, 8u);
  EXPECT_EQ(table.tapes, 2u);
  EXPECT_EQ(table.runs.size(), 16u);
  for (const auto& r : table.runs) {
    auto expected = piclab::zoo::xor_bits(piclab::zoo::xor_bits(r.inputs[0], r.inputs[1]), r.inputs[2]);
    EXPECT_EQ(r.outputs[0], expected);
  }
}

TEST(Simulator, Obliviousness) {
  EXPECT_TRUE(is_oblivious(piclab::zoo::ring_parity(3, 1).protocol).oblivious);
  EXPECT_TRUE(is_oblivious(two_round_ring().protocol).oblivious);
  auto q = is_oblivious(piclab::zoo::q_index(3, 1).protocol);
  EXPECT_FALSE(q.oblivious);
  ASSERT_TRUE(q.witness.has_value());
  EXPECT_NE(q.witness->first, q.witness->second);
  EXPECT_FALSE(q.detail.empty());
}

TEST(Simulator, ReplayRebuildsReadEvents) {
  auto f = two_round_ring();
  auto table = run_all(f.protocol);
  for (const auto& e : table.runs) {
    for (PlayerId i = 0; i < 3; ++i) {
      auto events = replay_transcript(f.protocol, table.codebooks, i, e.inputs[static_cast<std::size_t>(i)],
                                      "", "", e.received[static_cast<std::size_t>(i)]);
      ASSERT_EQ(events.size(), 2u);
      Bits joined;
      for (const auto& m : events) joined += m.content;
      EXPECT_EQ(joined, e.received[static_cast<std::size_t>(i)]);
    }
  }
  EXPECT_THROW(replay_transcript(f.protocol, table.codebooks, 0, "0", "", "", "011"),
               ModelViolation);
}

TEST(Protocol, InputRowsRoundTrip) {
  auto p = piclab::zoo::star_parity(3, 2).protocol;
  ASSERT_EQ(input_space_size(p), 64u);
  for (std::size_t row = 0; row < 64; ++row) {
    auto x = input_tuple(p, row);
    EXPECT_EQ(input_row(p, x), row);
  }
  EXPECT_EQ(input_tuple(p, 1), (std::vector<Bits>{"00", "00", "01"}));
}

TEST(Protocol, TapeAssignmentOrder) {
  auto p = piclab::zoo::ring_parity(3, 2).protocol;
  p.public_tape_bits = 1;
  EXPECT_EQ(tape_count(p), 8u);
  auto t = tape_assignment(p, 6);
  EXPECT_EQ(t.public_tape, "1");
  EXPECT_EQ(t.private_tapes[0], "10");
}

TEST(Protocol, ValidateRejectsInconsistentShapes) {
  auto p = piclab::zoo::star_parity(3, 1).protocol;
  p.private_tape_bits.pop_back();
  EXPECT_THROW(p.validate(), ConfigError);
  auto q = piclab::zoo::star_parity(3, 1).protocol;
  q.input_domains[1] = {"0", "0"};
  EXPECT_THROW(q.validate(), ConfigError);
}

}  // namespace
