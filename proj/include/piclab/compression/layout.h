#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "piclab/measures/space.h"
#include "piclab/model/execution.h"

namespace piclab::compression {

using model::Bits;
using model::PlayerId;

// How a player's bidirectional transcript is laid out.
enum class TranscriptOrder {
  // Per local round: sent messages by recipient, then read messages by
  // sender.
  kRoundSentThenReceived,
  // The player's messages, sent and received, in global message order.
  kLot,
};

// One message of the fixed communication pattern, numbered by its place in
// the global order.
struct MessageSlot {
  PlayerId sender = 0;
  PlayerId receiver = 0;
  int link_seq = 0;
  int lot = 0;
};

// Message boundaries shared by every execution of an oblivious protocol.
class ObliviousLayout {
 public:
  // Throws model::NotOblivious if the protocol's pattern depends on the
  // inputs or tapes, and model::ConfigError if the requested order does not
  // list every received message after everything it depends on.
  ObliviousLayout(const measures::ProtocolSpace& space, TranscriptOrder order);

  TranscriptOrder order() const { return order_; }
  int k() const { return k_; }
  const std::vector<MessageSlot>& messages() const { return messages_; }
  // Global message indices in player i's transcript order.
  const std::vector<std::size_t>& slots(PlayerId i) const;
  // Global indices of the messages between i and j, ascending.
  const std::vector<std::size_t>& conversation(PlayerId i, PlayerId j) const;

  // Player i's transcript of an execution of the protocol.
  Bits transcript(const model::Execution& e, PlayerId i) const;

  // Cuts a transcript of player i into message contents, one per slot, using
  // the codebooks of the protocol. Throws model::ModelViolation if the
  // string does not parse.
  std::vector<Bits> parse(PlayerId i, const Bits& transcript) const;

 private:
  TranscriptOrder order_;
  int k_;
  std::vector<MessageSlot> messages_;
  std::vector<std::vector<std::size_t>> slots_;
  std::vector<std::vector<std::size_t>> conversations_;  // index i*k+j
  model::Codebooks codebooks_;
};

}  // namespace piclab::compression
