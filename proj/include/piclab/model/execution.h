#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "piclab/model/protocol.h"

namespace piclab::model {

struct MessageRecord {
  PlayerId sender = 0;
  PlayerId receiver = 0;
  Bits content;
  int send_round = 0;
  int read_round = 0;  // 0 while unread
  int link_seq = 0;    // position on the (sender, receiver) link, from 0
  int lot = 0;         // 1-based; 0 until lots are assigned
};

struct RoundRecord {
  std::vector<PlayerId> send_set;
  std::vector<PlayerId> wait_set;
  int wait_any = 0;
  bool halt = false;
  std::vector<std::size_t> sent;  // message ids, ascending recipient
  std::vector<std::size_t> read;  // message ids in read order
};

// Complete record of one deterministic run. Message ids index `messages`,
// which is in emission order.
struct Execution {
  std::vector<Bits> inputs;
  std::vector<Bits> private_tapes;
  Bits public_tape;

  std::vector<MessageRecord> messages;
  std::vector<std::vector<RoundRecord>> rounds;  // per player, round j at [j-1]
  std::vector<Bits> outputs;

  // Received messages by round then sender index.
  std::vector<Bits> received;
  // Received transcript followed by every sent message (round, recipient).
  std::vector<Bits> bidirectional;
  // Per local round: messages sent (by recipient) then messages read (by
  // sender).
  std::vector<Bits> bidirectional_by_round;
  std::map<std::pair<PlayerId, PlayerId>, Bits> link_logs;
  Bits transcript;  // received transcripts concatenated by player
  std::size_t total_bits = 0;

  // Message ids ordered by (lot, sender, receiver); empty for relaxed runs.
  std::vector<std::size_t> global_order;
  int lot_count = 0;
};

struct LinkPosition {
  PlayerId sender = 0;
  PlayerId receiver = 0;
  int seq = 0;
  auto operator<=>(const LinkPosition&) const = default;
};

// Every message content seen at each link position across a run table.
using Codebooks = std::map<LinkPosition, std::set<Bits>>;

// Per-player candidate transcripts in one of the bidirectional orderings.
struct TranscriptProfile {
  std::vector<Bits> transcripts;
  bool operator==(const TranscriptProfile&) const = default;
};

// Fills received / bidirectional / link logs / transcript / total_bits from
// messages and rounds.
void derive_transcripts(Execution& e, int k);

}  // namespace piclab::model
