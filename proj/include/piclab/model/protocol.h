#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace piclab::model {

// Bit strings are stored as text over {'0','1'}.
using Bits = std::string;
using PlayerId = int;

struct ReceivedMessage {
  PlayerId sender = 0;
  Bits content;
  int round = 0;  // local round of the reader whose wait consumed it

  bool operator==(const ReceivedMessage&) const = default;
};

struct View {
  PlayerId player = 0;
  Bits input;
  Bits private_tape;
  Bits public_tape;
  std::vector<ReceivedMessage> received;
};

// What a player does in one local round: send, maybe write its output, then
// either wait for messages, continue immediately (empty wait, no halt) or
// stop.
struct RoundAction {
  std::map<PlayerId, Bits> sends;
  std::optional<Bits> output;
  std::vector<PlayerId> wait_for;
  bool halt = false;
};

// Relaxed-model action: in addition to named senders, a player may block on
// the next `wait_any` messages from anybody, in delivery order.
struct RelaxedAction {
  std::map<PlayerId, Bits> sends;
  std::optional<Bits> output;
  std::vector<PlayerId> wait_for;
  int wait_any = 0;
  bool halt = false;
};

// Both program kinds receive the view at the end of the previous round and
// the 1-based index of the round about to run.
using PlayerProgram = std::function<RoundAction(const View&, int round)>;
using RelaxedProgram = std::function<RelaxedAction(const View&, int round)>;

// f_i(x) for every player; x holds all inputs.
using FunctionFamily = std::function<Bits(PlayerId, std::span<const Bits>)>;

enum class Mode { kRestricted, kRelaxed };

struct ProtocolDef {
  std::string name;
  int k = 0;
  std::vector<std::vector<Bits>> input_domains;
  // Optional; when non-empty every output must belong to its player's set.
  std::vector<std::vector<Bits>> output_domains;
  std::vector<int> private_tape_bits;
  int public_tape_bits = 0;
  Mode mode = Mode::kRestricted;
  std::vector<PlayerProgram> programs;
  std::vector<RelaxedProgram> relaxed_programs;
  // 0 selects the default 4·k·n, n the longest input length (at least 1).
  int max_local_rounds = 0;

  int total_private_bits() const;
  int total_tape_bits() const { return total_private_bits() + public_tape_bits; }
  bool is_deterministic() const { return total_tape_bits() == 0; }
  int round_limit() const;

  // Throws ConfigError on inconsistent sizes or empty domains.
  void validate() const;
};

// Ordinal of every input tuple in a protocol's domain, player 0 most
// significant.
std::size_t input_space_size(const ProtocolDef& p);
std::vector<Bits> input_tuple(const ProtocolDef& p, std::size_t row);
std::size_t input_row(const ProtocolDef& p, std::span<const Bits> x);

}  // namespace piclab::model
