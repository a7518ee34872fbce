#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "piclab/model/execution.h"
#include "piclab/model/protocol.h"

namespace piclab::model {

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 22;

// Runs a restricted-mode protocol on inputs x with the given tapes and
// assigns lots. Throws ModelViolation (and subclasses) or NonTermination.
Execution run(const ProtocolDef& p, std::span<const Bits> x,
              std::span<const Bits> private_tapes, const Bits& public_tape);

// Orders the messages of a completed execution into lots; fills
// MessageRecord::lot, global_order and lot_count. Returns global_order.
std::vector<std::size_t> assign_lots(Execution& e, int k);

// Tape assignment number t of a protocol: public tape in the most
// significant bits, then private tapes by player.
struct TapeAssignment {
  std::vector<Bits> private_tapes;
  Bits public_tape;
};
TapeAssignment tape_assignment(const ProtocolDef& p, std::uint64_t t);
std::uint64_t tape_count(const ProtocolDef& p);

struct ExecutionTable {
  std::size_t input_rows = 0;
  std::uint64_t tapes = 1;
  std::vector<Execution> runs;  // index input_row * tapes + tape
  Codebooks codebooks;

  const Execution& at(std::size_t row, std::uint64_t tape) const {
    return runs.at(row * tapes + tape);
  }
};

// Every (input, tape) execution. Certifies termination and that each link
// position carries a prefix-free set of messages.
ExecutionTable run_all(const ProtocolDef& p, std::uint64_t budget = kDefaultBudget);

struct ObliviousResult {
  bool oblivious = true;
  // Indices into ExecutionTable::runs of two executions with different
  // communication patterns.
  std::optional<std::pair<std::size_t, std::size_t>> witness;
  std::string detail;
};
ObliviousResult is_oblivious(const ProtocolDef& p, const ExecutionTable& table);
ObliviousResult is_oblivious(const ProtocolDef& p, std::uint64_t budget = kDefaultBudget);

// Rebuilds player i's read events from its received transcript alone, by
// running its program and cutting each awaited message out of `received`
// with the codebook of its link position. Throws ModelViolation if the
// transcript cannot be parsed uniquely.
std::vector<ReceivedMessage> replay_transcript(const ProtocolDef& p, const Codebooks& codebooks,
                                               PlayerId i, const Bits& input,
                                               const Bits& private_tape,
                                               const Bits& public_tape, const Bits& received);

}  // namespace piclab::model
