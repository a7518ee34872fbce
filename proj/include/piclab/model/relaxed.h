#pragma once

#include <cstdint>
#include <span>

#include "piclab/model/execution.h"
#include "piclab/model/protocol.h"

namespace piclab::model {

// Which in-transit message is delivered next when every player is blocked.
// Only link heads are candidates, so per-link FIFO order always holds.
enum class DeliveryPolicy { kFifo, kLifo, kRandom };

struct Schedule {
  DeliveryPolicy policy = DeliveryPolicy::kFifo;
  std::uint64_t seed = 0;
};

// Runs a relaxed-mode protocol. Transcripts keep message content in read
// order only; the sender of each read stays visible to the program through
// its view.
Execution run_relaxed(const ProtocolDef& p, std::span<const Bits> x,
                      std::span<const Bits> private_tapes, const Bits& public_tape,
                      const Schedule& schedule = {});

}  // namespace piclab::model
