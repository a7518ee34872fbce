#pragma once

#include <optional>
#include <vector>

#include "piclab/measures/distribution.h"
#include "piclab/model/protocol.h"
#include "piclab/model/simulator.h"

namespace piclab::measures {

// Moves every private tape onto the public tape. The new public tape
// interleaves the old public tape and the private tapes bit by bit, round
// robin in the order public, player 0, ..., player k-1; each player reads
// its old tapes back out of it. Deterministic protocols are returned as is.
ProtocolDef publicize(const ProtocolDef& p);

// Public tape of publicize(p) that encodes the given original tapes.
Bits interleave_tapes(const ProtocolDef& p, const std::vector<Bits>& private_tapes,
                      const Bits& public_tape);

struct Derandomized {
  ProtocolDef protocol;
  Bits seed;                     // empty if p was deterministic
  std::vector<double> t_values;  // Σ_i I(X_-i ; Π_i | X_i, R^p = r) per seed r
};

// Fixes the public tape to the seed minimising the per-seed information
// cost. Requires no private tapes and zero error on the support of mu: with
// f, every output equals f; without f, outputs must not depend on the tape.
Derandomized derandomize_zero_error(const ProtocolDef& p, const InputDistribution& mu,
                                    const std::optional<model::FunctionFamily>& f = std::nullopt,
                                    std::uint64_t budget = model::kDefaultBudget);

// Runs p and then q. Player i's input is a_i ∥ b_i and its tapes are the
// concatenation of p's and q's tapes; it writes out_p ∥ out_q once both are
// known. Every player must halt in p. Input domains must have a fixed length
// per player.
ProtocolDef product_protocol(const ProtocolDef& p, const ProtocolDef& q);

// f_i(a ∥ b) = f_i(a) ∥ g_i(b).
model::FunctionFamily product_function(const ProtocolDef& p, const model::FunctionFamily& f,
                                       const model::FunctionFamily& g);

// Adds idle players up to k: input "", no tape, output "0" in round 1.
ProtocolDef pad_players(const ProtocolDef& p, int k);

}  // namespace piclab::measures
