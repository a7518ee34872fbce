#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "piclab/model/protocol.h"

namespace piclab::zoo {

using model::Bits;
using model::PlayerId;

struct ZooEntry {
  std::string name;
  std::map<std::string, int> parameters;
  model::ProtocolDef protocol;
  // What each player is meant to output; absent for protocols that only
  // demonstrate a model property.
  std::optional<model::FunctionFamily> function;
  std::string notes;
};

// Player 0 pads its input with a private n-bit string, the partial XOR goes
// once around the ring and player 0 removes the pad. Other players output
// "0". Requires k >= 3.
ZooEntry ring_parity(int k, int n);

// Players 1..k-1 send their inputs to player 0, which outputs the XOR.
ZooEntry star_parity(int k, int n);

// Alice (0) sends her bit, Bob (1) answers with the AND; both output it.
ZooEntry and_opt();

// Player k-1 holds q distinct indices of other players, pings each of them
// with "0" and outputs their bits in index order. Not oblivious.
ZooEntry q_index(int k, int q);

// Relaxed-mode four-player protocol in which B learns A's bit from the
// order in which C and D contact it. Players are A=0, B=1, C=2, D=3.
ZooEntry order_leak_demo();

// Bitwise XOR of all inputs for `outputter`, "0" for everyone else.
model::FunctionFamily parity_family(PlayerId outputter);

struct ZooParams {
  int k = 3;
  int n = 1;
  int q = 1;
};

std::vector<std::string> registry_names();
bool in_registry(const std::string& name);
// Throws model::ConfigError for unknown names or bad parameters.
ZooEntry make(const std::string& name, const ZooParams& params);

// Bits of `v` as a fixed-width string, most significant first.
Bits to_bits(std::uint64_t v, int width);
Bits xor_bits(const Bits& a, const Bits& b);

}  // namespace piclab::zoo
