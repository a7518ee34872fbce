#pragma once

#include <optional>
#include <string>

#include "piclab/model/protocol.h"
#include "piclab/model/protocol_tree.h"

namespace piclab::test_support {

struct Fixture {
  model::ProtocolDef protocol;
  std::optional<model::FunctionFamily> function;
};

// Three players, one input bit each. Round 1: send x_i to the next player
// and wait for the previous one. Round 2: send x_i AND the received bit back
// to the previous player and wait for the next one. Round 3: output
// x_i OR x_{i-1}.
Fixture two_round_ring();

// Absolute path of a file in tests/fixtures.
std::string fixture_path(const std::string& name);
model::TreeProtocol load_fixture_tree(const std::string& name);

}  // namespace piclab::test_support
