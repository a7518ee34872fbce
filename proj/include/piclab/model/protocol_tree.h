#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "piclab/model/protocol.h"

namespace piclab::model {

// A sequential protocol described as a message tree. Internal nodes name a
// sender, receiver and message length; the sender's message is looked up
// from a pattern table keyed by its input, private tape and public tape
// concatenated ('*' matches either bit). Leaves carry each player's output,
// either a constant or a pattern table over the same key.
//
// Each player runs the tree from its own view: nodes it takes no part in are
// expanded over all children, so every tree whose communication pattern each
// participant can follow becomes a restricted-model program.
struct TreeProtocol {
  ProtocolDef protocol;
  std::optional<FunctionFamily> function;
};

// Throws ConfigError on malformed input.
TreeProtocol parse_protocol_tree(std::string_view json_text, const std::string& name = "tree");
TreeProtocol load_protocol_tree(const std::string& path);

}  // namespace piclab::model
