#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "piclab/info/joint_distribution.h"
#include "piclab/measures/distribution.h"
#include "piclab/model/simulator.h"

namespace piclab::measures {

// A restricted-mode protocol together with its complete execution table.
class ProtocolSpace {
 public:
  explicit ProtocolSpace(ProtocolDef p, std::uint64_t budget = model::kDefaultBudget);

  const ProtocolDef& protocol() const { return protocol_; }
  const model::ExecutionTable& table() const { return table_; }
  int k() const { return protocol_.k; }

 private:
  ProtocolDef protocol_;
  model::ExecutionTable table_;
};

// Variable names of joint_dist. Player indices are 0-based.
std::string input_var(int i);        // X_i
std::string private_tape_var(int i); // R_i
std::string public_tape_var();       // R^p
std::string received_var(int i);     // Π_i, received messages
std::string bidir_var(int i);        // Π_i↔, received then sent
std::string bidir_round_var(int i);  // Π_i↔, per round sent then received
std::string output_var(int i);
std::string function_var(int i);     // f_i(X)
std::string transcript_var();        // Π

// Joint law of inputs, tapes, transcripts and outputs when x ~ mu and tapes
// are uniform. With f given, f_i(X) is added for every player.
info::JointDistribution joint_dist(const ProtocolSpace& space, const InputDistribution& mu,
                                   const std::optional<model::FunctionFamily>& f = std::nullopt);

}  // namespace piclab::measures
