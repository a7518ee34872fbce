#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "piclab/info/rational.h"
#include "piclab/measures/distribution.h"
#include "piclab/measures/space.h"
#include "piclab/model/execution.h"

namespace piclab::compression {

struct CoordinatorContext;

// Rewrites a protocol so that every bit travels through player 0 in a fixed
// number of phases, which makes the result oblivious. In each phase every
// other player reports one queued bit and its destination to player 0 ("1",
// bit, destination) or "0", and player 0 forwards to each player the bits
// addressed to it as ("1", bit, origin) entries closed by "0". Destinations
// and origins take max(1, ⌈log2 k⌉) bits. Player 0 also moves one of its own
// bits per phase. After the last phase every player outputs what the
// original protocol would have, or a fixed string if it did not get that far.
class CoordinatorConversion {
 public:
  // phases = ⌈2·acc(p, mu) / eps⌉, eps in (0, 1). Throws model::ConfigError
  // otherwise.
  CoordinatorConversion(const measures::ProtocolSpace& original,
                        const measures::InputDistribution& mu, info::Rational eps);

  const model::ProtocolDef& protocol() const { return protocol_; }
  int phases() const;
  const info::Rational& original_acc() const { return acc_; }

  // Whether every player of an execution of protocol() carried the original
  // protocol to its end, with no bit left undelivered.
  bool completed(const model::Execution& e) const;

 private:
  std::shared_ptr<const CoordinatorContext> ctx_;
  model::ProtocolDef protocol_;
  info::Rational acc_;
};

struct ConversionCheck {
  int phases = 0;
  info::Rational original_acc;
  bool oblivious = false;
  // Mass of runs of the original protocol with at least `phases` bits.
  info::Rational long_run_mass;
  // Mass of runs of the converted protocol that did not complete.
  info::Rational truncated_mass;
  // Outputs equal the original's on every completed run.
  bool agree_when_completed = true;
  std::size_t max_phase_bits = 0;
  std::optional<info::Rational> error_original;
  std::optional<info::Rational> error_converted;
};

// Compares the converted protocol with the original by enumeration; mu is
// read on the common input domain.
ConversionCheck check_conversion(const CoordinatorConversion& conv,
                                 const measures::ProtocolSpace& original,
                                 const measures::ProtocolSpace& converted,
                                 const measures::InputDistribution& mu,
                                 const std::optional<model::FunctionFamily>& f);

}  // namespace piclab::compression
