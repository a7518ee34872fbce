#pragma once

#include <string>
#include <utility>
#include <vector>

#include "piclab/info/rational.h"
#include "piclab/model/protocol.h"

namespace piclab::measures {

using info::Rational;
using model::Bits;
using model::ProtocolDef;

// Exact law of the input tuple over a protocol's input domain, stored per
// input row (see model::input_row). Rows outside the support weigh 0.
class InputDistribution {
 public:
  static InputDistribution uniform(const ProtocolDef& p);
  // marginals[i][v] is the probability of the v-th value of player i's
  // domain; players are independent.
  static InputDistribution independent(const ProtocolDef& p,
                                       const std::vector<std::vector<Rational>>& marginals,
                                       std::string id = "independent");
  static InputDistribution from_entries(
      const ProtocolDef& p, const std::vector<std::pair<std::vector<Bits>, Rational>>& entries,
      std::string id = "explicit");
  // Text file, one entry per line: k hex input values, numerator,
  // denominator. '#' starts a comment. Each hex value is read into the
  // fixed bit length of its player's domain.
  static InputDistribution load(const ProtocolDef& p, const std::string& path);

  // Law of (a_i ∥ b_i)_i on the product protocol pq when a ~ mu over p and
  // b ~ eta over q independently.
  static InputDistribution product(const InputDistribution& mu, const ProtocolDef& p,
                                   const InputDistribution& eta, const ProtocolDef& q,
                                   const ProtocolDef& pq);

  const std::vector<Rational>& weights() const { return weights_; }
  const std::string& id() const { return id_; }
  bool full_support() const;

 private:
  InputDistribution(std::vector<Rational> weights, std::string id);

  std::vector<Rational> weights_;
  std::string id_;
};

// Fixed input length of player i, or -1 if its domain mixes lengths.
int fixed_input_length(const ProtocolDef& p, int i);

}  // namespace piclab::measures
