#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "piclab/model/errors.h"
#include "piclab/model/protocol.h"

namespace piclab::model::detail {

inline std::string who(PlayerId i, int round) {
  return "player " + std::to_string(i) + " round " + std::to_string(round);
}

inline void check_sends(const std::map<PlayerId, Bits>& sends, PlayerId i, int k, int round) {
  for (const auto& [q, m] : sends) {
    if (q == i) throw ModelViolation(who(i, round) + " sends to itself");
    if (q < 0 || q >= k) throw ModelViolation(who(i, round) + " sends to unknown player");
    if (m.empty()) throw SelfDelimitingViolation(who(i, round) + " sends an empty message");
    for (char c : m) {
      if (c != '0' && c != '1') throw ModelViolation(who(i, round) + " sends a non-bit symbol");
    }
  }
}

inline std::vector<PlayerId> normalized_wait(std::vector<PlayerId> wait, PlayerId i, int k,
                                             int round) {
  std::sort(wait.begin(), wait.end());
  if (std::adjacent_find(wait.begin(), wait.end()) != wait.end()) {
    throw ModelViolation(who(i, round) + " lists a sender twice in its wait set");
  }
  for (PlayerId q : wait) {
    if (q == i) throw ModelViolation(who(i, round) + " waits for itself");
    if (q < 0 || q >= k) throw ModelViolation(who(i, round) + " waits for unknown player");
  }
  return wait;
}

inline void check_output(const ProtocolDef& p, const std::optional<Bits>& out,
                         const std::optional<Bits>& previous, PlayerId i, int round) {
  if (!out) return;
  if (previous) throw ModelViolation(who(i, round) + " writes its output twice");
  if (out->empty()) throw ModelViolation(who(i, round) + " writes an empty output");
  if (!p.output_domains.empty()) {
    const auto& dom = p.output_domains[static_cast<std::size_t>(i)];
    if (std::find(dom.begin(), dom.end(), *out) == dom.end()) {
      throw ModelViolation(who(i, round) + " writes an output outside its domain");
    }
  }
}

}  // namespace piclab::model::detail
