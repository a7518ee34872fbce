#include "piclab/compression/layout.h"

#include <algorithm>

#include "piclab/model/errors.h"
#include "piclab/model/simulator.h"

namespace piclab::compression {

namespace {

std::vector<std::size_t> position_of(const model::Execution& e) {
  std::vector<std::size_t> pos(e.global_order.size());
  for (std::size_t g = 0; g < e.global_order.size(); ++g) pos[e.global_order[g]] = g;
  return pos;
}

}  // namespace

ObliviousLayout::ObliviousLayout(const measures::ProtocolSpace& space, TranscriptOrder order)
    : order_(order), k_(space.k()), codebooks_(space.table().codebooks) {
  const auto& p = space.protocol();
  const auto& table = space.table();
  auto oblivious = model::is_oblivious(p, table);
  if (!oblivious.oblivious) throw model::NotOblivious(oblivious.detail);

  const auto& base = table.runs.front();
  for (auto id : base.global_order) {
    const auto& m = base.messages[id];
    messages_.push_back({m.sender, m.receiver, m.link_seq, m.lot});
  }
  for (const auto& e : table.runs) {
    for (std::size_t g = 0; g < messages_.size(); ++g) {
      const auto& m = e.messages[e.global_order[g]];
      const auto& s = messages_[g];
      if (m.sender != s.sender || m.receiver != s.receiver || m.link_seq != s.link_seq ||
          m.lot != s.lot) {
        throw model::NotOblivious(p.name + ": lot structure differs between executions");
      }
    }
  }

  const auto ks = static_cast<std::size_t>(k_);
  slots_.assign(ks, {});
  if (order_ == TranscriptOrder::kLot) {
    for (std::size_t g = 0; g < messages_.size(); ++g) {
      slots_[static_cast<std::size_t>(messages_[g].sender)].push_back(g);
      slots_[static_cast<std::size_t>(messages_[g].receiver)].push_back(g);
    }
  } else {
    auto pos = position_of(base);
    for (std::size_t i = 0; i < ks; ++i) {
      for (const auto& r : base.rounds[i]) {
        for (auto id : r.sent) slots_[i].push_back(pos[id]);
        std::vector<std::size_t> read = r.read;
        std::sort(read.begin(), read.end(), [&](std::size_t a, std::size_t b) {
          return base.messages[a].sender < base.messages[b].sender;
        });
        for (auto id : read) slots_[i].push_back(pos[id]);
      }
    }
  }

  // A received message may only follow messages it is ordered after: earlier
  // receptions and sends of no later lot.
  for (std::size_t i = 0; i < ks; ++i) {
    const auto& s = slots_[i];
    for (std::size_t n = 0; n < s.size(); ++n) {
      const auto& m = messages_[s[n]];
      if (m.receiver != static_cast<PlayerId>(i)) continue;
      for (std::size_t e = 0; e < n; ++e) {
        const auto& before = messages_[s[e]];
        bool ok = before.receiver == static_cast<PlayerId>(i) ? s[e] < s[n] : before.lot <= m.lot;
        if (!ok) {
          throw model::ConfigError(p.name + ": the per-round transcript of player " +
                                   std::to_string(i) +
                                   " lists a message before one it precedes in the global "
                                   "order; use the lot transcript order");
        }
      }
    }
  }

  conversations_.assign(ks * ks, {});
  for (std::size_t g = 0; g < messages_.size(); ++g) {
    auto a = static_cast<std::size_t>(messages_[g].sender);
    auto b = static_cast<std::size_t>(messages_[g].receiver);
    conversations_[a * ks + b].push_back(g);
    conversations_[b * ks + a].push_back(g);
  }
}

const std::vector<std::size_t>& ObliviousLayout::slots(PlayerId i) const {
  return slots_.at(static_cast<std::size_t>(i));
}

const std::vector<std::size_t>& ObliviousLayout::conversation(PlayerId i, PlayerId j) const {
  return conversations_.at(static_cast<std::size_t>(i) * static_cast<std::size_t>(k_) +
                           static_cast<std::size_t>(j));
}

Bits ObliviousLayout::transcript(const model::Execution& e, PlayerId i) const {
  Bits out;
  for (auto g : slots(i)) out += e.messages[e.global_order.at(g)].content;
  return out;
}

std::vector<Bits> ObliviousLayout::parse(PlayerId i, const Bits& transcript) const {
  std::vector<Bits> out;
  std::size_t pos = 0;
  for (auto g : slots(i)) {
    const auto& m = messages_[g];
    auto it = codebooks_.find({m.sender, m.receiver, m.link_seq});
    const Bits* found = nullptr;
    if (it != codebooks_.end()) {
      for (const auto& word : it->second) {
        if (transcript.compare(pos, word.size(), word) == 0 &&
            pos + word.size() <= transcript.size()) {
          found = &word;
          break;
        }
      }
    }
    if (!found) {
      throw model::ModelViolation("transcript of player " + std::to_string(i) +
                                  " does not parse at bit " + std::to_string(pos));
    }
    out.push_back(*found);
    pos += found->size();
  }
  if (pos != transcript.size()) {
    throw model::ModelViolation("transcript of player " + std::to_string(i) +
                                " has trailing bits");
  }
  return out;
}

}  // namespace piclab::compression
