#include "piclab/compression/tree.h"

#include <algorithm>
#include <stdexcept>

namespace piclab::compression {

TranscriptTree::TranscriptTree(std::vector<WeightedTranscript> leaves) : leaves_(std::move(leaves)) {
  if (leaves_.empty()) throw std::invalid_argument("transcript tree needs at least one leaf");
  std::sort(leaves_.begin(), leaves_.end(),
            [](const auto& a, const auto& b) { return a.transcript < b.transcript; });
  Rational total(0);
  for (std::size_t n = 0; n < leaves_.size(); ++n) {
    if (!(leaves_[n].weight > Rational(0))) {
      throw std::invalid_argument("transcript weights must be positive");
    }
    if (n > 0 && leaves_[n].transcript == leaves_[n - 1].transcript) {
      throw std::invalid_argument("duplicate transcript " + leaves_[n].transcript);
    }
    total += leaves_[n].weight;
  }
  if (total != Rational(1)) throw std::invalid_argument("transcript weights must sum to 1");

  std::vector<std::size_t> all(leaves_.size());
  for (std::size_t n = 0; n < all.size(); ++n) all[n] = n;
  build(std::move(all), kNone);
}

int TranscriptTree::build(std::vector<std::size_t> members, int parent) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.emplace_back();
  nodes_.back().parent = parent;

  const Bits& first = leaves_[members.front()].transcript;
  std::size_t common = first.size();
  Rational weight(0);
  for (auto m : members) {
    const Bits& t = leaves_[m].transcript;
    std::size_t n = 0;
    while (n < common && n < t.size() && t[n] == first[n]) ++n;
    common = n;
    weight += leaves_[m].weight;
  }
  nodes_[static_cast<std::size_t>(id)].prefix = first.substr(0, common);
  nodes_[static_cast<std::size_t>(id)].weight = weight;

  if (members.size() == 1) {
    nodes_[static_cast<std::size_t>(id)].leaf = static_cast<int>(members.front());
    return id;
  }
  std::vector<std::size_t> side[2];
  for (auto m : members) {
    const Bits& t = leaves_[m].transcript;
    if (t.size() == common) {
      throw std::invalid_argument("transcript " + t + " is a proper prefix of another");
    }
    side[t[common] == '1' ? 1 : 0].push_back(m);
  }
  for (int b = 0; b < 2; ++b) {
    int c = build(std::move(side[b]), id);
    nodes_[static_cast<std::size_t>(id)].child[b] = c;
  }
  return id;
}

std::optional<int> TranscriptTree::find_leaf(const Bits& transcript) const {
  int n = root();
  while (!is_leaf(n)) {
    const auto& nd = node(n);
    if (transcript.size() <= nd.prefix.size()) return std::nullopt;
    n = nd.child[transcript[nd.prefix.size()] == '1' ? 1 : 0];
  }
  if (leaves_[static_cast<std::size_t>(node(n).leaf)].transcript != transcript) return std::nullopt;
  return n;
}

int TranscriptTree::height() const {
  int best = 0;
  for (std::size_t n = 0; n < nodes_.size(); ++n) {
    if (nodes_[n].leaf == kNone) continue;
    int d = 0;
    for (int p = nodes_[n].parent; p != kNone; p = node(p).parent) ++d;
    best = std::max(best, d);
  }
  return best;
}

int candidate_leaf(const TranscriptTree& tree, int from) {
  int n = from;
  while (!tree.is_leaf(n)) {
    const auto& nd = tree.node(n);
    n = tree.node(nd.child[1]).weight > tree.node(nd.child[0]).weight ? nd.child[1] : nd.child[0];
  }
  return n;
}

}  // namespace piclab::compression
