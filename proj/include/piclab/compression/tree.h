#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "piclab/info/rational.h"
#include "piclab/model/protocol.h"

namespace piclab::compression {

using info::Rational;
using model::Bits;

// A transcript a player considers possible, with its conditional
// probability and the output the player writes after it.
struct WeightedTranscript {
  Bits transcript;
  Rational weight;
  Bits output;
};

// Binary trie over a player's possible transcripts, compressed so that each
// node is the longest common prefix of the leaves below it.
class TranscriptTree {
 public:
  static constexpr int kNone = -1;

  struct Node {
    Bits prefix;
    int parent = kNone;
    int child[2] = {kNone, kNone};
    Rational weight;
    int leaf = kNone;  // index into leaves() for leaf nodes
  };

  // Weights must be positive and sum to 1; transcripts must be distinct and
  // no transcript may be a proper prefix of another. Throws
  // std::invalid_argument otherwise.
  explicit TranscriptTree(std::vector<WeightedTranscript> leaves);

  int root() const { return 0; }
  const Node& node(int n) const { return nodes_.at(static_cast<std::size_t>(n)); }
  std::size_t node_count() const { return nodes_.size(); }
  const std::vector<WeightedTranscript>& leaves() const { return leaves_; }
  // Node of the leaf labelled `transcript`, if any.
  std::optional<int> find_leaf(const Bits& transcript) const;
  bool is_leaf(int n) const { return node(n).leaf != kNone; }
  // Longest root-to-leaf path, in edges.
  int height() const;

 private:
  int build(std::vector<std::size_t> members, int parent);

  std::vector<Node> nodes_;
  std::vector<WeightedTranscript> leaves_;
};

// Descends from `from` to the heavier child until a leaf; ties go to the
// child whose next bit is 0. Returns the leaf's node.
int candidate_leaf(const TranscriptTree& tree, int from);

}  // namespace piclab::compression
