#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "piclab/info/rational.h"

namespace piclab::info {

using Value = std::int64_t;

class InfoError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Outcome {
  std::vector<Value> values;
  Rational weight;
};

// A non-empty set of variable names. Order is irrelevant for every measure
// but is kept as given so projected tuples are reproducible.
class Selector {
 public:
  Selector(std::initializer_list<std::string> names);
  explicit Selector(std::vector<std::string> names);

  const std::vector<std::string>& names() const { return names_; }

  // Union, keeping first occurrence order.
  Selector operator+(const Selector& other) const;

 private:
  std::vector<std::string> names_;
};

// Groups outcomes of a distribution by their projection onto a set of
// variables. group[o] is the class id of outcome o; ids are dense in
// [0, count).
struct Partition {
  std::vector<std::uint32_t> group;
  std::uint32_t count = 0;
};

// Refinement of two partitions of the same outcome list.
Partition join(const Partition& a, const Partition& b);
// Partition with a single class (projection onto no variables).
Partition trivial_partition(std::size_t outcomes);

class JointDistribution {
 public:
  // Throws InfoError when weights are non-positive, do not sum to 1, tuples
  // have the wrong arity, or two tuples coincide.
  JointDistribution(std::vector<std::string> variables, std::vector<Outcome> outcomes);

  const std::vector<std::string>& variables() const { return variables_; }
  const std::vector<Outcome>& outcomes() const { return outcomes_; }
  std::size_t size() const { return outcomes_.size(); }

  bool has(const std::string& name) const;
  std::size_t index_of(const std::string& name) const;
  std::vector<std::size_t> indices_of(const Selector& sel) const;

  Partition partition(const Selector& sel) const;
  Partition partition(std::span<const std::size_t> columns) const;

  std::vector<Rational> weights() const;

 private:
  std::vector<std::string> variables_;
  std::vector<Outcome> outcomes_;
};

}  // namespace piclab::info
