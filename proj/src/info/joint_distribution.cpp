#include "piclab/info/joint_distribution.h"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace piclab::info {

namespace {

struct TupleHash {
  std::size_t operator()(const std::vector<Value>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (Value x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

}  // namespace

Selector::Selector(std::initializer_list<std::string> names)
    : Selector(std::vector<std::string>(names)) {}

Selector::Selector(std::vector<std::string> names) {
  if (names.empty()) throw InfoError("selector must name at least one variable");
  for (auto& n : names) {
    if (std::find(names_.begin(), names_.end(), n) == names_.end()) {
      names_.push_back(std::move(n));
    }
  }
}

Selector Selector::operator+(const Selector& other) const {
  std::vector<std::string> all = names_;
  all.insert(all.end(), other.names_.begin(), other.names_.end());
  return Selector(std::move(all));
}

Partition join(const Partition& a, const Partition& b) {
  if (a.group.size() != b.group.size()) {
    throw InfoError("joining partitions of different outcome lists");
  }
  Partition out;
  out.group.resize(a.group.size());
  std::unordered_map<std::uint64_t, std::uint32_t> ids;
  ids.reserve(a.group.size());
  for (std::size_t o = 0; o < a.group.size(); ++o) {
    std::uint64_t key = (static_cast<std::uint64_t>(a.group[o]) << 32) | b.group[o];
    auto [it, inserted] = ids.emplace(key, out.count);
    if (inserted) ++out.count;
    out.group[o] = it->second;
  }
  return out;
}

Partition trivial_partition(std::size_t outcomes) {
  Partition p;
  p.group.assign(outcomes, 0);
  p.count = outcomes == 0 ? 0 : 1;
  return p;
}

JointDistribution::JointDistribution(std::vector<std::string> variables,
                                     std::vector<Outcome> outcomes)
    : variables_(std::move(variables)), outcomes_(std::move(outcomes)) {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    for (std::size_t j = i + 1; j < variables_.size(); ++j) {
      if (variables_[i] == variables_[j]) {
        throw InfoError("duplicate variable name: " + variables_[i]);
      }
    }
  }
  Rational total = 0;
  std::unordered_map<std::vector<Value>, int, TupleHash> seen;
  for (const auto& o : outcomes_) {
    if (o.values.size() != variables_.size()) {
      throw InfoError("outcome arity does not match variable count");
    }
    if (o.weight <= Rational(0)) throw InfoError("outcome weight must be positive");
    if (!seen.emplace(o.values, 0).second) throw InfoError("duplicate outcome tuple");
    total += o.weight;
  }
  if (total != Rational(1)) {
    throw InfoError("weights sum to " + total.to_string() + ", expected 1");
  }
}

bool JointDistribution::has(const std::string& name) const {
  return std::find(variables_.begin(), variables_.end(), name) != variables_.end();
}

std::size_t JointDistribution::index_of(const std::string& name) const {
  auto it = std::find(variables_.begin(), variables_.end(), name);
  if (it == variables_.end()) throw InfoError("unknown variable: " + name);
  return static_cast<std::size_t>(it - variables_.begin());
}

std::vector<std::size_t> JointDistribution::indices_of(const Selector& sel) const {
  std::vector<std::size_t> out;
  out.reserve(sel.names().size());
  for (const auto& n : sel.names()) out.push_back(index_of(n));
  return out;
}

Partition JointDistribution::partition(const Selector& sel) const {
  auto cols = indices_of(sel);
  return partition(cols);
}

Partition JointDistribution::partition(std::span<const std::size_t> columns) const {
  Partition p;
  p.group.resize(outcomes_.size());
  std::unordered_map<std::vector<Value>, std::uint32_t, TupleHash> ids;
  ids.reserve(outcomes_.size());
  std::vector<Value> key(columns.size());
  for (std::size_t o = 0; o < outcomes_.size(); ++o) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      key[c] = outcomes_[o].values.at(columns[c]);
    }
    auto [it, inserted] = ids.emplace(key, p.count);
    if (inserted) ++p.count;
    p.group[o] = it->second;
  }
  return p;
}

std::vector<Rational> JointDistribution::weights() const {
  std::vector<Rational> w;
  w.reserve(outcomes_.size());
  for (const auto& o : outcomes_) w.push_back(o.weight);
  return w;
}

}  // namespace piclab::info
