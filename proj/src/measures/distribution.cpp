#include "piclab/measures/distribution.h"

#include <fstream>
#include <sstream>

#include "piclab/model/errors.h"

namespace piclab::measures {

using model::ConfigError;

namespace {

Rational sum(const std::vector<Rational>& w) {
  Rational s = 0;
  for (const auto& x : w) s += x;
  return s;
}

Bits hex_to_bits(const std::string& hex, int width) {
  std::uint64_t v = 0;
  if (hex.empty() || hex.size() > 16) throw ConfigError("bad hex input value '" + hex + "'");
  for (char c : hex) {
    int d;
    if (c >= '0' && c <= '9') {
      d = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      d = c - 'a' + 10;
    } else if (c >= 'A' && c <= 'F') {
      d = c - 'A' + 10;
    } else {
      throw ConfigError("bad hex input value '" + hex + "'");
    }
    v = v * 16 + static_cast<std::uint64_t>(d);
  }
  if (width < 64 && v >> width) {
    throw ConfigError("hex value '" + hex + "' does not fit in " + std::to_string(width) + " bits");
  }
  Bits b(static_cast<std::size_t>(width), '0');
  for (int n = 0; n < width; ++n) {
    if ((v >> (width - 1 - n)) & 1u) b[static_cast<std::size_t>(n)] = '1';
  }
  return b;
}

}  // namespace

InputDistribution::InputDistribution(std::vector<Rational> weights, std::string id)
    : weights_(std::move(weights)), id_(std::move(id)) {
  for (const auto& w : weights_) {
    if (w < Rational(0)) throw ConfigError("input distribution has a negative weight");
  }
  if (sum(weights_) != Rational(1)) {
    throw ConfigError("input distribution weights sum to " + sum(weights_).to_string());
  }
}

bool InputDistribution::full_support() const {
  for (const auto& w : weights_) {
    if (w.is_zero()) return false;
  }
  return true;
}

int fixed_input_length(const ProtocolDef& p, int i) {
  const auto& dom = p.input_domains.at(static_cast<std::size_t>(i));
  auto len = static_cast<int>(dom.front().size());
  for (const auto& x : dom) {
    if (static_cast<int>(x.size()) != len) return -1;
  }
  return len;
}

InputDistribution InputDistribution::uniform(const ProtocolDef& p) {
  auto n = model::input_space_size(p);
  return InputDistribution(
      std::vector<Rational>(n, Rational(1, static_cast<std::int64_t>(n))), "uniform");
}

InputDistribution InputDistribution::independent(
    const ProtocolDef& p, const std::vector<std::vector<Rational>>& marginals, std::string id) {
  if (marginals.size() != static_cast<std::size_t>(p.k)) {
    throw ConfigError("one marginal per player required");
  }
  for (std::size_t i = 0; i < marginals.size(); ++i) {
    if (marginals[i].size() != p.input_domains[i].size()) {
      throw ConfigError("marginal of player " + std::to_string(i) + " has the wrong size");
    }
  }
  auto n = model::input_space_size(p);
  std::vector<Rational> w(n);
  for (std::size_t row = 0; row < n; ++row) {
    Rational prod = 1;
    std::size_t r = row;
    for (std::size_t i = marginals.size(); i-- > 0;) {
      prod *= marginals[i][r % marginals[i].size()];
      r /= marginals[i].size();
    }
    w[row] = prod;
  }
  return InputDistribution(std::move(w), std::move(id));
}

InputDistribution InputDistribution::from_entries(
    const ProtocolDef& p, const std::vector<std::pair<std::vector<Bits>, Rational>>& entries,
    std::string id) {
  std::vector<Rational> w(model::input_space_size(p), Rational(0));
  for (const auto& [x, weight] : entries) {
    auto row = model::input_row(p, x);
    if (!w[row].is_zero()) throw ConfigError("input tuple listed twice in distribution");
    if (weight <= Rational(0)) throw ConfigError("listed input weights must be positive");
    w[row] = weight;
  }
  return InputDistribution(std::move(w), std::move(id));
}

InputDistribution InputDistribution::load(const ProtocolDef& p, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open distribution file " + path);
  std::vector<int> widths;
  for (int i = 0; i < p.k; ++i) {
    int w = fixed_input_length(p, i);
    if (w < 0) throw ConfigError("distribution files need fixed-length input domains");
    widths.push_back(w);
  }
  std::vector<std::pair<std::vector<Bits>, Rational>> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() != static_cast<std::size_t>(p.k) + 2) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected " +
                        std::to_string(p.k) + " inputs, numerator and denominator");
    }
    std::vector<Bits> x;
    for (int i = 0; i < p.k; ++i) {
      x.push_back(hex_to_bits(tok[static_cast<std::size_t>(i)], widths[static_cast<std::size_t>(i)]));
    }
    try {
      entries.emplace_back(std::move(x), Rational(std::stoll(tok[tok.size() - 2]),
                                                  std::stoll(tok.back())));
    } catch (const std::logic_error& ex) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": bad weight: " + ex.what());
    }
  }
  auto stem = path.substr(path.find_last_of('/') + 1);
  return from_entries(p, entries, "file:" + stem);
}

InputDistribution InputDistribution::product(const InputDistribution& mu, const ProtocolDef& p,
                                             const InputDistribution& eta, const ProtocolDef& q,
                                             const ProtocolDef& pq) {
  if (p.k != q.k || p.k != pq.k) throw ConfigError("product of distributions with different k");
  std::vector<int> split;
  for (int i = 0; i < p.k; ++i) {
    int len = fixed_input_length(p, i);
    if (len < 0) throw ConfigError("product needs fixed-length inputs");
    split.push_back(len);
  }
  auto n = model::input_space_size(pq);
  std::vector<Rational> w(n);
  for (std::size_t row = 0; row < n; ++row) {
    auto x = model::input_tuple(pq, row);
    std::vector<Bits> a, b;
    for (std::size_t i = 0; i < x.size(); ++i) {
      auto cut = static_cast<std::size_t>(split[i]);
      a.push_back(x[i].substr(0, cut));
      b.push_back(x[i].substr(cut));
    }
    w[row] = mu.weights()[model::input_row(p, a)] * eta.weights()[model::input_row(q, b)];
  }
  return InputDistribution(std::move(w), mu.id() + "x" + eta.id());
}

}  // namespace piclab::measures
