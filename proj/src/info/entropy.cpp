#include "piclab/info/entropy.h"

#include <cmath>
#include <limits>
#include <numeric>

namespace piclab::info {

namespace {

void require_disjoint(const Selector& a, const Selector& b) {
  for (const auto& n : a.names()) {
    for (const auto& m : b.names()) {
      if (n == m) throw InfoError("selectors overlap on variable " + n);
    }
  }
}

// Class masses as numerators over a common denominator. Returns false when
// the common denominator does not fit in 64 bits.
bool class_masses(const Partition& p, std::span<const Rational> weights,
                  std::vector<__int128>& mass, std::int64_t& denom) {
  __int128 l = 1;
  for (const auto& w : weights) {
    if (w.is_zero() || l % w.den() == 0) continue;
    __int128 g = std::gcd(static_cast<std::int64_t>(l % w.den()), w.den());
    l = l / g * w.den();
    if (l > std::numeric_limits<std::int64_t>::max()) return false;
  }
  denom = static_cast<std::int64_t>(l);
  mass.assign(p.count, 0);
  for (std::size_t o = 0; o < weights.size(); ++o) {
    const auto& w = weights[o];
    if (w.is_zero()) continue;
    mass[p.group[o]] += static_cast<__int128>(w.num()) * (l / w.den());
  }
  return true;
}

double plogp_sum(const std::vector<double>& probs) {
  double h = 0.0;
  for (double q : probs) {
    if (q > 0.0) h -= q * std::log2(q);
  }
  return h;
}

}  // namespace

double clamp_residue(double v) {
  return (v < 0.0 && v > -kClampResidue) ? 0.0 : v;
}

double entropy(const Partition& p, std::span<const Rational> weights) {
  if (weights.size() != p.group.size()) {
    throw InfoError("weight vector does not match partition size");
  }
  std::vector<__int128> mass;
  std::int64_t denom = 1;
  std::vector<double> probs;
  if (class_masses(p, weights, mass, denom)) {
    probs.reserve(mass.size());
    for (auto m : mass) {
      probs.push_back(static_cast<double>(m) / static_cast<double>(denom));
    }
  } else {
    std::vector<Rational> exact(p.count, Rational(0));
    for (std::size_t o = 0; o < weights.size(); ++o) exact[p.group[o]] += weights[o];
    for (const auto& r : exact) probs.push_back(r.to_double());
  }
  return plogp_sum(probs);
}

double entropy(const Partition& p, std::span<const std::int64_t> masses,
               std::int64_t denominator) {
  if (masses.size() != p.group.size()) {
    throw InfoError("mass vector does not match partition size");
  }
  std::vector<__int128> mass(p.count, 0);
  for (std::size_t o = 0; o < masses.size(); ++o) mass[p.group[o]] += masses[o];
  const auto d = static_cast<double>(denominator);
  double h = 0.0;
  for (auto m : mass) {
    if (m > 0) {
      double q = static_cast<double>(m) / d;
      h -= q * std::log2(q);
    }
  }
  return h;
}

double mutual_info(const Partition& ac, const Partition& bc, const Partition& abc,
                   const Partition& c, std::span<const Rational> weights) {
  double v = entropy(ac, weights) + entropy(bc, weights) - entropy(abc, weights) -
             entropy(c, weights);
  return clamp_residue(v);
}

double entropy(const JointDistribution& d, const Selector& a) {
  auto w = d.weights();
  return entropy(d.partition(a), w);
}

double cond_entropy(const JointDistribution& d, const Selector& a, const Selector& given) {
  require_disjoint(a, given);
  auto w = d.weights();
  double v = entropy(d.partition(a + given), w) - entropy(d.partition(given), w);
  return clamp_residue(v);
}

double mutual_info(const JointDistribution& d, const Selector& a, const Selector& b,
                   const std::optional<Selector>& given) {
  require_disjoint(a, b);
  auto w = d.weights();
  if (!given) {
    double v = entropy(d.partition(a), w) + entropy(d.partition(b), w) -
               entropy(d.partition(a + b), w);
    return clamp_residue(v);
  }
  require_disjoint(a, *given);
  require_disjoint(b, *given);
  return mutual_info(d.partition(a + *given), d.partition(b + *given),
                     d.partition(a + b + *given), d.partition(*given), w);
}

JointDistribution apply_function(const JointDistribution& d, const Selector& a,
                                 const std::map<std::vector<Value>, Value>& f,
                                 const std::string& new_name) {
  if (d.has(new_name)) throw InfoError("variable already exists: " + new_name);
  auto cols = d.indices_of(a);
  std::vector<std::string> vars = d.variables();
  vars.push_back(new_name);
  std::vector<Outcome> out;
  out.reserve(d.size());
  std::vector<Value> key(cols.size());
  for (const auto& o : d.outcomes()) {
    for (std::size_t c = 0; c < cols.size(); ++c) key[c] = o.values[cols[c]];
    auto it = f.find(key);
    if (it == f.end()) throw InfoError("function is not defined on the support of its argument");
    Outcome e = o;
    e.values.push_back(it->second);
    out.push_back(std::move(e));
  }
  return JointDistribution(std::move(vars), std::move(out));
}

}  // namespace piclab::info
