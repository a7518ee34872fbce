#include "piclab/measures/measures.h"

#include <algorithm>
#include <functional>

#include "piclab/info/entropy.h"
#include "piclab/model/errors.h"

namespace piclab::measures {

using info::JointDistribution;
using info::Selector;

namespace {

Selector all_but(int k, int i, const std::function<std::string(int)>& name) {
  std::vector<std::string> names;
  for (int j = 0; j < k; ++j) {
    if (j != i) names.push_back(name(j));
  }
  return Selector(std::move(names));
}

Selector own_view(int i) {
  return Selector{input_var(i), private_tape_var(i), public_tape_var()};
}

double sum_players(int k, const std::function<double(int)>& term) {
  double total = 0.0;
  for (int i = 0; i < k; ++i) total += term(i);
  return total;
}

std::string transcript_name(TranscriptKind kind, int i) {
  switch (kind) {
    case TranscriptKind::kReceived:
      return received_var(i);
    case TranscriptKind::kBidirectional:
      return bidir_var(i);
    case TranscriptKind::kBidirectionalByRound:
      return bidir_round_var(i);
  }
  return received_var(i);
}

}  // namespace

std::size_t cc(const ProtocolSpace& space) {
  std::size_t best = 0;
  for (const auto& e : space.table().runs) best = std::max(best, e.total_bits);
  return best;
}

Rational acc(const ProtocolSpace& space, const InputDistribution& mu) {
  const auto& table = space.table();
  Rational total = 0;
  for (std::size_t row = 0; row < table.input_rows; ++row) {
    const Rational& w = mu.weights().at(row);
    if (w.is_zero()) continue;
    std::int64_t bits = 0;
    for (std::uint64_t t = 0; t < table.tapes; ++t) {
      bits += static_cast<std::int64_t>(table.at(row, t).total_bits);
    }
    total += w * Rational(bits, static_cast<std::int64_t>(table.tapes));
  }
  return total;
}

std::vector<double> ic_terms(const ProtocolSpace& space, const InputDistribution& mu,
                             TranscriptKind kind) {
  auto d = joint_dist(space, mu);
  const int k = space.k();
  std::vector<double> out;
  for (int i = 0; i < k; ++i) {
    out.push_back(info::mutual_info(d, all_but(k, i, input_var), Selector{transcript_name(kind, i)},
                                    own_view(i)));
  }
  return out;
}

double ic(const ProtocolSpace& space, const InputDistribution& mu) {
  auto terms = ic_terms(space, mu, TranscriptKind::kReceived);
  double total = 0.0;
  for (double t : terms) total += t;
  return total;
}

double pic(const ProtocolSpace& space, const InputDistribution& mu) {
  auto d = joint_dist(space, mu);
  const int k = space.k();
  return sum_players(k, [&](int i) {
    Selector learned = Selector{received_var(i)} + all_but(k, i, private_tape_var);
    return info::mutual_info(d, all_but(k, i, input_var), learned, own_view(i));
  });
}

PicDecomposition pic_decomposition(const ProtocolSpace& space, const InputDistribution& mu) {
  auto d = joint_dist(space, mu);
  const int k = space.k();
  PicDecomposition out;
  out.ic_term = sum_players(k, [&](int i) {
    return info::mutual_info(d, all_but(k, i, input_var), Selector{received_var(i)}, own_view(i));
  });
  out.random_term = sum_players(k, [&](int i) {
    return info::mutual_info(d, all_but(k, i, private_tape_var), all_but(k, i, input_var),
                             own_view(i) + Selector{received_var(i)});
  });
  return out;
}

double privacy_leakage(const ProtocolSpace& space, const InputDistribution& mu,
                       const model::FunctionFamily& f) {
  auto d = joint_dist(space, mu, f);
  const int k = space.k();
  return sum_players(k, [&](int i) {
    return info::mutual_info(d, all_but(k, i, input_var), Selector{received_var(i)},
                             own_view(i) + Selector{function_var(i)});
  });
}

double transcript_entropy(const ProtocolSpace& space, const InputDistribution& mu) {
  auto d = joint_dist(space, mu);
  std::vector<std::string> given;
  for (int i = 0; i < space.k(); ++i) given.push_back(input_var(i));
  given.push_back(public_tape_var());
  return info::cond_entropy(d, Selector{transcript_var()}, Selector(given));
}

double spy_info(const ProtocolSpace& space, const InputDistribution& mu) {
  auto d = joint_dist(space, mu);
  return sum_players(space.k(), [&](int i) {
    return info::mutual_info(d, Selector{input_var(i)}, Selector{bidir_var(i)});
  });
}

double bidir_conditional_entropy(const ProtocolSpace& space, const InputDistribution& mu) {
  auto d = joint_dist(space, mu);
  return sum_players(space.k(), [&](int i) {
    return info::cond_entropy(d, Selector{bidir_round_var(i)},
                              Selector{input_var(i), public_tape_var()});
  });
}

GridResult sup_pic_grid(const ProtocolSpace& space, int steps) {
  const auto& p = space.protocol();
  if (p.k != 2) throw model::ConfigError("grid search supports two players only");
  for (const auto& dom : p.input_domains) {
    if (dom != std::vector<Bits>{"0", "1"}) {
      throw model::ConfigError("grid search supports one-bit inputs only");
    }
  }
  if (steps < 1) throw model::ConfigError("grid needs at least one step");

  // Partitions depend only on the outcome list, which under the uniform law
  // covers every execution; each grid point only changes the masses.
  auto d = joint_dist(space, InputDistribution::uniform(p));
  struct Term {
    info::Partition ac, bc, abc, c;
  };
  std::vector<Term> terms;
  for (int i = 0; i < 2; ++i) {
    Selector a = all_but(2, i, input_var);
    Selector b = Selector{received_var(i)} + all_but(2, i, private_tape_var);
    Selector c = own_view(i);
    terms.push_back({d.partition(a + c), d.partition(b + c), d.partition(a + b + c), d.partition(c)});
  }
  const auto& table = space.table();
  std::vector<int> x0_zero, x1_zero;
  for (const auto& e : table.runs) {
    x0_zero.push_back(e.inputs[0] == "0");
    x1_zero.push_back(e.inputs[1] == "0");
  }
  const std::int64_t denom =
      static_cast<std::int64_t>(steps) * steps * static_cast<std::int64_t>(table.tapes);

  GridResult best;
  best.value = -1.0;
  std::vector<std::int64_t> mass(table.runs.size());
  for (int a = 0; a <= steps; ++a) {
    for (int b = 0; b <= steps; ++b) {
      for (std::size_t o = 0; o < mass.size(); ++o) {
        std::int64_t pa = x0_zero[o] ? a : steps - a;
        std::int64_t pb = x1_zero[o] ? b : steps - b;
        mass[o] = pa * pb;
      }
      double v = 0.0;
      for (const auto& t : terms) {
        double mi = info::entropy(t.ac, mass, denom) + info::entropy(t.bc, mass, denom) -
                    info::entropy(t.abc, mass, denom) - info::entropy(t.c, mass, denom);
        v += info::clamp_residue(mi);
      }
      ++best.points;
      if (v > best.value + 1e-12) {
        best.value = v;
        best.alpha = Rational(a, steps);
        best.beta = Rational(b, steps);
      }
    }
  }
  return best;
}

}  // namespace piclab::measures
