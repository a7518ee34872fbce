#include "piclab/compression/compressor.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "piclab/measures/measures.h"
#include "piclab/measures/report.h"
#include "piclab/model/errors.h"

namespace piclab::compression {

namespace {

constexpr std::size_t kNoMessage = std::numeric_limits<std::size_t>::max();

// Message contents of a parsed transcript, indexed by global message number.
std::vector<Bits> by_message(const ObliviousLayout& layout, PlayerId i, const Bits& transcript) {
  std::vector<Bits> out(layout.messages().size());
  auto parts = layout.parse(i, transcript);
  const auto& slots = layout.slots(i);
  for (std::size_t n = 0; n < slots.size(); ++n) out[slots[n]] = std::move(parts[n]);
  return out;
}

std::size_t offset_in_transcript(const ObliviousLayout& layout, PlayerId i,
                                 const std::vector<Bits>& contents, std::size_t g) {
  std::size_t off = 0;
  for (auto s : layout.slots(i)) {
    if (s == g) return off;
    off += contents[s].size();
  }
  throw CompressionError("message " + std::to_string(g) + " is not in the transcript of player " +
                         std::to_string(i));
}

bool is_prefix(const Bits& prefix, const Bits& of) {
  return prefix.size() <= of.size() && of.compare(0, prefix.size(), prefix) == 0;
}

std::string index_text(std::size_t q) { return q == kNoMessage ? "inf" : std::to_string(q); }

}  // namespace

double RunResult::log_inverse_weight() const {
  double s = 0.0;
  for (double v : log_inverse_weights) s += v;
  return s;
}

Compressor::Compressor(const measures::ProtocolSpace& space, const measures::InputDistribution& mu,
                       TranscriptOrder order)
    : space_(&space), layout_(space, order) {
  const auto& p = space.protocol();
  if (p.total_private_bits() > 0) {
    throw model::ConfigError(p.name + ": compression needs a public-coin protocol; publicize it");
  }
  const auto& table = space.table();
  const auto& w = mu.weights();
  if (w.size() != table.input_rows) {
    throw model::ConfigError("input distribution does not match the protocol");
  }
  for (const auto& e : table.runs) cc_ = std::max(cc_, e.total_bits);

  const auto ks = static_cast<std::size_t>(p.k);
  trees_.assign(ks, {});
  for (std::uint64_t t = 0; t < table.tapes; ++t) {
    for (std::size_t i = 0; i < ks; ++i) {
      const auto me = static_cast<PlayerId>(i);
      std::map<Bits, Rational> marginal;
      std::map<Bits, std::map<Bits, WeightedTranscript>> seen;
      for (std::size_t row = 0; row < table.input_rows; ++row) {
        if (w[row].is_zero()) continue;
        const auto& e = table.at(row, t);
        const Bits& xi = e.inputs[i];
        marginal[xi] += w[row];
        Bits tr = layout_.transcript(e, me);
        auto [it, fresh] = seen[xi].try_emplace(tr, WeightedTranscript{tr, w[row], e.outputs[i]});
        if (!fresh) {
          if (it->second.output != e.outputs[i]) {
            throw model::ModelViolation(p.name + ": player " + std::to_string(i) +
                                        " writes different outputs after one transcript");
          }
          it->second.weight += w[row];
        }
      }
      for (auto& [xi, leaves] : seen) {
        std::vector<WeightedTranscript> list;
        for (auto& [tr, leaf] : leaves) {
          leaf.weight /= marginal.at(xi);
          list.push_back(std::move(leaf));
        }
        trees_[i].emplace(TreeKey{xi, t}, TranscriptTree(std::move(list)));
      }
    }
  }
}

int Compressor::index_bits() const { return ceil_log2(cc_ + 2); }

const TranscriptTree& Compressor::tree(PlayerId i, std::size_t row, std::uint64_t tape) const {
  const auto& e = space_->table().at(row, tape);
  return trees_.at(static_cast<std::size_t>(i)).at({e.inputs.at(static_cast<std::size_t>(i)), tape});
}

TranscriptProfile Compressor::true_profile(std::size_t row, std::uint64_t tape) const {
  const auto& e = space_->table().at(row, tape);
  TranscriptProfile out;
  for (int i = 0; i < k(); ++i) out.transcripts.push_back(layout_.transcript(e, i));
  return out;
}

std::vector<Bits> Compressor::candidates(PlayerId i, std::size_t row, std::uint64_t tape) const {
  const auto& table = space_->table();
  const auto ii = static_cast<std::size_t>(i);
  const Bits& xi = table.at(row, tape).inputs.at(ii);
  std::set<Bits> out;
  for (std::size_t r = 0; r < table.input_rows; ++r) {
    const auto& e = table.at(r, tape);
    if (e.inputs[ii] == xi) out.insert(layout_.transcript(e, i));
  }
  return {out.begin(), out.end()};
}

bool Compressor::is_coherent(const TranscriptProfile& profile) const {
  if (profile.transcripts.size() != static_cast<std::size_t>(k())) {
    throw model::ConfigError("profile needs one transcript per player");
  }
  std::vector<std::vector<Bits>> contents;
  for (int i = 0; i < k(); ++i) {
    contents.push_back(by_message(layout_, i, profile.transcripts[static_cast<std::size_t>(i)]));
  }
  const auto& msgs = layout_.messages();
  for (std::size_t g = 0; g < msgs.size(); ++g) {
    if (contents[static_cast<std::size_t>(msgs[g].sender)][g] !=
        contents[static_cast<std::size_t>(msgs[g].receiver)][g]) {
      return false;
    }
  }
  return true;
}

RunResult Compressor::run(std::size_t row, std::uint64_t tape, LcpBox& box,
                          std::vector<std::string>* trace) const {
  const int kk = k();
  const auto ks = static_cast<std::size_t>(kk);
  const auto truth = true_profile(row, tape).transcripts;

  std::vector<const TranscriptTree*> trees(ks);
  std::vector<int> tau(ks);
  RunResult res;
  res.moves_per_player.assign(ks, 0);
  for (std::size_t i = 0; i < ks; ++i) {
    trees[i] = &tree(static_cast<PlayerId>(i), row, tape);
    tau[i] = trees[i]->root();
    auto leaf = trees[i]->find_leaf(truth[i]);
    if (!leaf) throw CompressionError("true transcript missing from the tree of a player");
    res.log_inverse_weights.push_back(-std::log2(trees[i]->node(*leaf).weight.to_double()));
  }

  std::vector<int> cand(ks);
  std::vector<Bits> cand_text(ks);
  std::vector<std::vector<Bits>> contents(ks);
  for (;;) {
    ++res.stages;
    for (std::size_t i = 0; i < ks; ++i) {
      cand[i] = candidate_leaf(*trees[i], tau[i]);
      const auto& nd = trees[i]->node(cand[i]);
      cand_text[i] = trees[i]->leaves()[static_cast<std::size_t>(nd.leaf)].transcript;
      contents[i] = by_message(layout_, static_cast<PlayerId>(i), cand_text[i]);
    }

    // q[i][j]: first message of the (i, j) conversation where the candidates
    // disagree; within[i][j]: the bit inside that message.
    std::vector<std::vector<std::size_t>> q(ks, std::vector<std::size_t>(ks, kNoMessage));
    std::vector<std::vector<std::size_t>> within(ks, std::vector<std::size_t>(ks, 0));
    for (std::size_t i = 0; i < ks; ++i) {
      for (std::size_t j = i + 1; j < ks; ++j) {
        const auto& conv = layout_.conversation(static_cast<PlayerId>(i), static_cast<PlayerId>(j));
        Bits ci, cj;
        for (auto g : conv) {
          ci += contents[i][g];
          cj += contents[j][g];
        }
        auto r = box(ci, cj);
        ++res.lcp_calls;
        res.lcp_bits += r.bits;
        if (r.equal()) continue;
        const auto& side = r.index < ci.size() ? contents[i] : contents[j];
        std::size_t off = 0;
        for (auto g : conv) {
          if (r.index < off + side[g].size()) {
            q[i][j] = q[j][i] = g;
            within[i][j] = within[j][i] = r.index - off;
            break;
          }
          off += side[g].size();
        }
      }
    }
    res.broadcast_bits += ks * (ks - 1) * static_cast<std::size_t>(index_bits());

    std::size_t big_q = kNoMessage;
    for (const auto& qi : q) {
      for (auto v : qi) big_q = std::min(big_q, v);
    }

    std::string line;
    if (trace) {
      line = "stage=" + std::to_string(res.stages) + " Q=" + index_text(big_q);
      std::string m = " q=[";
      for (std::size_t i = 0; i < ks; ++i) {
        for (std::size_t j = 0; j < ks; ++j) {
          m += i == j ? "-" : index_text(q[i][j]);
          if (j + 1 < ks) m += ",";
        }
        if (i + 1 < ks) m += ";";
      }
      line += m + "]";
    }
    if (big_q == kNoMessage) {
      if (trace) trace->push_back(line + " done");
      break;
    }

    const auto& msg = layout_.messages()[big_q];
    const auto mover = static_cast<std::size_t>(msg.receiver);
    const auto sender = static_cast<std::size_t>(msg.sender);
    const std::size_t pos =
        offset_in_transcript(layout_, msg.receiver, contents[mover], big_q) + within[mover][sender];
    const auto& t = *trees[mover];
    int node = cand[mover];
    while (node != tau[mover] && t.node(node).prefix.size() > pos) node = t.node(node).parent;
    if (trace) line += " mover=" + std::to_string(mover) + " pos=" + std::to_string(pos);

    if (t.is_leaf(node)) {
      if (box.is_exact()) throw CompressionError("receiver of a wrong message has nowhere to move");
      res.stuck = true;
      if (trace) trace->push_back(line + " stuck");
      break;
    }
    const auto& branch = t.node(node);
    if (box.is_exact() && branch.prefix.size() != pos) {
      throw CompressionError("disagreement does not fall on a branching node");
    }
    int bit = cand_text[mover][branch.prefix.size()] == '1' ? 1 : 0;
    int next = branch.child[1 - bit];
    if (t.node(next).weight * Rational(2) > t.node(tau[mover]).weight) {
      throw CompressionError("moved node weighs more than half of the previous one");
    }
    tau[mover] = next;
    ++res.moves;
    ++res.moves_per_player[mover];
    if (trace) trace->push_back(line + " depth=" + std::to_string(t.node(next).prefix.size()));

    if (box.is_exact()) {
      for (std::size_t i = 0; i < ks; ++i) {
        if (!is_prefix(trees[i]->node(tau[i]).prefix, truth[i])) {
          throw CompressionError("node of player " + std::to_string(i) +
                                 " left the true transcript");
        }
      }
    }
  }

  for (std::size_t i = 0; i < ks; ++i) {
    const auto& leaf = trees[i]->leaves()[static_cast<std::size_t>(trees[i]->node(cand[i]).leaf)];
    res.profile.transcripts.push_back(leaf.transcript);
    res.outputs.push_back(leaf.output);
  }
  res.correct = res.profile.transcripts == truth;
  if (box.is_exact() && !res.correct) {
    throw CompressionError("exact compression ended on a wrong profile");
  }
  return res;
}

std::size_t count_coherent_profiles(const Compressor& c, std::size_t row, std::uint64_t tape) {
  const auto ks = static_cast<std::size_t>(c.k());
  std::vector<std::vector<Bits>> sets;
  for (std::size_t i = 0; i < ks; ++i) sets.push_back(c.candidates(static_cast<PlayerId>(i), row, tape));
  std::vector<std::size_t> pick(ks, 0);
  std::size_t count = 0;
  for (;;) {
    TranscriptProfile prof;
    for (std::size_t i = 0; i < ks; ++i) prof.transcripts.push_back(sets[i][pick[i]]);
    if (c.is_coherent(prof)) ++count;
    std::size_t i = 0;
    while (i < ks && ++pick[i] == sets[i].size()) pick[i++] = 0;
    if (i == ks) break;
  }
  return count;
}

bool CompressionReport::within_error_budget() const {
  constexpr double kSlack = 1e-12;
  if (error_original && error_compressed) {
    return *error_compressed <= *error_original + delta + kSlack;
  }
  return simulation_error <= delta + kSlack;
}

CompressionReport compression_theorem_check(const measures::ProtocolSpace& space,
                                            const measures::InputDistribution& mu,
                                            const std::optional<model::FunctionFamily>& f,
                                            const CompressionOptions& options) {
  if (options.delta < 0.0) throw model::ConfigError("delta must be non-negative");
  if (!options.exact && !(options.delta > 0.0)) {
    throw model::ConfigError("randomized lcp boxes need delta > 0");
  }
  if (options.trials < 1) throw model::ConfigError("trials must be positive");

  Compressor comp(space, mu, options.order);
  const auto& p = space.protocol();
  const auto& table = space.table();
  CompressionReport r;
  r.protocol_id = p.name;
  r.distribution_id = mu.id();
  r.exact = options.exact;
  r.delta = options.delta;
  r.trials = options.exact ? 1 : options.trials;
  r.k = p.k;
  r.cc = comp.cc();
  r.ic = measures::ic(space, mu);
  r.bidir_conditional_entropy = measures::bidir_conditional_entropy(space, mu);

  const double pairs = static_cast<double>(p.k) * (p.k - 1) / 2.0;
  LcpBox box = LcpBox::exact();
  if (!options.exact) {
    r.lcp_eps = options.delta / ((r.ic + 1.0) * pairs);
    if (r.lcp_eps >= 1.0) throw model::ConfigError("delta is too large for the lcp error split");
    box = LcpBox::randomized(r.lcp_eps, options.seed);
  }

  double err_orig = 0.0, err_comp = 0.0;
  const auto& w = mu.weights();
  for (std::size_t row = 0; row < table.input_rows; ++row) {
    if (w[row].is_zero()) continue;
    const auto x = model::input_tuple(p, row);
    std::vector<Bits> wanted;
    if (f) {
      for (int i = 0; i < p.k; ++i) wanted.push_back((*f)(i, x));
    }
    for (std::uint64_t t = 0; t < table.tapes; ++t) {
      const auto& e = table.at(row, t);
      const double base = w[row].to_double() / static_cast<double>(table.tapes);
      if (f && e.outputs != wanted) err_orig += base;
      const double weight = base / r.trials;
      for (int trial = 0; trial < r.trials; ++trial) {
        auto res = comp.run(row, t, box);
        r.expected_moves += weight * res.moves;
        r.expected_log_inverse_weight += weight * res.log_inverse_weight();
        r.expected_stages += weight * res.stages;
        r.mean_lcp_calls += weight * static_cast<double>(res.lcp_calls);
        r.acc_compressed += weight * static_cast<double>(res.comm_bits());
        if (!res.correct) r.profile_error += weight;
        if (res.outputs != e.outputs) r.simulation_error += weight;
        if (f && res.outputs != wanted) err_comp += weight;
        for (std::size_t i = 0; i < res.moves_per_player.size(); ++i) {
          if (res.moves_per_player[i] > res.log_inverse_weights[i] + 1e-9) {
            r.moves_within_weight = false;
          }
        }
      }
    }
  }
  if (f) {
    r.error_original = err_orig;
    r.error_compressed = err_comp;
  }

  const double k2 = static_cast<double>(p.k) * p.k;
  const double core = r.cc > 1 ? k2 * r.ic * std::log2(static_cast<double>(r.cc)) : 0.0;
  if (core > 0.0) {
    r.bound = options.delta > 0.0 ? core * std::log2(core / options.delta) : core;
  }
  if (r.bound > 0.0) r.ratio = r.acc_compressed / r.bound;
  return r;
}

std::vector<std::pair<std::string, std::string>> report_fields(const CompressionReport& r) {
  using measures::format_bits;
  std::vector<std::pair<std::string, std::string>> out{
      {"protocol", r.protocol_id},
      {"distribution", r.distribution_id},
      {"lcp", r.exact ? "exact" : "randomized"},
      {"delta", format_bits(r.delta)},
      {"lcp_eps", format_bits(r.lcp_eps)},
      {"trials", std::to_string(r.trials)},
      {"k", std::to_string(r.k)},
      {"cc", std::to_string(r.cc)},
      {"ic", format_bits(r.ic)},
      {"expected_moves", format_bits(r.expected_moves)},
      {"expected_log_inverse_weight", format_bits(r.expected_log_inverse_weight)},
      {"bidir_conditional_entropy", format_bits(r.bidir_conditional_entropy)},
      {"expected_stages", format_bits(r.expected_stages)},
      {"mean_lcp_calls", format_bits(r.mean_lcp_calls)},
      {"acc_compressed", format_bits(r.acc_compressed)},
  };
  if (r.error_original) out.emplace_back("error_original", format_bits(*r.error_original));
  if (r.error_compressed) out.emplace_back("error_compressed", format_bits(*r.error_compressed));
  out.emplace_back("simulation_error", format_bits(r.simulation_error));
  out.emplace_back("profile_error", format_bits(r.profile_error));
  out.emplace_back("moves_within_weight", r.moves_within_weight ? "true" : "false");
  out.emplace_back("within_error_budget", r.within_error_budget() ? "true" : "false");
  out.emplace_back("bound", format_bits(r.bound));
  out.emplace_back("ratio", r.ratio ? format_bits(*r.ratio) : "null");
  return out;
}

}  // namespace piclab::compression
