#include "piclab/compression/obliviousize.h"

#include <algorithm>
#include <map>
#include <utility>

#include "piclab/compression/lcp.h"
#include "piclab/measures/measures.h"
#include "piclab/model/errors.h"
#include "piclab/model/simulator.h"

namespace piclab::compression {

using info::Rational;
using model::Bits;
using model::PlayerId;
using model::RoundAction;
using model::View;

struct CoordinatorContext {
  model::ProtocolDef original;
  model::Codebooks codebooks;
  int phases = 0;
  int k = 0;
  int width = 1;  // bits per player index
  std::vector<Bits> fallback;
};

namespace {

constexpr PlayerId kCoordinator = 0;

struct Entry {
  char bit = '0';
  PlayerId peer = 0;  // destination in a report, origin in a batch
};

// Bits that arrived for a player in one phase, by original sender.
using Arrivals = std::map<PlayerId, Bits>;

// Where a player of the original protocol stands given the bits it has
// received so far on each incoming link.
struct OriginalState {
  std::vector<Entry> queue;  // every bit it has sent, in order, by destination
  std::optional<Bits> output;
  bool halted = false;
};

Bits encode(PlayerId v, int width) {
  Bits b(static_cast<std::size_t>(width), '0');
  for (int n = 0; n < width; ++n) {
    if ((v >> (width - 1 - n)) & 1) b[static_cast<std::size_t>(n)] = '1';
  }
  return b;
}

PlayerId decode(const Bits& b) { return static_cast<PlayerId>(std::stoi(b, nullptr, 2)); }

OriginalState replay(const CoordinatorContext& c, const View& base,
                     const std::map<PlayerId, Bits>& incoming) {
  const PlayerId me = base.player;
  View v = base;
  v.received.clear();
  OriginalState st;
  std::map<PlayerId, int> seq;
  std::map<PlayerId, std::size_t> used;
  const auto& program = c.original.programs.at(static_cast<std::size_t>(me));
  const int limit = c.original.round_limit();
  for (int round = 1; round <= limit; ++round) {
    RoundAction a = program(v, round);
    for (const auto& [to, content] : a.sends) {
      for (char ch : content) st.queue.push_back({ch, to});
    }
    if (a.output && !st.output) st.output = a.output;
    if (a.halt) {
      st.halted = true;
      return st;
    }
    auto wait = a.wait_for;
    std::sort(wait.begin(), wait.end());
    std::vector<Bits> got;
    for (PlayerId s : wait) {
      auto it = c.codebooks.find({s, me, seq[s]});
      auto in = incoming.find(s);
      const Bits* word = nullptr;
      if (it != c.codebooks.end() && in != incoming.end()) {
        const std::size_t pos = used[s];
        for (const auto& w : it->second) {
          if (pos + w.size() <= in->second.size() && in->second.compare(pos, w.size(), w) == 0) {
            word = &w;
            break;
          }
        }
      }
      if (!word) return st;  // blocked
      got.push_back(*word);
    }
    for (std::size_t n = 0; n < wait.size(); ++n) {
      used[wait[n]] += got[n].size();
      ++seq[wait[n]];
      v.received.push_back({wait[n], got[n], round});
    }
  }
  throw model::NonTermination(c.original.name + ": replay exceeds the local round limit");
}

struct Progress {
  std::vector<std::optional<Entry>> reports;  // one per phase
  OriginalState state;                        // after every arrival
  std::size_t sent = 0;
};

// Reports of a player for phases 1..upto, the report of phase n depending on
// the arrivals of phases before n.
Progress progress(const CoordinatorContext& c, const View& base,
                  const std::vector<Arrivals>& arrivals, int upto) {
  Progress pr;
  std::map<PlayerId, Bits> streams;
  auto absorb = [&](const Arrivals& a) {
    for (const auto& [from, bits] : a) streams[from] += bits;
  };
  for (int phase = 1; phase <= upto; ++phase) {
    auto st = replay(c, base, streams);
    if (st.queue.size() > pr.sent) {
      pr.reports.emplace_back(st.queue[pr.sent]);
      ++pr.sent;
    } else {
      pr.reports.emplace_back(std::nullopt);
    }
    if (static_cast<std::size_t>(phase - 1) < arrivals.size()) {
      absorb(arrivals[static_cast<std::size_t>(phase - 1)]);
    }
  }
  for (std::size_t n = static_cast<std::size_t>(std::max(upto, 0)); n < arrivals.size(); ++n) {
    absorb(arrivals[n]);
  }
  pr.state = replay(c, base, streams);
  return pr;
}

std::optional<Entry> parse_report(const Bits& m, int width) {
  if (m.empty() || m[0] == '0') return std::nullopt;
  return Entry{m.at(1), decode(m.substr(2, static_cast<std::size_t>(width)))};
}

std::vector<Entry> parse_batch(const Bits& m, int width) {
  std::vector<Entry> out;
  std::size_t pos = 0;
  while (pos < m.size() && m[pos] == '1') {
    out.push_back({m.at(pos + 1), decode(m.substr(pos + 2, static_cast<std::size_t>(width)))});
    pos += 2 + static_cast<std::size_t>(width);
  }
  return out;
}

Bits encode_report(const std::optional<Entry>& e, int width) {
  if (!e) return "0";
  return Bits("1") + e->bit + encode(e->peer, width);
}

// Received messages by phase: the coordinator's reports (phase = its read
// round) or another player's batches.
std::vector<std::map<PlayerId, Bits>> by_phase(const View& v) {
  std::vector<std::map<PlayerId, Bits>> out;
  for (const auto& m : v.received) {
    if (static_cast<std::size_t>(m.round) > out.size()) out.resize(static_cast<std::size_t>(m.round));
    out[static_cast<std::size_t>(m.round - 1)][m.sender] = m.content;
  }
  return out;
}

std::vector<Arrivals> coordinator_arrivals(const std::vector<std::map<PlayerId, Bits>>& reports,
                                           int width) {
  std::vector<Arrivals> out;
  for (const auto& phase : reports) {
    Arrivals a;
    for (const auto& [from, content] : phase) {
      auto e = parse_report(content, width);
      if (e && e->peer == kCoordinator) a[from] += e->bit;
    }
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<Arrivals> player_arrivals(const std::vector<std::map<PlayerId, Bits>>& batches,
                                      int width) {
  std::vector<Arrivals> out;
  for (const auto& phase : batches) {
    Arrivals a;
    auto it = phase.find(kCoordinator);
    if (it != phase.end()) {
      for (const auto& e : parse_batch(it->second, width)) a[e.peer] += e.bit;
    }
    out.push_back(std::move(a));
  }
  return out;
}

Bits final_output(const CoordinatorContext& c, const OriginalState& st, PlayerId i) {
  return st.output ? *st.output : c.fallback.at(static_cast<std::size_t>(i));
}

RoundAction coordinator_round(const CoordinatorContext& c, const View& v, int round) {
  auto reports = by_phase(v);
  auto arrivals = coordinator_arrivals(reports, c.width);
  RoundAction a;
  if (round >= 2) {
    const int phase = round - 1;
    auto pr = progress(c, v, arrivals, phase);
    const auto& own = pr.reports.back();
    const auto& now = reports.at(static_cast<std::size_t>(phase - 1));
    for (PlayerId j = 1; j < c.k; ++j) {
      Bits batch;
      if (own && own->peer == j) batch += Bits("1") + own->bit + encode(kCoordinator, c.width);
      for (PlayerId from = 1; from < c.k; ++from) {
        auto e = parse_report(now.at(from), c.width);
        if (e && e->peer == j) batch += Bits("1") + e->bit + encode(from, c.width);
      }
      a.sends[j] = batch + "0";
    }
  }
  if (round <= c.phases) {
    for (PlayerId j = 1; j < c.k; ++j) a.wait_for.push_back(j);
  } else {
    auto pr = progress(c, v, arrivals, c.phases);
    a.output = final_output(c, pr.state, kCoordinator);
    a.halt = true;
  }
  return a;
}

RoundAction player_round(const CoordinatorContext& c, const View& v, int round) {
  auto arrivals = player_arrivals(by_phase(v), c.width);
  RoundAction a;
  if (round <= c.phases) {
    auto pr = progress(c, v, arrivals, round);
    a.sends[kCoordinator] = encode_report(pr.reports.back(), c.width);
    a.wait_for = {kCoordinator};
  } else {
    auto pr = progress(c, v, arrivals, c.phases);
    a.output = final_output(c, pr.state, v.player);
    a.halt = true;
  }
  return a;
}

View final_view(const model::Execution& e, PlayerId i) {
  View v;
  const auto ii = static_cast<std::size_t>(i);
  v.player = i;
  v.input = e.inputs[ii];
  v.private_tape = e.private_tapes[ii];
  v.public_tape = e.public_tape;
  for (std::size_t r = 0; r < e.rounds[ii].size(); ++r) {
    std::vector<std::size_t> read = e.rounds[ii][r].read;
    std::sort(read.begin(), read.end(), [&](std::size_t a, std::size_t b) {
      return e.messages[a].sender < e.messages[b].sender;
    });
    for (auto id : read) {
      v.received.push_back({e.messages[id].sender, e.messages[id].content, static_cast<int>(r + 1)});
    }
  }
  return v;
}

}  // namespace

CoordinatorConversion::CoordinatorConversion(const measures::ProtocolSpace& original,
                                             const measures::InputDistribution& mu,
                                             Rational eps) {
  if (!(eps > Rational(0) && eps < Rational(1))) {
    throw model::ConfigError("conversion error budget must lie in (0, 1)");
  }
  const auto& p = original.protocol();
  if (p.k < 2) throw model::ConfigError("conversion needs at least two players");
  acc_ = measures::acc(original, mu);

  auto ctx = std::make_shared<CoordinatorContext>();
  ctx->original = p;
  ctx->codebooks = original.table().codebooks;
  ctx->k = p.k;
  ctx->width = std::max(1, ceil_log2(static_cast<std::uint64_t>(p.k)));
  Rational ratio = Rational(2) * acc_ / eps;
  ctx->phases = static_cast<int>(std::max<std::int64_t>(1, (ratio.num() + ratio.den() - 1) / ratio.den()));
  for (int i = 0; i < p.k; ++i) {
    const auto ii = static_cast<std::size_t>(i);
    bool has_domain = ii < p.output_domains.size() && !p.output_domains[ii].empty();
    ctx->fallback.push_back(has_domain ? p.output_domains[ii].front() : Bits("0"));
  }
  ctx_ = ctx;

  protocol_.name = p.name + "/coordinator(T=" + std::to_string(ctx->phases) + ")";
  protocol_.k = p.k;
  protocol_.input_domains = p.input_domains;
  protocol_.output_domains = p.output_domains;
  protocol_.private_tape_bits = p.private_tape_bits;
  protocol_.public_tape_bits = p.public_tape_bits;
  protocol_.max_local_rounds = ctx->phases + 1;
  protocol_.programs.push_back(
      [ctx](const View& v, int round) { return coordinator_round(*ctx, v, round); });
  for (int i = 1; i < p.k; ++i) {
    protocol_.programs.push_back(
        [ctx](const View& v, int round) { return player_round(*ctx, v, round); });
  }
}

int CoordinatorConversion::phases() const { return ctx_->phases; }

bool CoordinatorConversion::completed(const model::Execution& e) const {
  const auto& c = *ctx_;
  for (PlayerId i = 0; i < c.k; ++i) {
    View v = final_view(e, i);
    auto phases = by_phase(v);
    auto arrivals =
        i == kCoordinator ? coordinator_arrivals(phases, c.width) : player_arrivals(phases, c.width);
    auto pr = progress(c, v, arrivals, c.phases);
    if (pr.sent != pr.state.queue.size()) return false;
    if (!pr.state.halted && !pr.state.output) return false;
  }
  return true;
}

ConversionCheck check_conversion(const CoordinatorConversion& conv,
                                 const measures::ProtocolSpace& original,
                                 const measures::ProtocolSpace& converted,
                                 const measures::InputDistribution& mu,
                                 const std::optional<model::FunctionFamily>& f) {
  const auto& t0 = original.table();
  const auto& t1 = converted.table();
  if (t0.input_rows != t1.input_rows || t0.tapes != t1.tapes ||
      mu.weights().size() != t0.input_rows) {
    throw model::ConfigError("converted protocol does not share the original's domains");
  }
  ConversionCheck out;
  out.phases = conv.phases();
  out.original_acc = conv.original_acc();
  out.oblivious = model::is_oblivious(converted.protocol(), t1).oblivious;
  out.long_run_mass = Rational(0);
  out.truncated_mass = Rational(0);
  Rational err0(0), err1(0);
  const auto& p = original.protocol();
  for (std::size_t row = 0; row < t0.input_rows; ++row) {
    const auto& w = mu.weights()[row];
    auto x = model::input_tuple(p, row);
    std::vector<Bits> wanted;
    if (f) {
      for (int i = 0; i < p.k; ++i) wanted.push_back((*f)(i, x));
    }
    for (std::uint64_t t = 0; t < t0.tapes; ++t) {
      const auto& e0 = t0.at(row, t);
      const auto& e1 = t1.at(row, t);

      std::map<int, std::size_t> phase_bits;
      for (const auto& m : e1.messages) {
        int phase = m.sender == kCoordinator ? m.send_round - 1 : m.send_round;
        phase_bits[phase] += m.content.size();
      }
      for (const auto& [phase, bits] : phase_bits) out.max_phase_bits = std::max(out.max_phase_bits, bits);

      if (w.is_zero()) continue;
      const Rational mass = w / Rational(static_cast<std::int64_t>(t0.tapes));
      if (e0.total_bits >= static_cast<std::size_t>(out.phases)) out.long_run_mass += mass;
      if (conv.completed(e1)) {
        if (e1.outputs != e0.outputs) out.agree_when_completed = false;
      } else {
        out.truncated_mass += mass;
      }
      if (f) {
        if (e0.outputs != wanted) err0 += mass;
        if (e1.outputs != wanted) err1 += mass;
      }
    }
  }
  if (f) {
    out.error_original = err0;
    out.error_converted = err1;
  }
  return out;
}

}  // namespace piclab::compression
