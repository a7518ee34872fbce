#include "piclab/model/simulator.h"

#include <algorithm>
#include <deque>
#include <tuple>

#include "action_checks.h"
#include "piclab/model/errors.h"

namespace piclab::model {

namespace {

enum class Status { kReady, kWaiting, kHalted };

struct PlayerState {
  View view;
  int round = 0;
  Status status = Status::kReady;
  std::vector<PlayerId> waiting_on;
  std::optional<Bits> output;
};

void check_run_inputs(const ProtocolDef& p, std::span<const Bits> x,
                      std::span<const Bits> private_tapes, const Bits& public_tape) {
  auto k = static_cast<std::size_t>(p.k);
  input_row(p, x);
  if (private_tapes.size() != k) throw ConfigError("one private tape per player required");
  for (std::size_t i = 0; i < k; ++i) {
    if (private_tapes[i].size() != static_cast<std::size_t>(p.private_tape_bits[i])) {
      throw ConfigError("private tape of player " + std::to_string(i) + " has wrong length");
    }
  }
  if (public_tape.size() != static_cast<std::size_t>(p.public_tape_bits)) {
    throw ConfigError("public tape has wrong length");
  }
}

}  // namespace

Execution run(const ProtocolDef& p, std::span<const Bits> x,
              std::span<const Bits> private_tapes, const Bits& public_tape) {
  p.validate();
  if (p.mode != Mode::kRestricted) {
    throw ModelViolation(p.name +
                         ": wait sets of a relaxed protocol are not determined by the view; "
                         "use run_relaxed");
  }
  check_run_inputs(p, x, private_tapes, public_tape);

  const int k = p.k;
  const auto ks = static_cast<std::size_t>(k);
  const int limit = p.round_limit();

  Execution e;
  e.inputs.assign(x.begin(), x.end());
  e.private_tapes.assign(private_tapes.begin(), private_tapes.end());
  e.public_tape = public_tape;
  e.rounds.assign(ks, {});

  std::vector<PlayerState> players(ks);
  for (std::size_t i = 0; i < ks; ++i) {
    players[i].view.player = static_cast<PlayerId>(i);
    players[i].view.input = x[i];
    players[i].view.private_tape = private_tapes[i];
    players[i].view.public_tape = public_tape;
  }
  std::vector<std::deque<std::size_t>> links(ks * ks);
  std::vector<int> link_count(ks * ks, 0);
  auto link = [&](PlayerId s, PlayerId r) -> std::size_t {
    return static_cast<std::size_t>(s) * ks + static_cast<std::size_t>(r);
  };

  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t i = 0; i < ks; ++i) {
      auto& st = players[i];
      const auto me = static_cast<PlayerId>(i);
      if (st.status == Status::kHalted) continue;
      if (st.status == Status::kWaiting) {
        bool ready = std::all_of(st.waiting_on.begin(), st.waiting_on.end(),
                                 [&](PlayerId s) { return !links[link(s, me)].empty(); });
        if (!ready) continue;
        for (PlayerId s : st.waiting_on) {
          auto id = links[link(s, me)].front();
          links[link(s, me)].pop_front();
          auto& msg = e.messages[id];
          msg.read_round = st.round;
          e.rounds[i].back().read.push_back(id);
          st.view.received.push_back({s, msg.content, st.round});
        }
        st.status = Status::kReady;
        progress = true;
      }

      ++st.round;
      if (st.round > limit) {
        throw NonTermination(p.name + ": " + detail::who(me, st.round) +
                             " exceeds the local round limit " + std::to_string(limit));
      }
      RoundAction action = p.programs[i](st.view, st.round);
      detail::check_sends(action.sends, me, k, st.round);
      detail::check_output(p, action.output, st.output, me, st.round);
      auto wait = detail::normalized_wait(std::move(action.wait_for), me, k, st.round);
      if (action.halt && !wait.empty()) {
        throw ModelViolation(detail::who(me, st.round) + " halts while waiting for messages");
      }
      if (action.output) st.output = action.output;

      RoundRecord rec;
      rec.wait_set = wait;
      rec.halt = action.halt;
      for (auto& [q, content] : action.sends) {
        rec.send_set.push_back(q);
        MessageRecord m;
        m.sender = me;
        m.receiver = q;
        m.content = std::move(content);
        m.send_round = st.round;
        m.link_seq = link_count[link(me, q)]++;
        rec.sent.push_back(e.messages.size());
        links[link(me, q)].push_back(e.messages.size());
        e.messages.push_back(std::move(m));
      }
      e.rounds[i].push_back(std::move(rec));

      if (action.halt) {
        st.status = Status::kHalted;
      } else if (!wait.empty()) {
        st.status = Status::kWaiting;
        st.waiting_on = std::move(wait);
      }
      progress = true;
    }
  }

  // Quiescence. A player still blocked after writing its output is idle: it
  // would only have reacted to traffic that never came.
  e.outputs.assign(ks, Bits());
  for (std::size_t i = 0; i < ks; ++i) {
    const auto& st = players[i];
    if (!st.output) {
      if (st.status == Status::kWaiting) {
        throw Deadlock(p.name + ": " + detail::who(static_cast<PlayerId>(i), st.round) +
                       " waits forever without having written an output");
      }
      throw ModelViolation(p.name + ": player " + std::to_string(i) +
                           " stopped without writing an output");
    }
    e.outputs[i] = *st.output;
  }
  for (const auto& q : links) {
    if (!q.empty()) {
      const auto& m = e.messages[q.front()];
      throw ModelViolation(p.name + ": message from " + std::to_string(m.sender) + " to " +
                           std::to_string(m.receiver) + " is still in transit at the end");
    }
  }

  derive_transcripts(e, k);
  assign_lots(e, k);
  return e;
}

std::vector<std::size_t> assign_lots(Execution& e, int k) {
  const auto ks = static_cast<std::size_t>(k);
  for (auto& m : e.messages) m.lot = 0;
  std::size_t assigned = 0;
  int lot = 0;
  while (assigned < e.messages.size()) {
    ++lot;
    bool any = false;
    for (std::size_t i = 0; i < ks && i < e.rounds.size(); ++i) {
      for (const auto& round : e.rounds[i]) {
        if (!round.sent.empty() && e.messages[round.sent.front()].lot == 0) {
          for (auto id : round.sent) e.messages[id].lot = lot;
          assigned += round.sent.size();
          any = true;
          break;
        }
        bool stuck = std::any_of(round.read.begin(), round.read.end(), [&](std::size_t id) {
          int l = e.messages[id].lot;
          return l == 0 || l >= lot;
        });
        if (stuck) break;
      }
    }
    if (!any) {
      throw ModelViolation("messages cannot be ordered into lots: causality cycle");
    }
  }

  std::vector<std::size_t> order(e.messages.size());
  for (std::size_t id = 0; id < order.size(); ++id) order[id] = id;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ma = e.messages[a];
    const auto& mb = e.messages[b];
    return std::tie(ma.lot, ma.sender, ma.receiver) < std::tie(mb.lot, mb.sender, mb.receiver);
  });
  for (std::size_t n = 1; n < order.size(); ++n) {
    const auto& a = e.messages[order[n - 1]];
    const auto& b = e.messages[order[n]];
    if (a.lot == b.lot && a.sender == b.sender && a.receiver == b.receiver) {
      throw ModelViolation("two messages on one link share a lot");
    }
  }
  e.global_order = order;
  e.lot_count = lot;
  return order;
}

std::uint64_t tape_count(const ProtocolDef& p) {
  int bits = p.total_tape_bits();
  if (bits >= 63) return ~std::uint64_t{0};
  return std::uint64_t{1} << bits;
}

TapeAssignment tape_assignment(const ProtocolDef& p, std::uint64_t t) {
  const int total = p.total_tape_bits();
  Bits all(static_cast<std::size_t>(total), '0');
  for (int b = 0; b < total; ++b) {
    if ((t >> (total - 1 - b)) & 1u) all[static_cast<std::size_t>(b)] = '1';
  }
  TapeAssignment a;
  std::size_t pos = 0;
  a.public_tape = all.substr(0, static_cast<std::size_t>(p.public_tape_bits));
  pos += static_cast<std::size_t>(p.public_tape_bits);
  for (int len : p.private_tape_bits) {
    a.private_tapes.push_back(all.substr(pos, static_cast<std::size_t>(len)));
    pos += static_cast<std::size_t>(len);
  }
  return a;
}

ExecutionTable run_all(const ProtocolDef& p, std::uint64_t budget) {
  p.validate();
  ExecutionTable table;
  table.input_rows = input_space_size(p);
  table.tapes = tape_count(p);
  unsigned __int128 required =
      static_cast<unsigned __int128>(table.input_rows) * table.tapes;
  if (p.total_tape_bits() >= 63 || required > budget) {
    std::uint64_t shown = required > ~std::uint64_t{0} || p.total_tape_bits() >= 63
                              ? ~std::uint64_t{0}
                              : static_cast<std::uint64_t>(required);
    throw BudgetExceeded(shown, budget);
  }
  table.runs.reserve(static_cast<std::size_t>(required));
  for (std::size_t row = 0; row < table.input_rows; ++row) {
    auto x = input_tuple(p, row);
    for (std::uint64_t t = 0; t < table.tapes; ++t) {
      auto tapes = tape_assignment(p, t);
      table.runs.push_back(run(p, x, tapes.private_tapes, tapes.public_tape));
      for (const auto& m : table.runs.back().messages) {
        table.codebooks[{m.sender, m.receiver, m.link_seq}].insert(m.content);
      }
    }
  }
  for (const auto& [pos, words] : table.codebooks) {
    // In lexicographic order a prefix sorts immediately before some word it
    // prefixes, so adjacent pairs suffice.
    const Bits* prev = nullptr;
    for (const auto& w : words) {
      if (prev && w.compare(0, prev->size(), *prev) == 0) {
        throw SelfDelimitingViolation(
            p.name + ": messages '" + *prev + "' and '" + w + "' on link " +
            std::to_string(pos.sender) + "->" + std::to_string(pos.receiver) + " position " +
            std::to_string(pos.seq) + " are not prefix-free");
      }
      prev = &w;
    }
  }
  return table;
}

ObliviousResult is_oblivious(const ProtocolDef& p, const ExecutionTable& table) {
  using Pattern = std::vector<std::vector<std::tuple<std::vector<PlayerId>, std::vector<PlayerId>, bool>>>;
  auto pattern = [](const Execution& e) {
    Pattern out;
    for (const auto& rounds : e.rounds) {
      auto& row = out.emplace_back();
      for (const auto& r : rounds) row.emplace_back(r.send_set, r.wait_set, r.halt);
    }
    return out;
  };
  ObliviousResult res;
  if (table.runs.empty()) return res;
  auto base = pattern(table.runs.front());
  for (std::size_t n = 1; n < table.runs.size(); ++n) {
    auto other = pattern(table.runs[n]);
    if (other == base) continue;
    res.oblivious = false;
    res.witness = std::make_pair(std::size_t{0}, n);
    for (std::size_t i = 0; i < base.size(); ++i) {
      if (base[i] != other[i]) {
        res.detail = p.name + ": player " + std::to_string(i) +
                     " follows different send/wait sets in executions 0 and " +
                     std::to_string(n);
        break;
      }
    }
    return res;
  }
  return res;
}

ObliviousResult is_oblivious(const ProtocolDef& p, std::uint64_t budget) {
  return is_oblivious(p, run_all(p, budget));
}

std::vector<ReceivedMessage> replay_transcript(const ProtocolDef& p, const Codebooks& codebooks,
                                               PlayerId i, const Bits& input,
                                               const Bits& private_tape,
                                               const Bits& public_tape, const Bits& received) {
  View v;
  v.player = i;
  v.input = input;
  v.private_tape = private_tape;
  v.public_tape = public_tape;
  std::map<PlayerId, int> seq;
  std::size_t pos = 0;
  const int limit = p.round_limit();
  const auto& program = p.programs.at(static_cast<std::size_t>(i));
  for (int round = 1;; ++round) {
    if (round > limit) throw NonTermination("replay exceeds the local round limit");
    RoundAction a = program(v, round);
    if (a.halt) break;
    auto wait = a.wait_for;
    std::sort(wait.begin(), wait.end());
    if (wait.empty()) continue;
    if (pos == received.size()) break;  // idle until the end
    for (PlayerId s : wait) {
      auto it = codebooks.find({s, i, seq[s]});
      if (it == codebooks.end()) {
        throw ModelViolation("no message ever occupies link position " + std::to_string(s) +
                             "->" + std::to_string(i) + " #" + std::to_string(seq[s]));
      }
      const Bits* match = nullptr;
      for (const auto& w : it->second) {
        if (received.compare(pos, w.size(), w) == 0 && pos + w.size() <= received.size()) {
          if (match) throw ModelViolation("transcript is not uniquely decodable");
          match = &w;
        }
      }
      if (!match) throw ModelViolation("transcript does not parse at bit " + std::to_string(pos));
      v.received.push_back({s, *match, round});
      pos += match->size();
      ++seq[s];
    }
  }
  if (pos != received.size()) throw ModelViolation("transcript has unparsed trailing bits");
  return v.received;
}

}  // namespace piclab::model
