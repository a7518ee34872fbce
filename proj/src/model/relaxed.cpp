#include "piclab/model/relaxed.h"

#include <algorithm>
#include <deque>
#include <random>

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
  int waiting_any = 0;
  std::optional<Bits> output;
  std::deque<std::size_t> inbox;  // delivered, unread, in delivery order
};

}  // namespace

Execution run_relaxed(const ProtocolDef& p, std::span<const Bits> x,
                      std::span<const Bits> private_tapes, const Bits& public_tape,
                      const Schedule& schedule) {
  p.validate();
  if (p.mode != Mode::kRelaxed) throw ConfigError(p.name + " is not a relaxed-mode protocol");
  input_row(p, x);
  const int k = p.k;
  const auto ks = static_cast<std::size_t>(k);
  if (private_tapes.size() != ks) throw ConfigError("one private tape per player required");
  const int limit = p.round_limit();
  std::mt19937_64 rng(schedule.seed);

  Execution e;
  e.inputs.assign(x.begin(), x.end());
  e.private_tapes.assign(private_tapes.begin(), private_tapes.end());
  e.public_tape = public_tape;
  e.rounds.assign(ks, {});

  std::vector<PlayerState> players(ks);
  for (std::size_t i = 0; i < ks; ++i) {
    players[i].view = {static_cast<PlayerId>(i), x[i], private_tapes[i], public_tape, {}};
  }
  std::vector<std::deque<std::size_t>> in_transit(ks * ks);
  std::vector<int> link_count(ks * ks, 0);
  auto link = [&](PlayerId s, PlayerId r) {
    return static_cast<std::size_t>(s) * ks + static_cast<std::size_t>(r);
  };

  auto read = [&](PlayerState& st, std::size_t i, std::size_t id) {
    auto& msg = e.messages[id];
    msg.read_round = st.round;
    e.rounds[i].back().read.push_back(id);
    st.view.received.push_back({msg.sender, msg.content, st.round});
    st.inbox.erase(std::find(st.inbox.begin(), st.inbox.end(), id));
  };

  for (;;) {
    bool progress = false;
    for (std::size_t i = 0; i < ks; ++i) {
      auto& st = players[i];
      const auto me = static_cast<PlayerId>(i);
      if (st.status == Status::kHalted) continue;
      if (st.status == Status::kWaiting) {
        auto from = [&](PlayerId s) {
          return std::find_if(st.inbox.begin(), st.inbox.end(),
                              [&](std::size_t id) { return e.messages[id].sender == s; });
        };
        bool named_ready = std::all_of(st.waiting_on.begin(), st.waiting_on.end(),
                                       [&](PlayerId s) { return from(s) != st.inbox.end(); });
        if (!named_ready) continue;
        if (static_cast<int>(st.inbox.size()) <
            static_cast<int>(st.waiting_on.size()) + st.waiting_any) {
          continue;
        }
        for (PlayerId s : st.waiting_on) read(st, i, *from(s));
        for (int n = 0; n < st.waiting_any; ++n) read(st, i, st.inbox.front());
        st.status = Status::kReady;
      }

      ++st.round;
      if (st.round > limit) {
        throw NonTermination(p.name + ": " + detail::who(me, st.round) +
                             " exceeds the local round limit");
      }
      RelaxedAction a = p.relaxed_programs[i](st.view, st.round);
      detail::check_sends(a.sends, me, k, st.round);
      detail::check_output(p, a.output, st.output, me, st.round);
      auto wait = detail::normalized_wait(std::move(a.wait_for), me, k, st.round);
      if (a.wait_any < 0) throw ModelViolation(detail::who(me, st.round) + " waits for a negative count");
      bool waits = !wait.empty() || a.wait_any > 0;
      if (a.halt && waits) {
        throw ModelViolation(detail::who(me, st.round) + " halts while waiting for messages");
      }
      if (a.output) st.output = a.output;

      RoundRecord rec;
      rec.wait_set = wait;
      rec.wait_any = a.wait_any;
      rec.halt = a.halt;
      for (auto& [q, content] : a.sends) {
        rec.send_set.push_back(q);
        MessageRecord m{me, q, std::move(content), st.round, 0, link_count[link(me, q)]++, 0};
        rec.sent.push_back(e.messages.size());
        in_transit[link(me, q)].push_back(e.messages.size());
        e.messages.push_back(std::move(m));
      }
      e.rounds[i].push_back(std::move(rec));
      if (a.halt) {
        st.status = Status::kHalted;
      } else if (waits) {
        st.status = Status::kWaiting;
        st.waiting_on = std::move(wait);
        st.waiting_any = a.wait_any;
      }
      progress = true;
    }
    if (progress) continue;

    std::vector<std::size_t> heads;
    for (const auto& q : in_transit) {
      if (!q.empty()) heads.push_back(q.front());
    }
    if (heads.empty()) break;
    std::sort(heads.begin(), heads.end());
    std::size_t pick = 0;
    switch (schedule.policy) {
      case DeliveryPolicy::kFifo:
        pick = heads.front();
        break;
      case DeliveryPolicy::kLifo:
        pick = heads.back();
        break;
      case DeliveryPolicy::kRandom:
        pick = heads[std::uniform_int_distribution<std::size_t>(0, heads.size() - 1)(rng)];
        break;
    }
    const auto& m = e.messages[pick];
    in_transit[link(m.sender, m.receiver)].pop_front();
    players[static_cast<std::size_t>(m.receiver)].inbox.push_back(pick);
  }

  e.outputs.assign(ks, Bits());
  for (std::size_t i = 0; i < ks; ++i) {
    const auto& st = players[i];
    if (!st.output) {
      throw Deadlock(p.name + ": player " + std::to_string(i) + " never writes an output");
    }
    if (!st.inbox.empty()) {
      throw ModelViolation(p.name + ": player " + std::to_string(i) + " leaves messages unread");
    }
    e.outputs[i] = *st.output;
  }
  derive_transcripts(e, k);
  return e;
}

}  // namespace piclab::model
