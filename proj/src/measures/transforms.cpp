#include "piclab/measures/transforms.h"

#include <memory>

#include "piclab/info/entropy.h"
#include "piclab/measures/space.h"
#include "piclab/model/errors.h"

namespace piclab::measures {

using model::ConfigError;
using model::PlayerId;
using model::ReceivedMessage;
using model::RoundAction;
using model::View;

namespace {

// positions[t] lists the slots of tape t (0 = public, 1 + i = player i) in
// the interleaved public tape.
std::vector<std::vector<std::size_t>> interleave_layout(const ProtocolDef& p) {
  std::vector<int> len{p.public_tape_bits};
  len.insert(len.end(), p.private_tape_bits.begin(), p.private_tape_bits.end());
  std::vector<std::vector<std::size_t>> positions(len.size());
  std::size_t slot = 0;
  for (int r = 0;; ++r) {
    bool any = false;
    for (std::size_t t = 0; t < len.size(); ++t) {
      if (r < len[t]) {
        positions[t].push_back(slot++);
        any = true;
      }
    }
    if (!any) break;
  }
  return positions;
}

Bits gather(const Bits& tape, const std::vector<std::size_t>& slots) {
  Bits out;
  for (auto s : slots) out += tape[s];
  return out;
}

std::vector<ReceivedMessage> rounds_in(const std::vector<ReceivedMessage>& all, int from,
                                       int to, int shift) {
  std::vector<ReceivedMessage> out;
  for (const auto& m : all) {
    if (m.round >= from && m.round <= to) {
      out.push_back(m);
      out.back().round -= shift;
    }
  }
  return out;
}

}  // namespace

ProtocolDef publicize(const ProtocolDef& p) {
  p.validate();
  if (p.total_private_bits() == 0) return p;
  auto layout = std::make_shared<const std::vector<std::vector<std::size_t>>>(interleave_layout(p));
  ProtocolDef out = p;
  out.name = p.name + "/public";
  out.public_tape_bits = p.total_tape_bits();
  out.private_tape_bits.assign(static_cast<std::size_t>(p.k), 0);
  out.programs.clear();
  for (int i = 0; i < p.k; ++i) {
    auto inner = p.programs[static_cast<std::size_t>(i)];
    out.programs.push_back([inner, layout, i](const View& v, int round) {
      View orig = v;
      orig.public_tape = gather(v.public_tape, (*layout)[0]);
      orig.private_tape = gather(v.public_tape, (*layout)[static_cast<std::size_t>(i) + 1]);
      return inner(orig, round);
    });
  }
  return out;
}

Bits interleave_tapes(const ProtocolDef& p, const std::vector<Bits>& private_tapes,
                      const Bits& public_tape) {
  auto layout = interleave_layout(p);
  Bits out(static_cast<std::size_t>(p.total_tape_bits()), '0');
  for (std::size_t t = 0; t < layout.size(); ++t) {
    const Bits& src = t == 0 ? public_tape : private_tapes.at(t - 1);
    if (src.size() != layout[t].size()) throw ConfigError("tape has the wrong length");
    for (std::size_t n = 0; n < src.size(); ++n) out[layout[t][n]] = src[n];
  }
  return out;
}

Derandomized derandomize_zero_error(const ProtocolDef& p, const InputDistribution& mu,
                                    const std::optional<model::FunctionFamily>& f,
                                    std::uint64_t budget) {
  if (p.total_private_bits() != 0) {
    throw ConfigError(p.name + " has private tapes; publicize it first");
  }
  if (p.public_tape_bits == 0) return {p, "", {}};

  ProtocolSpace space(p, budget);
  const auto& table = space.table();
  const int k = p.k;
  for (std::size_t row = 0; row < table.input_rows; ++row) {
    if (mu.weights().at(row).is_zero()) continue;
    const auto& base = table.at(row, 0);
    for (std::uint64_t t = 0; t < table.tapes; ++t) {
      const auto& e = table.at(row, t);
      for (int i = 0; i < k; ++i) {
        const auto& got = e.outputs[static_cast<std::size_t>(i)];
        Bits want = f ? (*f)(i, e.inputs) : base.outputs[static_cast<std::size_t>(i)];
        if (got != want) {
          throw ConfigError(p.name + " is not zero-error on the support of the input law");
        }
      }
    }
  }

  Derandomized out;
  std::size_t best = 0;
  for (std::uint64_t t = 0; t < table.tapes; ++t) {
    std::vector<std::string> vars;
    for (int i = 0; i < k; ++i) vars.push_back(input_var(i));
    for (int i = 0; i < k; ++i) vars.push_back(received_var(i));
    std::vector<std::map<Bits, info::Value>> intern(vars.size());
    std::vector<info::Outcome> outcomes;
    for (std::size_t row = 0; row < table.input_rows; ++row) {
      const Rational& w = mu.weights()[row];
      if (w.is_zero()) continue;
      const auto& e = table.at(row, t);
      info::Outcome o;
      o.weight = w;
      std::size_t c = 0;
      for (const auto& s : e.inputs) {
        o.values.push_back(intern[c].emplace(s, intern[c].size()).first->second);
        ++c;
      }
      for (const auto& s : e.received) {
        o.values.push_back(intern[c].emplace(s, intern[c].size()).first->second);
        ++c;
      }
      outcomes.push_back(std::move(o));
    }
    info::JointDistribution d(vars, std::move(outcomes));
    double value = 0.0;
    for (int i = 0; i < k; ++i) {
      std::vector<std::string> others;
      for (int j = 0; j < k; ++j) {
        if (j != i) others.push_back(input_var(j));
      }
      value += info::mutual_info(d, info::Selector(others), info::Selector{received_var(i)},
                                 info::Selector{input_var(i)});
    }
    out.t_values.push_back(value);
    if (value < out.t_values[best] - 1e-12) best = static_cast<std::size_t>(t);
  }

  out.seed = table.at(0, best).public_tape;
  out.protocol = p;
  out.protocol.name = p.name + "/seed=" + out.seed;
  out.protocol.public_tape_bits = 0;
  out.protocol.programs.clear();
  for (int i = 0; i < k; ++i) {
    auto inner = p.programs[static_cast<std::size_t>(i)];
    Bits seed = out.seed;
    out.protocol.programs.push_back([inner, seed](const View& v, int round) {
      View fixed = v;
      fixed.public_tape = seed;
      return inner(fixed, round);
    });
  }
  return out;
}

ProtocolDef product_protocol(const ProtocolDef& p, const ProtocolDef& q) {
  p.validate();
  q.validate();
  if (p.k != q.k) throw ConfigError("product of protocols with different player counts");
  if (p.mode != model::Mode::kRestricted || q.mode != model::Mode::kRestricted) {
    throw ConfigError("product needs restricted-mode protocols");
  }
  const int k = p.k;
  ProtocolDef out;
  out.name = p.name + "*" + q.name;
  out.k = k;
  out.public_tape_bits = p.public_tape_bits + q.public_tape_bits;
  out.max_local_rounds = p.round_limit() + q.round_limit();
  for (int i = 0; i < k; ++i) {
    auto ui = static_cast<std::size_t>(i);
    if (fixed_input_length(p, i) < 0 || fixed_input_length(q, i) < 0) {
      throw ConfigError("product needs fixed-length input domains");
    }
    std::vector<Bits> dom;
    for (const auto& a : p.input_domains[ui]) {
      for (const auto& b : q.input_domains[ui]) dom.push_back(a + b);
    }
    out.input_domains.push_back(std::move(dom));
    out.private_tape_bits.push_back(p.private_tape_bits[ui] + q.private_tape_bits[ui]);
  }
  if (!p.output_domains.empty() && !q.output_domains.empty()) {
    for (int i = 0; i < k; ++i) {
      auto ui = static_cast<std::size_t>(i);
      std::vector<Bits> dom;
      for (const auto& a : p.output_domains[ui]) {
        for (const auto& b : q.output_domains[ui]) dom.push_back(a + b);
      }
      out.output_domains.push_back(std::move(dom));
    }
  }

  for (int i = 0; i < k; ++i) {
    auto ui = static_cast<std::size_t>(i);
    auto prog_p = p.programs[ui];
    auto prog_q = q.programs[ui];
    auto in_len = static_cast<std::size_t>(fixed_input_length(p, i));
    auto priv_len = static_cast<std::size_t>(p.private_tape_bits[ui]);
    auto pub_len = static_cast<std::size_t>(p.public_tape_bits);
    int p_limit = p.round_limit();

    out.programs.push_back([=](const View& v, int round) -> RoundAction {
      View vp{v.player, v.input.substr(0, in_len), v.private_tape.substr(0, priv_len),
              v.public_tape.substr(0, pub_len), {}};
      std::optional<Bits> out_p;
      int halted_at = 0;
      for (int j = 1; j <= p_limit; ++j) {
        vp.received = rounds_in(v.received, 1, j - 1, 0);
        RoundAction a = prog_p(vp, j);
        if (j == round) {
          a.output.reset();
          a.halt = false;
          return a;
        }
        if (a.output) out_p = a.output;
        if (a.halt) {
          halted_at = j;
          break;
        }
      }
      if (halted_at == 0) throw model::NonTermination("first protocol of a product did not halt");
      View vq{v.player, v.input.substr(in_len), v.private_tape.substr(priv_len),
              v.public_tape.substr(pub_len), rounds_in(v.received, halted_at + 1, round, halted_at)};
      RoundAction a = prog_q(vq, round - halted_at);
      if (a.output) {
        if (!out_p) throw model::ModelViolation("first protocol of a product wrote no output");
        a.output = *out_p + *a.output;
      }
      return a;
    });
  }
  return out;
}

model::FunctionFamily product_function(const ProtocolDef& p, const model::FunctionFamily& f,
                                       const model::FunctionFamily& g) {
  std::vector<std::size_t> split;
  for (int i = 0; i < p.k; ++i) {
    int len = fixed_input_length(p, i);
    if (len < 0) throw ConfigError("product needs fixed-length input domains");
    split.push_back(static_cast<std::size_t>(len));
  }
  return [split, f, g](PlayerId i, std::span<const Bits> x) -> Bits {
    std::vector<Bits> a, b;
    for (std::size_t j = 0; j < x.size(); ++j) {
      a.push_back(x[j].substr(0, split[j]));
      b.push_back(x[j].substr(split[j]));
    }
    return f(i, a) + g(i, b);
  };
}

ProtocolDef pad_players(const ProtocolDef& p, int k) {
  if (k < p.k) throw ConfigError("cannot pad to fewer players");
  ProtocolDef out = p;
  out.name = p.name + "+" + std::to_string(k - p.k) + "idle";
  for (int i = p.k; i < k; ++i) {
    out.input_domains.push_back({""});
    if (!out.output_domains.empty()) out.output_domains.push_back({"0"});
    out.private_tape_bits.push_back(0);
    out.programs.push_back([](const View&, int) {
      RoundAction a;
      a.output = "0";
      a.halt = true;
      return a;
    });
  }
  out.k = k;
  return out;
}

}  // namespace piclab::measures
