#include "piclab/zoo/zoo.h"

#include <algorithm>
#include <stdexcept>

#include "piclab/model/errors.h"

namespace piclab::zoo {

using model::ConfigError;
using model::RelaxedAction;
using model::RoundAction;
using model::View;

namespace {

std::vector<Bits> all_strings(int width) {
  std::vector<Bits> out;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << width); ++v) out.push_back(to_bits(v, width));
  return out;
}

int bits_for(int values) {
  int w = 1;
  while ((1 << w) < values) ++w;
  return w;
}

RoundAction output_and_wait(Bits out, std::vector<PlayerId> wait) {
  RoundAction a;
  a.output = std::move(out);
  a.wait_for = std::move(wait);
  return a;
}

RoundAction halt_with(std::map<PlayerId, Bits> sends, std::optional<Bits> out = std::nullopt) {
  RoundAction a;
  a.sends = std::move(sends);
  a.output = std::move(out);
  a.halt = true;
  return a;
}

}  // namespace

Bits to_bits(std::uint64_t v, int width) {
  Bits b(static_cast<std::size_t>(width), '0');
  for (int n = 0; n < width; ++n) {
    if ((v >> (width - 1 - n)) & 1u) b[static_cast<std::size_t>(n)] = '1';
  }
  return b;
}

Bits xor_bits(const Bits& a, const Bits& b) {
  if (a.size() != b.size()) throw std::invalid_argument("xor of bit strings of unequal length");
  Bits out(a.size(), '0');
  for (std::size_t n = 0; n < a.size(); ++n) out[n] = a[n] == b[n] ? '0' : '1';
  return out;
}

model::FunctionFamily parity_family(PlayerId outputter) {
  return [outputter](PlayerId i, std::span<const Bits> x) -> Bits {
    if (i != outputter) return "0";
    Bits acc(x.front().size(), '0');
    for (const auto& xi : x) acc = xor_bits(acc, xi);
    return acc;
  };
}

ZooEntry ring_parity(int k, int n) {
  if (k < 3) throw ConfigError("ring-parity needs k >= 3");
  if (n < 1) throw ConfigError("ring-parity needs n >= 1");
  ZooEntry e;
  e.name = "ring-parity";
  e.parameters = {{"k", k}, {"n", n}};
  auto& p = e.protocol;
  p.name = "ring-parity(k=" + std::to_string(k) + ",n=" + std::to_string(n) + ")";
  p.k = k;
  p.input_domains.assign(static_cast<std::size_t>(k), all_strings(n));
  p.output_domains.assign(static_cast<std::size_t>(k), {"0"});
  p.output_domains[0] = all_strings(n);
  p.private_tape_bits.assign(static_cast<std::size_t>(k), 0);
  p.private_tape_bits[0] = n;

  p.programs.push_back([k](const View& v, int round) -> RoundAction {
    if (round == 1) {
      RoundAction a;
      a.sends[1] = xor_bits(v.input, v.private_tape);
      a.wait_for = {k - 1};
      return a;
    }
    return halt_with({}, xor_bits(v.received.at(0).content, v.private_tape));
  });
  for (int i = 1; i < k; ++i) {
    p.programs.push_back([k, i](const View& v, int round) -> RoundAction {
      if (round == 1) return output_and_wait("0", {i - 1});
      return halt_with({{(i + 1) % k, xor_bits(v.received.at(0).content, v.input)}});
    });
  }
  e.function = parity_family(0);
  e.notes = "private; ic = n, pic = k*n, transcript entropy n under uniform inputs";
  return e;
}

ZooEntry star_parity(int k, int n) {
  if (k < 2) throw ConfigError("star-parity needs k >= 2");
  if (n < 1) throw ConfigError("star-parity needs n >= 1");
  ZooEntry e;
  e.name = "star-parity";
  e.parameters = {{"k", k}, {"n", n}};
  auto& p = e.protocol;
  p.name = "star-parity(k=" + std::to_string(k) + ",n=" + std::to_string(n) + ")";
  p.k = k;
  p.input_domains.assign(static_cast<std::size_t>(k), all_strings(n));
  p.output_domains.assign(static_cast<std::size_t>(k), {"0"});
  p.output_domains[0] = all_strings(n);
  p.private_tape_bits.assign(static_cast<std::size_t>(k), 0);

  p.programs.push_back([k](const View& v, int round) -> RoundAction {
    if (round == 1) {
      RoundAction a;
      for (int j = 1; j < k; ++j) a.wait_for.push_back(j);
      return a;
    }
    Bits acc = v.input;
    for (const auto& m : v.received) acc = xor_bits(acc, m.content);
    return halt_with({}, acc);
  });
  for (int i = 1; i < k; ++i) {
    p.programs.push_back([](const View& v, int) -> RoundAction {
      return halt_with({{0, v.input}}, "0");
    });
  }
  e.function = parity_family(0);
  e.notes = "deterministic; pic = ic = spy = n*(k-1) under uniform inputs";
  return e;
}

ZooEntry and_opt() {
  ZooEntry e;
  e.name = "and-opt";
  auto& p = e.protocol;
  p.name = "and-opt";
  p.k = 2;
  p.input_domains = {{"0", "1"}, {"0", "1"}};
  p.output_domains = {{"0", "1"}, {"0", "1"}};
  p.private_tape_bits = {0, 0};
  p.programs.push_back([](const View& v, int round) -> RoundAction {
    if (round == 1) {
      RoundAction a;
      a.sends[1] = v.input;
      a.wait_for = {1};
      return a;
    }
    return halt_with({}, v.received.at(0).content);
  });
  p.programs.push_back([](const View& v, int round) -> RoundAction {
    if (round == 1) {
      RoundAction a;
      a.wait_for = {0};
      return a;
    }
    Bits both = (v.input == "1" && v.received.at(0).content == "1") ? "1" : "0";
    return halt_with({{0, both}}, both);
  });
  e.function = [](PlayerId, std::span<const Bits> x) -> Bits {
    return (x[0] == "1" && x[1] == "1") ? "1" : "0";
  };
  e.notes = "pic = log2(3) at P[X=0] = 1/3, P[Y=0] = 1/2";
  return e;
}

ZooEntry q_index(int k, int q) {
  if (k < 2) throw ConfigError("q-index needs k >= 2");
  if (q < 1 || q > k - 1) throw ConfigError("q-index needs 1 <= q <= k-1");
  const int width = bits_for(k - 1);
  ZooEntry e;
  e.name = "q-index";
  e.parameters = {{"k", k}, {"q", q}};
  auto& p = e.protocol;
  p.name = "q-index(k=" + std::to_string(k) + ",q=" + std::to_string(q) + ")";
  p.k = k;
  p.input_domains.assign(static_cast<std::size_t>(k - 1), {"0", "1"});
  p.output_domains.assign(static_cast<std::size_t>(k - 1), {"0"});

  // Ordered tuples of q distinct indices in [0, k-2].
  std::vector<Bits> queries;
  std::vector<int> idx(static_cast<std::size_t>(q), 0);
  auto emit = [&](auto&& self, std::size_t pos) -> void {
    if (pos == idx.size()) {
      Bits b;
      for (int v : idx) b += to_bits(static_cast<std::uint64_t>(v), width);
      queries.push_back(b);
      return;
    }
    for (int v = 0; v < k - 1; ++v) {
      if (std::find(idx.begin(), idx.begin() + static_cast<long>(pos), v) !=
          idx.begin() + static_cast<long>(pos)) {
        continue;
      }
      idx[pos] = v;
      self(self, pos + 1);
    }
  };
  emit(emit, 0);
  p.input_domains.push_back(queries);
  p.output_domains.push_back(all_strings(q));
  p.private_tape_bits.assign(static_cast<std::size_t>(k), 0);

  auto decode = [width](const Bits& in) {
    std::vector<PlayerId> out;
    for (std::size_t pos = 0; pos < in.size(); pos += static_cast<std::size_t>(width)) {
      out.push_back(static_cast<PlayerId>(std::stoi(in.substr(pos, static_cast<std::size_t>(width)), nullptr, 2)));
    }
    return out;
  };
  for (int i = 0; i < k - 1; ++i) {
    p.programs.push_back([k](const View& v, int round) -> RoundAction {
      if (round == 1) return output_and_wait("0", {k - 1});
      return halt_with({{k - 1, v.input}});
    });
  }
  p.programs.push_back([decode](const View& v, int round) -> RoundAction {
    auto targets = decode(v.input);
    if (round == 1) {
      RoundAction a;
      for (PlayerId t : targets) a.sends[t] = "0";
      a.wait_for = targets;
      return a;
    }
    Bits out;
    for (PlayerId t : targets) {
      for (const auto& m : v.received) {
        if (m.sender == t) out += m.content;
      }
    }
    return halt_with({}, out);
  });
  e.function = [k, decode](PlayerId i, std::span<const Bits> x) -> Bits {
    if (i != k - 1) return "0";
    Bits out;
    for (PlayerId t : decode(x[static_cast<std::size_t>(k - 1)])) out += x[static_cast<std::size_t>(t)];
    return out;
  };
  e.notes = "exactly 2q bits; wait and send sets depend on the index input";
  return e;
}

namespace {
constexpr PlayerId kA = 0, kB = 1, kC = 2, kD = 3;
}  // namespace

ZooEntry order_leak_demo() {
  ZooEntry e;
  e.name = "order-leak";
  auto& p = e.protocol;
  p.name = "order-leak";
  p.k = 4;
  p.mode = model::Mode::kRelaxed;
  p.input_domains = {{"0", "1"}, {""}, {""}, {""}};
  p.private_tape_bits = {0, 0, 0, 0};

  p.relaxed_programs.push_back([](const View& v, int round) -> RelaxedAction {
    PlayerId first = v.input == "0" ? kC : kD;
    PlayerId second = v.input == "0" ? kD : kC;
    RelaxedAction a;
    if (round == 1) {
      a.sends[first] = "0";
      a.wait_for = {first};
    } else if (round == 2) {
      a.sends[second] = "0";
      a.wait_for = {second};
    } else {
      a.output = "0";
      a.halt = true;
    }
    return a;
  });
  p.relaxed_programs.push_back([](const View& v, int round) -> RelaxedAction {
    RelaxedAction a;
    if (round == 1) {
      a.wait_any = 1;
    } else if (round == 2) {
      PlayerId from = v.received.at(0).sender;
      a.sends[from] = "0";
      a.output = from == kC ? "0" : "1";
      a.wait_any = 1;
    } else {
      a.sends[v.received.at(1).sender] = "0";
      a.halt = true;
    }
    return a;
  });
  for (int relay = 0; relay < 2; ++relay) {
    p.relaxed_programs.push_back([](const View&, int round) -> RelaxedAction {
      RelaxedAction a;
      if (round == 1) {
        a.wait_for = {kA};
      } else if (round == 2) {
        a.sends[kB] = "0";
        a.wait_for = {kB};
      } else {
        a.sends[kA] = "0";
        a.output = "0";
        a.halt = true;
      }
      return a;
    });
  }
  e.function = [](PlayerId i, std::span<const Bits> x) -> Bits {
    return i == kB ? x[0] : Bits("0");
  };
  e.notes = "relaxed mode only; every message is the bit 0";
  return e;
}

std::vector<std::string> registry_names() {
  return {"ring-parity", "star-parity", "and-opt", "q-index", "order-leak"};
}

bool in_registry(const std::string& name) {
  auto names = registry_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

ZooEntry make(const std::string& name, const ZooParams& params) {
  if (name == "ring-parity") return ring_parity(params.k, params.n);
  if (name == "star-parity") return star_parity(params.k, params.n);
  if (name == "and-opt") return and_opt();
  if (name == "q-index") return q_index(params.k, params.q);
  if (name == "order-leak") return order_leak_demo();
  throw ConfigError("unknown protocol '" + name + "'");
}

}  // namespace piclab::zoo
