#include "fixtures.h"

#include <span>

namespace piclab::test_support {

using model::Bits;
using model::PlayerId;
using model::RoundAction;
using model::View;

Fixture two_round_ring() {
  constexpr int k = 3;
  Fixture f;
  auto& p = f.protocol;
  p.name = "two-round-ring";
  p.k = k;
  p.input_domains.assign(k, {"0", "1"});
  p.output_domains.assign(k, {"0", "1"});
  p.private_tape_bits.assign(k, 0);
  for (PlayerId i = 0; i < k; ++i) {
    const PlayerId next = (i + 1) % k;
    const PlayerId prev = (i + k - 1) % k;
    p.programs.push_back([next, prev](const View& v, int round) -> RoundAction {
      RoundAction a;
      if (round == 1) {
        a.sends[next] = v.input;
        a.wait_for = {prev};
      } else if (round == 2) {
        const bool both = v.input == "1" && v.received.at(0).content == "1";
        a.sends[prev] = both ? "1" : "0";
        a.wait_for = {next};
      } else {
        const bool either = v.input == "1" || v.received.at(0).content == "1";
        a.output = either ? "1" : "0";
        a.halt = true;
      }
      return a;
    });
  }
  f.function = [](PlayerId i, std::span<const Bits> x) -> Bits {
    const auto prev = static_cast<std::size_t>((i + k - 1) % k);
    return x[static_cast<std::size_t>(i)] == "1" || x[prev] == "1" ? "1" : "0";
  };
  return f;
}

std::string fixture_path(const std::string& name) {
  return std::string(PICLAB_FIXTURE_DIR) + "/" + name;
}

model::TreeProtocol load_fixture_tree(const std::string& name) {
  return model::load_protocol_tree(fixture_path(name));
}

}  // namespace piclab::test_support
