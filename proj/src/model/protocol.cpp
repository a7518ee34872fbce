#include "piclab/model/protocol.h"

#include <algorithm>

#include "piclab/model/errors.h"

namespace piclab::model {

namespace {

bool is_bits(const Bits& b) {
  return std::all_of(b.begin(), b.end(), [](char c) { return c == '0' || c == '1'; });
}

}  // namespace

int ProtocolDef::total_private_bits() const {
  int total = 0;
  for (int b : private_tape_bits) total += b;
  return total;
}

int ProtocolDef::round_limit() const {
  if (max_local_rounds > 0) return max_local_rounds;
  std::size_t n = 1;
  for (const auto& dom : input_domains) {
    for (const auto& x : dom) n = std::max(n, x.size());
  }
  return 4 * k * static_cast<int>(n);
}

void ProtocolDef::validate() const {
  if (k < 1) throw ConfigError("protocol needs at least one player");
  auto ksize = static_cast<std::size_t>(k);
  if (input_domains.size() != ksize) throw ConfigError("one input domain per player required");
  for (const auto& dom : input_domains) {
    if (dom.empty()) throw ConfigError("input domains must be non-empty");
    for (const auto& x : dom) {
      if (!is_bits(x)) throw ConfigError("input values must be bit strings");
    }
    for (std::size_t a = 0; a < dom.size(); ++a) {
      for (std::size_t b = a + 1; b < dom.size(); ++b) {
        if (dom[a] == dom[b]) throw ConfigError("duplicate value in an input domain");
      }
    }
  }
  if (!output_domains.empty() && output_domains.size() != ksize) {
    throw ConfigError("output domains must be given for every player or none");
  }
  if (private_tape_bits.size() != ksize) {
    throw ConfigError("one private tape length per player required");
  }
  for (int b : private_tape_bits) {
    if (b < 0) throw ConfigError("negative tape length");
  }
  if (public_tape_bits < 0) throw ConfigError("negative tape length");
  if (mode == Mode::kRestricted && programs.size() != ksize) {
    throw ConfigError("one program per player required");
  }
  if (mode == Mode::kRelaxed && relaxed_programs.size() != ksize) {
    throw ConfigError("one relaxed program per player required");
  }
  if (max_local_rounds < 0) throw ConfigError("max_local_rounds must be positive");
}

std::size_t input_space_size(const ProtocolDef& p) {
  std::size_t n = 1;
  for (const auto& dom : p.input_domains) n *= dom.size();
  return n;
}

std::vector<Bits> input_tuple(const ProtocolDef& p, std::size_t row) {
  std::vector<Bits> x(p.input_domains.size());
  for (std::size_t i = p.input_domains.size(); i-- > 0;) {
    const auto& dom = p.input_domains[i];
    x[i] = dom[row % dom.size()];
    row /= dom.size();
  }
  return x;
}

std::size_t input_row(const ProtocolDef& p, std::span<const Bits> x) {
  if (x.size() != p.input_domains.size()) throw ConfigError("wrong number of inputs");
  std::size_t row = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto& dom = p.input_domains[i];
    auto it = std::find(dom.begin(), dom.end(), x[i]);
    if (it == dom.end()) {
      throw ConfigError("input '" + x[i] + "' of player " + std::to_string(i) +
                        " is outside its domain");
    }
    row = row * dom.size() + static_cast<std::size_t>(it - dom.begin());
  }
  return row;
}

}  // namespace piclab::model
