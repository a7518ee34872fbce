#include "piclab/measures/space.h"

#include <unordered_map>

#include "piclab/model/errors.h"

namespace piclab::measures {

ProtocolSpace::ProtocolSpace(ProtocolDef p, std::uint64_t budget) : protocol_(std::move(p)) {
  if (protocol_.mode != model::Mode::kRestricted) {
    throw model::ModelViolation(protocol_.name +
                                ": information measures are defined for restricted-mode protocols only");
  }
  if (protocol_.k < 2) throw model::ConfigError("measures need at least two players");
  table_ = model::run_all(protocol_, budget);
}

std::string input_var(int i) { return "X" + std::to_string(i); }
std::string private_tape_var(int i) { return "R" + std::to_string(i); }
std::string public_tape_var() { return "Rp"; }
std::string received_var(int i) { return "Pi" + std::to_string(i); }
std::string bidir_var(int i) { return "PiB" + std::to_string(i); }
std::string bidir_round_var(int i) { return "PiR" + std::to_string(i); }
std::string output_var(int i) { return "Out" + std::to_string(i); }
std::string function_var(int i) { return "F" + std::to_string(i); }
std::string transcript_var() { return "Pi"; }

info::JointDistribution joint_dist(const ProtocolSpace& space, const InputDistribution& mu,
                                   const std::optional<model::FunctionFamily>& f) {
  const int k = space.k();
  const auto& table = space.table();
  if (mu.weights().size() != table.input_rows) {
    throw model::ConfigError("input distribution does not match the protocol's input domain");
  }
  std::vector<std::string> vars;
  for (int i = 0; i < k; ++i) vars.push_back(input_var(i));
  for (int i = 0; i < k; ++i) vars.push_back(private_tape_var(i));
  vars.push_back(public_tape_var());
  for (int i = 0; i < k; ++i) vars.push_back(received_var(i));
  for (int i = 0; i < k; ++i) vars.push_back(bidir_var(i));
  for (int i = 0; i < k; ++i) vars.push_back(bidir_round_var(i));
  for (int i = 0; i < k; ++i) vars.push_back(output_var(i));
  vars.push_back(transcript_var());
  if (f) {
    for (int i = 0; i < k; ++i) vars.push_back(function_var(i));
  }

  std::vector<std::unordered_map<std::string, info::Value>> intern(vars.size());
  auto id = [&](std::size_t column, const std::string& s) {
    auto& m = intern[column];
    auto [it, inserted] = m.emplace(s, static_cast<info::Value>(m.size()));
    return it->second;
  };

  const Rational tape_share(1, static_cast<std::int64_t>(table.tapes));
  std::vector<info::Outcome> outcomes;
  for (std::size_t row = 0; row < table.input_rows; ++row) {
    const Rational& w = mu.weights()[row];
    if (w.is_zero()) continue;
    std::vector<Bits> fx;
    if (f) {
      const auto& x = table.at(row, 0).inputs;
      for (int i = 0; i < k; ++i) fx.push_back((*f)(i, x));
    }
    for (std::uint64_t t = 0; t < table.tapes; ++t) {
      const auto& e = table.at(row, t);
      info::Outcome o;
      o.weight = w * tape_share;
      std::size_t c = 0;
      auto push = [&](const std::string& s) { o.values.push_back(id(c++, s)); };
      for (const auto& s : e.inputs) push(s);
      for (const auto& s : e.private_tapes) push(s);
      push(e.public_tape);
      for (const auto& s : e.received) push(s);
      for (const auto& s : e.bidirectional) push(s);
      for (const auto& s : e.bidirectional_by_round) push(s);
      for (const auto& s : e.outputs) push(s);
      push(e.transcript);
      for (const auto& s : fx) push(s);
      outcomes.push_back(std::move(o));
    }
  }
  return info::JointDistribution(std::move(vars), std::move(outcomes));
}

}  // namespace piclab::measures
