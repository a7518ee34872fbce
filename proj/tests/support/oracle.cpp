#include "oracle.h"

#include <cmath>
#include <map>

namespace piclab::test_support {

using model::Execution;

Oracle::Oracle(const measures::ProtocolSpace& space, const measures::InputDistribution& mu,
               std::optional<model::FunctionFamily> f)
    : space_(&space), mu_(&mu), f_(std::move(f)) {}

double Oracle::entropy(const Key& a) const {
  const auto& table = space_->table();
  std::map<std::string, double> mass;
  for (std::size_t row = 0; row < table.input_rows; ++row) {
    double w = mu_->weights()[row].to_double();
    if (w == 0.0) continue;
    w /= static_cast<double>(table.tapes);
    for (std::uint64_t t = 0; t < table.tapes; ++t) mass[a(table.at(row, t))] += w;
  }
  double h = 0.0;
  for (const auto& [key, p] : mass) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

double Oracle::mutual_info(const Key& a, const Key& b, const Key& c) const {
  auto join = [](const Key& x, const Key& y) -> Key {
    return [x, y](const Execution& e) { return x(e) + "#" + y(e); };
  };
  double v = entropy(join(a, c)) + entropy(join(b, c)) - entropy(join(join(a, b), c)) -
             entropy(c);
  return std::abs(v) < 1e-12 ? 0.0 : v;
}

namespace {

std::string others_inputs(const Execution& e, std::size_t i) {
  std::string s;
  for (std::size_t j = 0; j < e.inputs.size(); ++j) {
    if (j != i) s += e.inputs[j] + ",";
  }
  return s;
}

std::string others_tapes(const Execution& e, std::size_t i) {
  std::string s;
  for (std::size_t j = 0; j < e.private_tapes.size(); ++j) {
    if (j != i) s += e.private_tapes[j] + ",";
  }
  return s;
}

std::string own_view(const Execution& e, std::size_t i) {
  return e.inputs[i] + "|" + e.private_tapes[i] + "|" + e.public_tape;
}

}  // namespace

double Oracle::ic_received() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < static_cast<std::size_t>(space_->k()); ++i) {
    sum += mutual_info([i](const Execution& e) { return others_inputs(e, i); },
                       [i](const Execution& e) { return e.received[i]; },
                       [i](const Execution& e) { return own_view(e, i); });
  }
  return sum;
}

double Oracle::ic_bidirectional() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < static_cast<std::size_t>(space_->k()); ++i) {
    sum += mutual_info([i](const Execution& e) { return others_inputs(e, i); },
                       [i](const Execution& e) { return e.bidirectional[i]; },
                       [i](const Execution& e) { return own_view(e, i); });
  }
  return sum;
}

double Oracle::pic() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < static_cast<std::size_t>(space_->k()); ++i) {
    sum += mutual_info(
        [i](const Execution& e) { return others_inputs(e, i); },
        [i](const Execution& e) { return e.received[i] + "|" + others_tapes(e, i); },
        [i](const Execution& e) { return own_view(e, i); });
  }
  return sum;
}

double Oracle::leakage() const {
  const auto f = f_.value();
  double sum = 0.0;
  for (std::size_t i = 0; i < static_cast<std::size_t>(space_->k()); ++i) {
    const auto pi = static_cast<model::PlayerId>(i);
    sum += mutual_info([i](const Execution& e) { return others_inputs(e, i); },
                       [i](const Execution& e) { return e.received[i]; },
                       [i, pi, f](const Execution& e) {
                         return own_view(e, i) + "|" + f(pi, e.inputs);
                       });
  }
  return sum;
}

double Oracle::spy() const {
  double sum = 0.0;
  const Key none = [](const Execution&) { return std::string(); };
  for (std::size_t i = 0; i < static_cast<std::size_t>(space_->k()); ++i) {
    sum += mutual_info([i](const Execution& e) { return e.inputs[i]; },
                       [i](const Execution& e) { return e.bidirectional[i]; }, none);
  }
  return sum;
}

double Oracle::transcript_entropy() const {
  auto given = [](const Execution& e) {
    std::string s;
    for (const auto& x : e.inputs) s += x + ",";
    return s + "|" + e.public_tape;
  };
  return entropy([given](const Execution& e) { return given(e) + "#" + e.transcript; }) -
         entropy(given);
}

double Oracle::acc() const {
  const auto& table = space_->table();
  double sum = 0.0;
  for (std::size_t row = 0; row < table.input_rows; ++row) {
    const double w = mu_->weights()[row].to_double() / static_cast<double>(table.tapes);
    for (std::uint64_t t = 0; t < table.tapes; ++t) {
      sum += w * static_cast<double>(table.at(row, t).total_bits);
    }
  }
  return sum;
}

}  // namespace piclab::test_support
