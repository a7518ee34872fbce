// Acceptance gate: one line per criterion, "criterion N: PASS|FAIL detail".
// Exit status is 0 only if every selected criterion passes.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fixtures.h"
#include "oracle.h"
#include "property_suite.h"
#include "piclab/compression/compressor.h"
#include "piclab/compression/obliviousize.h"
#include "piclab/measures/measures.h"
#include "piclab/measures/transforms.h"
#include "piclab/model/relaxed.h"
#include "piclab/model/simulator.h"
#include "piclab/zoo/zoo.h"

namespace {

using namespace piclab;
using info::Rational;
using measures::InputDistribution;
using measures::ProtocolSpace;
using model::Bits;

constexpr double kTol = 1e-9;

// Collects failed checks; the first few are shown in the criterion line.
class Verdict {
 public:
  void check(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) failures_.push_back(what);
  }
  void near(double got, double want, double tol, const std::string& what) {
    std::ostringstream s;
    s.precision(12);
    s << what << " = " << got << ", want " << want << " ± " << tol;
    check(std::abs(got - want) <= tol, s.str());
  }
  void at_most(double got, double bound, double tol, const std::string& what) {
    std::ostringstream s;
    s.precision(12);
    s << what << " = " << got << ", want <= " << bound;
    check(got <= bound + tol, s.str());
  }
  void note(const std::string& n) { notes_.push_back(n); }

  bool passed() const { return failures_.empty(); }
  std::string summary() const {
    std::ostringstream s;
    s << checks_ << " checks";
    if (!failures_.empty()) {
      s << ", " << failures_.size() << " failed:";
      for (std::size_t n = 0; n < failures_.size() && n < 4; ++n) s << " [" << failures_[n] << "]";
    }
    for (const auto& n : notes_) s << "; " << n;
    return s.str();
  }

 private:
  int checks_ = 0;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(10);
  s << v;
  return s.str();
}

InputDistribution mu_star(const model::ProtocolDef& and_protocol) {
  return InputDistribution::independent(
      and_protocol, {{Rational(1, 3), Rational(2, 3)}, {Rational(1, 2), Rational(1, 2)}}, "mu*");
}

Verdict and_optimum() {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  auto e = zoo::and_opt();
  ProtocolSpace s(e.protocol);
  const double log3 = std::log2(3.0);
  v.near(measures::pic(s, mu_star(e.protocol)), log3, kTol, "pic(and, mu*)");
  auto file = InputDistribution::load(e.protocol, std::string(PICLAB_DATA_DIR) + "/and_opt_mu_star.txt");
  v.near(measures::pic(s, file), log3, kTol, "pic(and, mu* file)");
  auto grid = measures::sup_pic_grid(s, 1000);
  v.near(grid.value, log3, 1e-4, "grid maximum");
  v.near(grid.alpha.to_double(), 1.0 / 3.0, 0.01, "argmax P[X_A=0]");
  v.near(grid.beta.to_double(), 0.5, 0.01, "argmax P[X_B=0]");
  const double t = seconds_since(start);
  v.at_most(t, 10.0, 0.0, "runtime");
  v.note("grid max " + fmt(grid.value) + " at (" + grid.alpha.to_string() + ", " +
         grid.beta.to_string() + "), " + fmt(t) + " s");
  return v;
}

Verdict ring_parity() {
  Verdict v;
  for (int k : {3, 4}) {
    for (int n : {1, 2}) {
      auto e = zoo::ring_parity(k, n);
      ProtocolSpace s(e.protocol);
      auto mu = InputDistribution::uniform(e.protocol);
      const std::string tag = "ring(" + std::to_string(k) + "," + std::to_string(n) + ") ";
      v.near(measures::ic(s, mu), n, kTol, tag + "ic");
      v.near(measures::privacy_leakage(s, mu, *e.function), 0.0, kTol, tag + "leakage");
      const double h = measures::transcript_entropy(s, mu);
      v.near(h, n, kTol, tag + "transcript entropy");
      v.check(h + kTol >= static_cast<double>((k - 2) * n) / k, tag + "randomness lower bound");
      const double pic = measures::pic(s, mu);
      v.near(pic, k * n, kTol, tag + "pic");
      test_support::Oracle oracle(s, mu, e.function);
      v.near(pic, oracle.pic(), kTol, tag + "pic vs brute force");
      v.near(measures::ic(s, mu), oracle.ic_received(), kTol, tag + "ic vs brute force");
    }
  }
  return v;
}

std::vector<zoo::ZooEntry> deterministic_zoo() {
  return {zoo::star_parity(3, 1), zoo::star_parity(3, 2), zoo::star_parity(4, 1),
          zoo::star_parity(4, 2), zoo::and_opt(),         zoo::q_index(3, 1),
          zoo::q_index(4, 1),     zoo::q_index(4, 2)};
}

Verdict parity_tightness() {
  Verdict v;
  for (int k : {3, 4}) {
    for (int n : {1, 2}) {
      auto e = zoo::star_parity(k, n);
      ProtocolSpace s(e.protocol);
      auto mu = InputDistribution::uniform(e.protocol);
      const std::string tag = "star(" + std::to_string(k) + "," + std::to_string(n) + ") ";
      v.near(measures::pic(s, mu), n * (k - 1), kTol, tag + "pic");
      v.near(measures::spy_info(s, mu), n * (k - 1), kTol, tag + "spy");
    }
  }
  for (const auto& e : deterministic_zoo()) {
    ProtocolSpace s(e.protocol);
    auto mu = InputDistribution::uniform(e.protocol);
    v.check(measures::pic(s, mu) + kTol >= measures::spy_info(s, mu),
            e.protocol.name + " pic >= spy");
  }
  return v;
}

Verdict ordering_sanity() {
  Verdict v;
  std::vector<zoo::ZooEntry> zoo_protocols = deterministic_zoo();
  for (int k : {3, 4}) {
    for (int n : {1, 2}) zoo_protocols.push_back(zoo::ring_parity(k, n));
  }
  for (const auto& e : zoo_protocols) {
    ProtocolSpace s(e.protocol);
    auto mu = InputDistribution::uniform(e.protocol);
    auto received = measures::ic_terms(s, mu, measures::TranscriptKind::kReceived);
    auto bidir = measures::ic_terms(s, mu, measures::TranscriptKind::kBidirectional);
    for (std::size_t i = 0; i < received.size(); ++i) {
      v.near(received[i], bidir[i], kTol, e.protocol.name + " player " + std::to_string(i));
    }
  }
  v.note("order-leak runs in the relaxed model and has no information cost");
  return v;
}

Verdict publicization() {
  Verdict v;
  struct Case {
    model::ProtocolDef protocol;
    std::optional<model::FunctionFamily> function;
  };
  std::vector<Case> cases;
  for (int n : {1, 2}) {
    auto e = zoo::ring_parity(3, n);
    cases.push_back({e.protocol, e.function});
  }
  auto ring4 = zoo::ring_parity(4, 1);
  cases.push_back({ring4.protocol, ring4.function});
  for (const char* name : {"masked_and.json", "public_swap.json", "masked_xor3.json"}) {
    auto tp = test_support::load_fixture_tree(name);
    cases.push_back({tp.protocol, tp.function});
  }
  for (const auto& c : cases) {
    ProtocolSpace s(c.protocol);
    auto pub = measures::publicize(c.protocol);
    ProtocolSpace ps(pub);
    auto mu = InputDistribution::uniform(c.protocol);
    const double pic = measures::pic(s, mu);
    const double ic_pub = measures::ic(ps, mu);
    v.near(measures::pic(ps, mu), pic, kTol, c.protocol.name + " pic(publicized)");
    v.near(ic_pub, pic, kTol, c.protocol.name + " ic(publicized)");
    auto det = measures::derandomize_zero_error(pub, mu, c.function);
    v.check(det.protocol.is_deterministic(), c.protocol.name + " derandomized is deterministic");
    v.at_most(measures::ic(ProtocolSpace(det.protocol), mu), ic_pub, kTol,
              c.protocol.name + " ic(derandomized)");
  }
  return v;
}

struct CompressionCase {
  model::ProtocolDef protocol;
  std::optional<model::FunctionFamily> function;
};

std::vector<CompressionCase> compression_cases() {
  std::vector<CompressionCase> out;
  for (auto e : {zoo::and_opt(), zoo::star_parity(3, 1), zoo::star_parity(3, 2)}) {
    out.push_back({e.protocol, e.function});
  }
  auto ring = test_support::two_round_ring();
  out.push_back({ring.protocol, ring.function});
  return out;
}

Verdict compression_stages() {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  std::string values;
  for (const auto& c : compression_cases()) {
    ProtocolSpace s(c.protocol);
    auto mu = InputDistribution::uniform(c.protocol);
    compression::Compressor comp(s, mu);
    const auto& table = s.table();
    bool all_correct = true;
    for (std::size_t row = 0; row < table.input_rows; ++row) {
      auto box = compression::LcpBox::exact();
      auto r = comp.run(row, 0, box);
      all_correct = all_correct && r.correct && r.profile == comp.true_profile(row, 0);
    }
    const auto& name = c.protocol.name;
    v.check(all_correct, name + " reproduces every true profile");
    auto rep = compression::compression_theorem_check(s, mu, c.function, {});
    v.check(rep.simulation_error == 0.0, name + " zero simulation error");
    v.at_most(rep.expected_moves, rep.ic, kTol, name + " E[S] vs ic");
    v.near(rep.expected_moves, rep.bidir_conditional_entropy, kTol,
           name + " E[S] vs sum H(Pi_i<->|X_i R^p)");
    values += " " + name + ": E[S]=" + fmt(rep.expected_moves) + " ic=" + fmt(rep.ic) +
              " sumH=" + fmt(rep.bidir_conditional_entropy) +
              " E[sum log 1/w]=" + fmt(rep.expected_log_inverse_weight) + ";";
  }
  const double t = seconds_since(start);
  v.at_most(t, 60.0, 0.0, "runtime");
  v.note("values" + values + " " + fmt(t) + " s");
  return v;
}

Verdict coherent_uniqueness() {
  Verdict v;
  for (const auto& c : compression_cases()) {
    ProtocolSpace s(c.protocol);
    auto mu = InputDistribution::uniform(c.protocol);
    compression::Compressor comp(s, mu);
    for (std::size_t row = 0; row < s.table().input_rows; ++row) {
      v.check(compression::count_coherent_profiles(comp, row, 0) == 1,
              c.protocol.name + " row " + std::to_string(row));
    }
  }
  return v;
}

Verdict obliviousize() {
  Verdict v;
  auto q = zoo::q_index(3, 1);
  ProtocolSpace qs(q.protocol);
  auto mu = InputDistribution::uniform(q.protocol);
  const Rational eps(1, 2);
  compression::CoordinatorConversion conv(qs, mu, eps);
  ProtocolSpace cs(conv.protocol());
  auto check = compression::check_conversion(conv, qs, cs, mu, q.function);
  v.check(model::is_oblivious(conv.protocol(), cs.table()).oblivious, "is_oblivious");
  v.check(check.truncated_mass <= eps / Rational(2),
          "truncated mass " + check.truncated_mass.to_string() + " <= eps/2");
  v.check(check.long_run_mass <= check.original_acc / Rational(check.phases),
          "Markov: P[bits >= T] <= acc/T");
  v.check(check.agree_when_completed, "completed runs agree with the original");
  v.note("T=" + std::to_string(check.phases) + " acc=" + check.original_acc.to_string() +
         " truncated=" + check.truncated_mass.to_string());
  return v;
}

Verdict info_properties() {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  auto r = test_support::run_property_suite(20240611, 200, kTol);
  const double t = seconds_since(start);
  v.check(r.distributions == 200, "200 laws");
  for (const auto& f : r.failures) v.check(false, f);
  v.check(r.premise_a_held > 0 && r.premise_b_held > 0, "premise-gated checks exercised");
  v.at_most(t, 10.0, 0.0, "runtime");
  v.note(std::to_string(r.checks) + " identities, premises held " +
         std::to_string(r.premise_a_held) + "/" + std::to_string(r.premise_b_held) + ", " +
         fmt(t) + " s");
  return v;
}

Verdict order_leak() {
  Verdict v;
  auto e = zoo::order_leak_demo();
  const std::vector<model::Schedule> schedules{
      {model::DeliveryPolicy::kFifo, 0},
      {model::DeliveryPolicy::kLifo, 0},
      {model::DeliveryPolicy::kRandom, 1},
      {model::DeliveryPolicy::kRandom, 2}};
  for (const auto& sched : schedules) {
    std::vector<model::Execution> runs;
    for (const Bits x : {"0", "1"}) {
      std::vector<Bits> inputs{x, "", "", ""};
      std::vector<Bits> tapes(4);
      runs.push_back(model::run_relaxed(e.protocol, inputs, tapes, "", sched));
      v.check(runs.back().outputs[1] == x, "B outputs x = " + x);
    }
    v.check(runs[0].received == runs[1].received, "content-only transcripts identical");
    v.check(runs[0].outputs[1] != runs[1].outputs[1], "B outputs differ");
  }
  return v;
}

Verdict product_additivity() {
  Verdict v;
  struct Pair {
    model::ProtocolDef p, q;
    InputDistribution mu, eta;
  };
  auto ring = zoo::ring_parity(3, 1).protocol;
  auto and2 = zoo::and_opt().protocol;
  auto lifted = measures::pad_players(and2, 3);
  auto lifted_mu = InputDistribution::independent(
      lifted, {{Rational(1, 3), Rational(2, 3)}, {Rational(1, 2), Rational(1, 2)}, {Rational(1)}},
      "mu*");
  auto star = zoo::star_parity(3, 1).protocol;
  auto skewed = InputDistribution::independent(
      star, {{Rational(1, 4), Rational(3, 4)}, {Rational(1, 2), Rational(1, 2)},
             {Rational(2, 3), Rational(1, 3)}});
  std::vector<Pair> pairs{
      {ring, lifted, InputDistribution::uniform(ring), lifted_mu},
      {star, star, InputDistribution::uniform(star), skewed},
  };
  for (const auto& pr : pairs) {
    auto pq = measures::product_protocol(pr.p, pr.q);
    auto law = InputDistribution::product(pr.mu, pr.p, pr.eta, pr.q, pq);
    ProtocolSpace sp(pr.p), sq(pr.q), spq(pq);
    const std::string tag = pr.p.name + " x " + pr.q.name + " ";
    v.near(measures::pic(spq, law), measures::pic(sp, pr.mu) + measures::pic(sq, pr.eta), kTol,
           tag + "pic");
    v.near(measures::ic(spq, law), measures::ic(sp, pr.mu) + measures::ic(sq, pr.eta), kTol,
           tag + "ic");
    v.check(measures::cc(spq) == measures::cc(sp) + measures::cc(sq), tag + "cc");
  }
  return v;
}

struct Criterion {
  int id;
  const char* title;
  std::function<Verdict()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> selected;
  app.add_option("--criterion", selected, "run only these criteria")->check(CLI::Range(1, 11));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {1, "AND optimum", and_optimum},
      {2, "ring parity", ring_parity},
      {3, "parity tightness", parity_tightness},
      {4, "ordering sanity", ordering_sanity},
      {5, "publicization", publicization},
      {6, "compression zero error and stage bound", compression_stages},
      {7, "coherent-profile uniqueness", coherent_uniqueness},
      {8, "obliviousize", obliviousize},
      {9, "information-theory property suite", info_properties},
      {10, "order-leak demo", order_leak},
      {11, "protocol-product additivity", product_additivity},
  };

  bool all = true;
  for (const auto& c : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) {
      continue;
    }
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& ex) {
      v.check(false, std::string("exception: ") + ex.what());
    }
    all = all && v.passed();
    std::cout << "criterion " << c.id << ": " << (v.passed() ? "PASS" : "FAIL") << " " << c.title
              << " (" << v.summary() << ")\n";
  }
  return all ? 0 : 1;
}
