// Command-line front end: measure, audit, compress, demo, list.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "piclab/compression/compressor.h"
#include "piclab/compression/obliviousize.h"
#include "piclab/info/joint_distribution.h"
#include "piclab/measures/measures.h"
#include "piclab/measures/report.h"
#include "piclab/measures/transforms.h"
#include "piclab/model/errors.h"
#include "piclab/model/protocol_tree.h"
#include "piclab/model/relaxed.h"
#include "piclab/zoo/zoo.h"

namespace {

using namespace piclab;
using measures::format_bits;
using measures::InputDistribution;
using measures::ProtocolSpace;
using measures::ReportFields;
using model::Bits;
using model::ConfigError;

enum ExitCode : int {
  kOk = 0,
  kConfig = 1,
  kBudget = 2,
  kViolation = 3,
  kNotOblivious = 4,
};

struct RunConfig {
  std::string command;
  std::string protocol = "and-opt";
  int k = 3;
  int n = 1;
  int q = 1;
  std::string mu = "uniform";
  double tolerance = 1e-9;
  std::uint64_t budget = model::kDefaultBudget;
  std::string format = "json";
  std::uint64_t seed = 0;
  std::string lcp = "exact";
  double eps = 0.01;
  int trials = 1;
  std::optional<std::string> obliviousize;
  std::string out;
};

struct Loaded {
  model::ProtocolDef protocol;
  std::optional<model::FunctionFamily> function;
};

struct Report {
  ReportFields fields;
  std::set<std::string> quoted;
};

Loaded load_protocol(const RunConfig& cfg) {
  if (zoo::in_registry(cfg.protocol)) {
    auto e = zoo::make(cfg.protocol, {cfg.k, cfg.n, cfg.q});
    return {std::move(e.protocol), std::move(e.function)};
  }
  if (std::filesystem::is_regular_file(cfg.protocol)) {
    auto t = model::load_protocol_tree(cfg.protocol);
    return {std::move(t.protocol), std::move(t.function)};
  }
  throw ConfigError("unknown protocol '" + cfg.protocol +
                    "': not a registry name and not a readable file");
}

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.compare(0, prefix.size(), prefix) == 0;
}

InputDistribution load_distribution(const RunConfig& cfg, const model::ProtocolDef& p) {
  if (cfg.mu == "uniform") return InputDistribution::uniform(p);
  if (starts_with(cfg.mu, "file:")) return InputDistribution::load(p, cfg.mu.substr(5));
  if (starts_with(cfg.mu, "grid:")) {
    throw ConfigError("--mu grid:STEP is only available to the measure command");
  }
  throw ConfigError("unknown distribution '" + cfg.mu + "'");
}

int grid_steps(const std::string& spec) {
  auto step = info::Rational::parse(spec.substr(5));
  if (!(step > info::Rational(0)) || !(step <= info::Rational(1)) || step.num() != 1) {
    throw ConfigError("grid step must be 1/m for a positive integer m");
  }
  return static_cast<int>(step.den());
}

Report cmd_measure(const RunConfig& cfg) {
  auto loaded = load_protocol(cfg);
  ProtocolSpace space(loaded.protocol, cfg.budget);
  std::optional<measures::GridResult> grid;
  std::optional<InputDistribution> mu;
  if (starts_with(cfg.mu, "grid:")) {
    grid = measures::sup_pic_grid(space, grid_steps(cfg.mu));
    using info::Rational;
    mu = InputDistribution::independent(
        space.protocol(),
        {{grid->alpha, Rational(1) - grid->alpha}, {grid->beta, Rational(1) - grid->beta}},
        "grid-argmax(" + grid->alpha.to_string() + "," + grid->beta.to_string() + ")");
  } else {
    mu = load_distribution(cfg, space.protocol());
  }
  auto r = measures::measure_all(space, *mu, loaded.function, cfg.tolerance);
  Report out{measures::report_fields(r), {"protocol", "distribution", "acc"}};
  out.fields.emplace_back("decomposition_consistent", r.consistent() ? "true" : "false");
  if (grid) {
    out.fields.emplace_back("grid_alpha", grid->alpha.to_string());
    out.fields.emplace_back("grid_beta", grid->beta.to_string());
    out.fields.emplace_back("grid_value", format_bits(grid->value));
    out.fields.emplace_back("grid_points", std::to_string(grid->points));
    out.quoted.insert({"grid_alpha", "grid_beta"});
  }
  return out;
}

Report cmd_audit(const RunConfig& cfg) {
  auto loaded = load_protocol(cfg);
  if (!loaded.function) {
    throw ConfigError("audit needs a function family; protocol '" + loaded.protocol.name +
                      "' has none");
  }
  ProtocolSpace space(loaded.protocol, cfg.budget);
  auto mu = load_distribution(cfg, space.protocol());
  if (!mu.full_support()) throw ConfigError("privacy audit needs a full-support distribution");
  double leak = measures::privacy_leakage(space, mu, *loaded.function);
  Report out;
  out.fields = {
      {"protocol", space.protocol().name},
      {"distribution", mu.id()},
      {"tolerance", format_bits(cfg.tolerance)},
      {"privacy_leakage", format_bits(leak)},
      {"verdict", leak <= cfg.tolerance ? "private" : "not private"},
  };
  out.quoted = {"protocol", "distribution", "verdict"};
  return out;
}

Report cmd_compress(const RunConfig& cfg) {
  auto loaded = load_protocol(cfg);
  bool publicized = false;
  if (loaded.protocol.total_private_bits() > 0) {
    loaded.protocol = measures::publicize(loaded.protocol);
    publicized = true;
  }
  auto space = std::make_unique<ProtocolSpace>(loaded.protocol, cfg.budget);
  auto mu = load_distribution(cfg, space->protocol());

  Report out;
  std::optional<compression::ConversionCheck> check;
  if (cfg.obliviousize) {
    compression::CoordinatorConversion conv(*space, mu, info::Rational::parse(*cfg.obliviousize));
    auto converted = std::make_unique<ProtocolSpace>(conv.protocol(), cfg.budget);
    check = compression::check_conversion(conv, *space, *converted, mu, loaded.function);
    space = std::move(converted);
  } else {
    auto ob = model::is_oblivious(space->protocol(), space->table());
    if (!ob.oblivious) {
      throw model::NotOblivious(ob.detail + "; rerun with --obliviousize EPS");
    }
  }

  compression::CompressionOptions opt;
  opt.exact = cfg.lcp == "exact";
  opt.delta = cfg.eps;
  opt.seed = cfg.seed;
  opt.trials = cfg.trials;
  auto r = compression::compression_theorem_check(*space, mu, loaded.function, opt);
  out.fields = compression::report_fields(r);
  out.quoted = {"protocol", "distribution", "lcp"};
  out.fields.emplace_back("publicized", publicized ? "true" : "false");
  if (check) {
    out.fields.emplace_back("conversion_phases", std::to_string(check->phases));
    out.fields.emplace_back("conversion_original_acc", check->original_acc.to_string());
    out.fields.emplace_back("conversion_oblivious", check->oblivious ? "true" : "false");
    out.fields.emplace_back("conversion_long_run_mass", check->long_run_mass.to_string());
    out.fields.emplace_back("conversion_truncated_mass", check->truncated_mass.to_string());
    out.fields.emplace_back("conversion_agree_when_completed",
                            check->agree_when_completed ? "true" : "false");
    out.fields.emplace_back("conversion_max_phase_bits", std::to_string(check->max_phase_bits));
    out.quoted.insert({"conversion_original_acc", "conversion_long_run_mass",
                       "conversion_truncated_mass"});
  }
  return out;
}

Report cmd_demo(const RunConfig& cfg) {
  auto e = zoo::order_leak_demo();
  const auto& p = e.protocol;
  const char* names = "ABCD";
  Report out;
  out.fields.emplace_back("protocol", p.name);
  out.quoted = {"protocol"};
  std::vector<Bits> transcripts;
  bool outputs_track_x = true;
  for (const Bits x : {"0", "1"}) {
    std::vector<Bits> inputs{x, "", "", ""};
    std::vector<Bits> tapes(4);
    auto run = model::run_relaxed(p, inputs, tapes, "", {model::DeliveryPolicy::kRandom, cfg.seed});
    std::string order, shown;
    for (const auto& r : run.rounds[1]) {
      for (auto id : r.read) order += names[run.messages[id].sender];
    }
    for (std::size_t i = 0; i < 4; ++i) {
      shown += std::string(i ? "|" : "") + names[i] + ":" + run.received[i];
    }
    transcripts.push_back(shown);
    const std::string prefix = "x" + x + "_";
    out.fields.emplace_back(prefix + "b_read_order", order);
    out.fields.emplace_back(prefix + "transcripts", shown);
    out.fields.emplace_back(prefix + "b_output", run.outputs[1]);
    out.quoted.insert({prefix + "b_read_order", prefix + "transcripts", prefix + "b_output"});
    outputs_track_x = outputs_track_x && run.outputs[1] == x;
  }
  out.fields.emplace_back("transcripts_identical", transcripts[0] == transcripts[1] ? "true" : "false");
  out.fields.emplace_back("b_output_equals_x", outputs_track_x ? "true" : "false");
  return out;
}

Report cmd_list() {
  Report out;
  for (const auto& name : zoo::registry_names()) {
    out.fields.emplace_back(name, zoo::make(name, {}).notes);
    out.quoted.insert(name);
  }
  return out;
}

std::string render(const Report& r, const std::string& format) {
  if (format == "csv") return measures::fields_to_csv(r.fields);
  if (format == "text") return measures::fields_to_text(r.fields);
  return measures::fields_to_json(r.fields, r.quoted);
}

int fail(int code, const std::string& what) {
  std::cerr << "piclab: " << what << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Exact information measures and compression for small multi-party protocols"};
  app.add_option("command", cfg.command, "measure | audit | compress | demo | list")
      ->required()
      ->check(CLI::IsMember({"measure", "audit", "compress", "demo", "list"}));
  app.add_option("--protocol", cfg.protocol, "registry name or protocol-tree JSON file")
      ->capture_default_str();
  app.add_option("--k", cfg.k, "number of players")->capture_default_str();
  app.add_option("--n", cfg.n, "input length")->capture_default_str();
  app.add_option("--q", cfg.q, "queries of q-index")->capture_default_str();
  app.add_option("--mu", cfg.mu, "uniform | file:PATH | grid:STEP")->capture_default_str();
  app.add_option("--tolerance", cfg.tolerance, "tolerance for verdicts")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--budget", cfg.budget, "maximum number of executions to enumerate")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--format", cfg.format, "json | csv | text")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for randomized components")->capture_default_str();
  app.add_option("--lcp", cfg.lcp, "exact | randomized")
      ->check(CLI::IsMember({"exact", "randomized"}))
      ->capture_default_str();
  app.add_option("--eps", cfg.eps, "extra error budget of the compressed protocol")
      ->capture_default_str();
  app.add_option("--trials", cfg.trials, "runs per input with randomized boxes")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--obliviousize", cfg.obliviousize,
                 "convert through coordinator phases with this error budget first");
  app.add_option("--out", cfg.out, "write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  std::string text;
  try {
    Report r;
    if (cfg.command == "measure") {
      r = cmd_measure(cfg);
    } else if (cfg.command == "audit") {
      r = cmd_audit(cfg);
    } else if (cfg.command == "compress") {
      r = cmd_compress(cfg);
    } else if (cfg.command == "demo") {
      r = cmd_demo(cfg);
    } else {
      r = cmd_list();
    }
    text = render(r, cfg.format);
  } catch (const model::NotOblivious& e) {
    return fail(kNotOblivious, std::string("protocol is not oblivious: ") + e.what());
  } catch (const model::BudgetExceeded& e) {
    return fail(kBudget, e.what());
  } catch (const model::ModelError& e) {
    return fail(kViolation, std::string("model violation: ") + e.what());
  } catch (const std::invalid_argument& e) {
    return fail(kConfig, e.what());
  } catch (const std::exception& e) {
    return fail(kViolation, e.what());
  }

  if (cfg.out.empty()) {
    std::cout << text;
    return kOk;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file || !(file << text)) return fail(kConfig, "cannot write " + cfg.out);
  return kOk;
}
