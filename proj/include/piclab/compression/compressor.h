#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "piclab/compression/layout.h"
#include "piclab/compression/lcp.h"
#include "piclab/compression/tree.h"
#include "piclab/measures/distribution.h"
#include "piclab/measures/space.h"

namespace piclab::compression {

using model::TranscriptProfile;

// A broken stage invariant; always a bug in this module.
class CompressionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct RunResult {
  TranscriptProfile profile;  // candidates the players settle on
  std::vector<Bits> outputs;
  bool correct = false;       // profile equals the true one
  bool stuck = false;         // a wrong lcp answer left no node to move to
  int moves = 0;              // S: stages in which a player moved
  std::vector<int> moves_per_player;
  int stages = 0;             // including the final, silent stage
  std::size_t lcp_calls = 0;
  std::size_t lcp_bits = 0;
  std::size_t broadcast_bits = 0;
  // log2 1/w(t_i) of every player's true transcript t_i.
  std::vector<double> log_inverse_weights;

  std::size_t comm_bits() const { return lcp_bits + broadcast_bits; }
  double log_inverse_weight() const;
};

// Compression of an oblivious public-coin protocol under a fixed input law.
// Builds every transcript tree up front.
class Compressor {
 public:
  // Throws model::NotOblivious, or model::ConfigError when the protocol has
  // private tapes or the layout is unusable.
  Compressor(const measures::ProtocolSpace& space, const measures::InputDistribution& mu,
             TranscriptOrder order = TranscriptOrder::kRoundSentThenReceived);

  const ObliviousLayout& layout() const { return layout_; }
  int k() const { return space_->k(); }
  std::size_t cc() const { return cc_; }
  // Width of one broadcast stage index, with cc+1 standing for "none".
  int index_bits() const;

  // Tree of player i when its input is the one in `row` and the public tape
  // is number `tape`. Throws std::out_of_range if that input has
  // probability 0.
  const TranscriptTree& tree(PlayerId i, std::size_t row, std::uint64_t tape) const;
  TranscriptProfile true_profile(std::size_t row, std::uint64_t tape) const;
  // Every transcript player i could see with its input from `row`, over the
  // whole input domain of the others.
  std::vector<Bits> candidates(PlayerId i, std::size_t row, std::uint64_t tape) const;

  // Every message between two players has the same content at both ends.
  // Throws model::ModelViolation on a transcript that does not parse.
  bool is_coherent(const TranscriptProfile& profile) const;

  // One run of the stage loop on input `row` and public tape `tape`. With
  // an exact box a broken invariant throws CompressionError. `trace`, when
  // given, receives one line per stage.
  RunResult run(std::size_t row, std::uint64_t tape, LcpBox& box,
                std::vector<std::string>* trace = nullptr) const;

 private:
  using TreeKey = std::pair<Bits, std::uint64_t>;

  const measures::ProtocolSpace* space_;
  ObliviousLayout layout_;
  std::size_t cc_ = 0;
  std::vector<std::map<TreeKey, TranscriptTree>> trees_;
};

// Number of coherent tuples among all candidate transcripts for one input.
std::size_t count_coherent_profiles(const Compressor& c, std::size_t row, std::uint64_t tape);

struct CompressionOptions {
  bool exact = true;
  double delta = 0.0;  // extra error budget; required > 0 for random boxes
  std::uint64_t seed = 0;
  int trials = 1;      // runs per (input, tape) with random boxes
  TranscriptOrder order = TranscriptOrder::kRoundSentThenReceived;
};

struct CompressionReport {
  std::string protocol_id;
  std::string distribution_id;
  bool exact = true;
  double delta = 0.0;
  double lcp_eps = 0.0;  // per-call error of random boxes
  int trials = 1;

  int k = 0;
  std::size_t cc = 0;
  double ic = 0.0;
  double expected_moves = 0.0;                // E[S]
  double expected_log_inverse_weight = 0.0;   // E[Σ_i log2 1/w(t_i)]
  double bidir_conditional_entropy = 0.0;     // Σ_i H(Π_i↔ | X_i R^p)
  double expected_stages = 0.0;
  double mean_lcp_calls = 0.0;
  double acc_compressed = 0.0;
  std::optional<double> error_original;       // against f
  std::optional<double> error_compressed;     // against f
  double simulation_error = 0.0;              // outputs differ from the original
  double profile_error = 0.0;                 // wrong transcripts recovered
  bool moves_within_weight = true;            // every run: S_i ≤ log2 1/w(t_i)
  double bound = 0.0;
  std::optional<double> ratio;                // acc_compressed / bound

  // error_compressed ≤ error_original + delta, or simulation_error ≤ delta
  // without a function.
  bool within_error_budget() const;
};

// Runs the compressor on every (input, tape) with positive probability.
// Throws model::ConfigError for delta ≤ 0 with random boxes.
CompressionReport compression_theorem_check(const measures::ProtocolSpace& space,
                                            const measures::InputDistribution& mu,
                                            const std::optional<model::FunctionFamily>& f,
                                            const CompressionOptions& options);

std::vector<std::pair<std::string, std::string>> report_fields(const CompressionReport& r);

}  // namespace piclab::compression
