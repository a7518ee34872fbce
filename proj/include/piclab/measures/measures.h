#pragma once

#include <cstddef>
#include <vector>

#include "piclab/info/rational.h"
#include "piclab/measures/space.h"

namespace piclab::measures {

// Worst-case total communication in bits.
std::size_t cc(const ProtocolSpace& space);
// Expected total communication under mu and uniform tapes.
Rational acc(const ProtocolSpace& space, const InputDistribution& mu);

double ic(const ProtocolSpace& space, const InputDistribution& mu);
double pic(const ProtocolSpace& space, const InputDistribution& mu);

struct PicDecomposition {
  double ic_term = 0.0;
  double random_term = 0.0;
};
PicDecomposition pic_decomposition(const ProtocolSpace& space, const InputDistribution& mu);

double privacy_leakage(const ProtocolSpace& space, const InputDistribution& mu,
                       const model::FunctionFamily& f);
double transcript_entropy(const ProtocolSpace& space, const InputDistribution& mu);
double spy_info(const ProtocolSpace& space, const InputDistribution& mu);

enum class TranscriptKind { kReceived, kBidirectional, kBidirectionalByRound };

// I(X_-i ; T_i | X_i R_i R^p) for every player, T_i the chosen transcript.
std::vector<double> ic_terms(const ProtocolSpace& space, const InputDistribution& mu,
                             TranscriptKind kind);

// Σ_i H(Π_i↔ | X_i R^p), Π_i↔ in the per-round ordering.
double bidir_conditional_entropy(const ProtocolSpace& space, const InputDistribution& mu);

struct GridResult {
  Rational alpha;  // P[X_0 = 0]
  Rational beta;   // P[X_1 = 0]
  double value = 0.0;
  std::size_t points = 0;
};

// Maximises pic over independent input laws on a 1/steps grid. Two players
// with one-bit inputs only. Ties go to the smaller alpha, then beta.
GridResult sup_pic_grid(const ProtocolSpace& space, int steps);

}  // namespace piclab::measures
