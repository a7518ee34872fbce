#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "piclab/model/protocol.h"

namespace piclab::compression {

using model::Bits;

struct LcpResult {
  enum class Kind { kEqual, kDiffersAt, kLengthMismatch };
  Kind kind = Kind::kEqual;
  // First index where the strings differ; for a length mismatch with one
  // string a prefix of the other, the shorter length.
  std::size_t index = 0;
  std::size_t bits = 0;  // communication charged for the call

  bool equal() const { return kind == Kind::kEqual; }
};

// ⌈log2(v)⌉ for v >= 1.
int ceil_log2(std::uint64_t v);

// Exact box. Charges 2·⌈log2(n+2)⌉ bits to exchange lengths and ⌈log2(n+2)⌉
// for the answer, n the longer length.
LcpResult lcp_exact(const Bits& x, const Bits& y);

// Public randomness shared by the two callers.
class SharedTape {
 public:
  explicit SharedTape(std::uint64_t seed) : rng_(seed) {}
  bool next_bit() { return (rng_() & 1u) != 0; }

 private:
  std::mt19937_64 rng_;
};

// Binary search for the longest equal prefix, each equality test comparing
// inner-product hashes over GF(2) built from the shared tape. With
// ⌈log2(m+1)⌉ tests on minimum length m, each hash has
// ⌈log2(tests/eps)⌉ bits so the call errs with probability at most eps.
// Lengths are exchanged exactly first.
LcpResult lcp_randomized(const Bits& x, const Bits& y, double eps, SharedTape& tape);

// Box used by the compressor: exact, or randomized with a per-call error.
class LcpBox {
 public:
  static LcpBox exact() { return LcpBox(false, 0.0, 0); }
  static LcpBox randomized(double eps, std::uint64_t seed);

  LcpResult operator()(const Bits& x, const Bits& y);
  bool is_exact() const { return !randomized_; }
  double eps() const { return eps_; }
  std::size_t calls() const { return calls_; }

 private:
  LcpBox(bool randomized, double eps, std::uint64_t seed)
      : randomized_(randomized), eps_(eps), tape_(seed) {}

  bool randomized_;
  double eps_;
  SharedTape tape_;
  std::size_t calls_ = 0;
};

}  // namespace piclab::compression
