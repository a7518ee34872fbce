#include "piclab/compression/lcp.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace piclab::compression {

namespace {

std::size_t first_difference(const Bits& x, const Bits& y) {
  std::size_t m = std::min(x.size(), y.size());
  std::size_t n = 0;
  while (n < m && x[n] == y[n]) ++n;
  return n;
}

// One hash bit: parity of the positions of `prefix` selected by fresh
// shared bits. Both parties draw the same bits from the tape, so one draw
// serves both strings.
bool prefixes_hash_equal(const Bits& x, const Bits& y, std::size_t len, int hash_bits,
                         SharedTape& tape) {
  bool equal = true;
  for (int h = 0; h < hash_bits; ++h) {
    bool hx = false, hy = false;
    for (std::size_t n = 0; n < len; ++n) {
      if (tape.next_bit()) {
        hx ^= x[n] == '1';
        hy ^= y[n] == '1';
      }
    }
    equal = equal && hx == hy;
  }
  return equal;
}

}  // namespace

int ceil_log2(std::uint64_t v) {
  if (v == 0) throw std::invalid_argument("ceil_log2 of 0");
  int b = 0;
  while ((std::uint64_t{1} << b) < v) ++b;
  return b;
}

LcpResult lcp_exact(const Bits& x, const Bits& y) {
  LcpResult r;
  const std::size_t n = std::max(x.size(), y.size());
  const auto w = static_cast<std::size_t>(ceil_log2(n + 2));
  r.bits = 3 * w;
  r.index = first_difference(x, y);
  if (x.size() != y.size()) {
    r.kind = LcpResult::Kind::kLengthMismatch;
  } else if (r.index < x.size()) {
    r.kind = LcpResult::Kind::kDiffersAt;
  } else {
    r.kind = LcpResult::Kind::kEqual;
  }
  return r;
}

LcpResult lcp_randomized(const Bits& x, const Bits& y, double eps, SharedTape& tape) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("lcp error must be in (0, 1)");
  LcpResult r;
  const std::size_t n = std::max(x.size(), y.size());
  r.bits = 2 * static_cast<std::size_t>(ceil_log2(n + 2));
  const std::size_t m = std::min(x.size(), y.size());
  const int tests = ceil_log2(m + 1);
  const int hash_bits =
      std::max(1, static_cast<int>(std::ceil(std::log2(std::max(1, tests) / eps))));

  // Largest L in [0, m] with equal length-L prefixes, assuming tests are
  // right; invariant: prefix lo equal, prefix hi+1 differs (or hi = m).
  std::size_t lo = 0, hi = m;
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo + 1) / 2;
    bool same = prefixes_hash_equal(x, y, mid, hash_bits, tape);
    r.bits += static_cast<std::size_t>(hash_bits) + 1;
    if (same) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  r.index = lo;
  if (x.size() != y.size()) {
    r.kind = LcpResult::Kind::kLengthMismatch;
  } else if (lo < m) {
    r.kind = LcpResult::Kind::kDiffersAt;
  } else {
    r.kind = LcpResult::Kind::kEqual;
  }
  return r;
}

LcpBox LcpBox::randomized(double eps, std::uint64_t seed) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("lcp error must be in (0, 1)");
  return LcpBox(true, eps, seed);
}

LcpResult LcpBox::operator()(const Bits& x, const Bits& y) {
  ++calls_;
  return randomized_ ? lcp_randomized(x, y, eps_, tape_) : lcp_exact(x, y);
}

}  // namespace piclab::compression
