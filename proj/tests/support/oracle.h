#pragma once

#include <functional>
#include <optional>
#include <string>

#include "piclab/measures/distribution.h"
#include "piclab/measures/space.h"

namespace piclab::test_support {

// Brute-force reference values. Every quantity is read straight off the
// execution table as a sum over (input, tape) runs, with string-keyed
// marginals in doubles; nothing here goes through the info library.
class Oracle {
 public:
  Oracle(const measures::ProtocolSpace& space, const measures::InputDistribution& mu,
         std::optional<model::FunctionFamily> f = std::nullopt);

  using Key = std::function<std::string(const model::Execution&)>;

  double entropy(const Key& a) const;
  // I(A;B|C) = H(AC) + H(BC) - H(ABC) - H(C).
  double mutual_info(const Key& a, const Key& b, const Key& c) const;

  double ic_received() const;        // Σ I(X_-i ; Π_i | X_i R_i R^p)
  double ic_bidirectional() const;   // same with Π_i↔ received then sent
  double pic() const;                // Σ I(X_-i ; Π_i R_-i | X_i R_i R^p)
  double leakage() const;            // Σ I(X_-i ; Π_i | X_i R_i R^p f_i(X))
  double spy() const;                // Σ I(X_i ; Π_i↔)
  double transcript_entropy() const; // H(Π | X R^p)
  double acc() const;

 private:
  const measures::ProtocolSpace* space_;
  const measures::InputDistribution* mu_;
  std::optional<model::FunctionFamily> f_;
};

}  // namespace piclab::test_support
