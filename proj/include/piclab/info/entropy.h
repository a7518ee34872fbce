#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "piclab/info/joint_distribution.h"

namespace piclab::info {

// Residue below this magnitude in a mutual information is rounding noise.
inline constexpr double kClampResidue = 1e-12;

double entropy(const JointDistribution& d, const Selector& a);
double cond_entropy(const JointDistribution& d, const Selector& a, const Selector& given);
double mutual_info(const JointDistribution& d, const Selector& a, const Selector& b,
                   const std::optional<Selector>& given = std::nullopt);

// Adds new_name = f(a). f must be defined on every projected tuple in the
// support.
JointDistribution apply_function(const JointDistribution& d, const Selector& a,
                                 const std::map<std::vector<Value>, Value>& f,
                                 const std::string& new_name);

// Entropy of the class distribution of `p` under `weights`. Zero weights are
// allowed here so that one partition can be reused across distributions that
// share an outcome list.
double entropy(const Partition& p, std::span<const Rational> weights);

// Same, with outcome masses given as integer numerators over `denominator`.
double entropy(const Partition& p, std::span<const std::int64_t> masses,
               std::int64_t denominator);

// I(A;B|C) from the four partitions A∪C, B∪C, A∪B∪C and C.
double mutual_info(const Partition& ac, const Partition& bc, const Partition& abc,
                   const Partition& c, std::span<const Rational> weights);

double clamp_residue(double v);

}  // namespace piclab::info
