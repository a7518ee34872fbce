#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "piclab/info/rational.h"
#include "piclab/measures/space.h"

namespace piclab::measures {

// Values in bits. cc is exact; acc is an exact rational; the rest carry
// double rounding from the logarithms.
struct MeasureReport {
  std::string protocol_id;
  std::string distribution_id;
  double tolerance = 1e-9;

  std::size_t cc = 0;
  info::Rational acc;
  double ic = 0.0;
  double pic = 0.0;
  double pic_random_term = 0.0;
  std::optional<double> privacy_leakage;
  double transcript_entropy = 0.0;
  double spy_info = 0.0;

  // ic + pic_random_term = pic within tolerance.
  bool consistent() const;
};

MeasureReport measure_all(const ProtocolSpace& space, const InputDistribution& mu,
                          const std::optional<model::FunctionFamily>& f, double tolerance);

// Fixed-point with 9 decimals; negative zero prints as 0.
std::string format_bits(double v);

using ReportFields = std::vector<std::pair<std::string, std::string>>;

// Key/value pairs in their stable order, already formatted.
ReportFields report_fields(const MeasureReport& r);

// Flat JSON object; values of the keys in `quoted` become JSON strings, the
// rest are written verbatim.
std::string fields_to_json(const ReportFields& fields, const std::set<std::string>& quoted);
std::string fields_to_csv(const ReportFields& fields);
std::string fields_to_text(const ReportFields& fields);

std::string to_json(const MeasureReport& r);
std::string to_csv(const MeasureReport& r);
std::string to_text(const MeasureReport& r);

}  // namespace piclab::measures
