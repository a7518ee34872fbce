#include "piclab/measures/report.h"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "piclab/measures/measures.h"

namespace piclab::measures {

bool MeasureReport::consistent() const {
  return std::abs(ic + pic_random_term - pic) <= tolerance;
}

MeasureReport measure_all(const ProtocolSpace& space, const InputDistribution& mu,
                          const std::optional<model::FunctionFamily>& f, double tolerance) {
  MeasureReport r;
  r.protocol_id = space.protocol().name;
  r.distribution_id = mu.id();
  r.tolerance = tolerance;
  r.cc = cc(space);
  r.acc = acc(space, mu);
  auto dec = pic_decomposition(space, mu);
  r.ic = dec.ic_term;
  r.pic_random_term = dec.random_term;
  r.pic = pic(space, mu);
  if (f) r.privacy_leakage = privacy_leakage(space, mu, *f);
  r.transcript_entropy = transcript_entropy(space, mu);
  r.spy_info = spy_info(space, mu);
  return r;
}

std::string format_bits(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  std::string s = buf;
  if (s == "-0.000000000") s = "0.000000000";
  return s;
}

ReportFields report_fields(const MeasureReport& r) {
  std::vector<std::pair<std::string, std::string>> out{
      {"protocol", r.protocol_id},
      {"distribution", r.distribution_id},
      {"tolerance", [&] {
         char buf[32];
         std::snprintf(buf, sizeof buf, "%g", r.tolerance);
         return std::string(buf);
       }()},
      {"cc", std::to_string(r.cc)},
      {"acc", r.acc.to_string()},
      {"ic", format_bits(r.ic)},
      {"pic", format_bits(r.pic)},
      {"pic_random_term", format_bits(r.pic_random_term)},
  };
  if (r.privacy_leakage) out.emplace_back("privacy_leakage", format_bits(*r.privacy_leakage));
  out.emplace_back("transcript_entropy", format_bits(r.transcript_entropy));
  out.emplace_back("spy_info", format_bits(r.spy_info));
  return out;
}

std::string fields_to_json(const ReportFields& fields, const std::set<std::string>& quoted) {
  std::string out = "{\n";
  for (std::size_t n = 0; n < fields.size(); ++n) {
    const auto& [key, value] = fields[n];
    out += "  " + nlohmann::json(key).dump() + ": " +
           (quoted.count(key) ? nlohmann::json(value).dump() : value);
    out += n + 1 < fields.size() ? ",\n" : "\n";
  }
  return out + "}\n";
}

namespace {

// RFC 4180 quoting for cells holding commas, quotes or line breaks.
std::string csv_cell(const std::string& v) {
  if (v.find_first_of(",\"\n\r") == std::string::npos) return v;
  std::string out = "\"";
  for (char c : v) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string fields_to_csv(const ReportFields& fields) {
  std::string head, row;
  for (std::size_t n = 0; n < fields.size(); ++n) {
    head += (n ? "," : "") + csv_cell(fields[n].first);
    row += (n ? "," : "") + csv_cell(fields[n].second);
  }
  return head + "\n" + row + "\n";
}

std::string fields_to_text(const ReportFields& fields) {
  std::string out;
  for (const auto& [key, value] : fields) out += key + ": " + value + "\n";
  return out;
}

// Written by hand so numbers keep their fixed 9-decimal form; acc stays an
// exact string.
std::string to_json(const MeasureReport& r) {
  return fields_to_json(report_fields(r), {"protocol", "distribution", "acc"});
}

std::string to_csv(const MeasureReport& r) { return fields_to_csv(report_fields(r)); }

std::string to_text(const MeasureReport& r) { return fields_to_text(report_fields(r)); }

}  // namespace piclab::measures
