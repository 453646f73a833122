#include "grwick/report.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ostream>

#include <json.hpp>

namespace grwick {

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, p);
}

std::string check_record_line(const CheckRecord& r) {
  nlohmann::json j{{"name", r.name},
                   {"lhs", r.lhs},
                   {"rhs", r.rhs},
                   {"holds", r.holds},
                   {"margin", format_double(r.margin)}};
  return j.dump();
}

void ReportWriter::add(CheckRecord r) { records_.push_back(std::move(r)); }

void ReportWriter::add_equality(const std::string& name, bool equal, const std::string& lhs,
                                const std::string& rhs) {
  records_.push_back({name, lhs, rhs, equal, 0.0});
}

void ReportWriter::add_bound(const std::string& name, double lhs, double rhs, bool holds) {
  records_.push_back({name, format_double(lhs), format_double(rhs), holds, rhs - lhs});
}

int ReportWriter::failures() const {
  int n = 0;
  for (const CheckRecord& r : records_)
    if (!r.holds) ++n;
  return n;
}

void ReportWriter::merge(const ReportWriter& other) {
  records_.insert(records_.end(), other.records_.begin(), other.records_.end());
}

void ReportWriter::write_lines(std::ostream& out, bool with_summary) const {
  for (const CheckRecord& r : records_) out << check_record_line(r) << "\n";
  if (with_summary) {
    auto now = std::chrono::system_clock::now();
    nlohmann::json j{{"summary", true},
                     {"total", total()},
                     {"failures", failures()},
                     {"timestamp", std::chrono::duration_cast<std::chrono::milliseconds>(
                                       now.time_since_epoch())
                                       .count()}};
    out << j.dump() << "\n";
  }
}

}  // namespace grwick
