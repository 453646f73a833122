#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace grwick {

// One verified check: an inequality lhs <= rhs (or an equality, in which
// case margin is 0 and lhs/rhs describe the two routes). Values are carried
// as preformatted strings so records serialize identically across runs.
struct CheckRecord {
  std::string name;
  std::string lhs;
  std::string rhs;
  bool holds = false;
  double margin = 0.0;  // rhs - lhs for bounds; 0 for equalities
};

// Shortest-roundtrip decimal form; deterministic for a given platform.
std::string format_double(double v);

std::string check_record_line(const CheckRecord& r);

// Collects records and writes them as JSON lines, one record per line,
// followed by a single summary record. Only the summary carries volatile
// fields (the timestamp), so two runs with equal inputs differ at most in
// their final line.
class ReportWriter {
public:
  void add(CheckRecord r);
  void add_equality(const std::string& name, bool equal, const std::string& lhs = "",
                    const std::string& rhs = "");
  void add_bound(const std::string& name, double lhs, double rhs, bool holds);

  int total() const { return static_cast<int>(records_.size()); }
  int failures() const;
  const std::vector<CheckRecord>& records() const { return records_; }

  // Appends another writer's records in order (for merging worker output).
  void merge(const ReportWriter& other);

  void write_lines(std::ostream& out, bool with_summary = true) const;

private:
  std::vector<CheckRecord> records_;
};

}  // namespace grwick
