#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "addcomb/types.hpp"

namespace addcomb {

inline constexpr int kCsvSchemaVersion = 1;

// '=' and explicit-constant '<=' rows carry a verdict; Ratio rows stand for
// claims with unknown implied constants and only ever report a number.
enum class Relation { Le, Eq, Ratio };
enum class Status { Pass, Fail, Reported, Skipped };

const char* relation_name(Relation r);
const char* status_name(Status s);

class Row {
 public:
  // Verdict is computed here from exact integers; callers cannot set it.
  static Row exact_le(std::string check, const BigInt& lhs, const BigInt& rhs, std::string notes = {});
  static Row exact_eq(std::string check, const BigInt& lhs, const BigInt& rhs, std::string notes = {});
  static Row ratio(std::string check, double value, std::string lhs, std::string rhs, std::string notes = {});
  static Row skipped(std::string check, Relation relation, std::string reason);

  const std::string& check() const { return check_; }
  Relation relation() const { return relation_; }
  Status status() const { return status_; }
  const std::string& lhs() const { return lhs_; }
  const std::string& rhs() const { return rhs_; }
  double empirical_ratio() const { return ratio_; }
  const std::string& notes() const { return notes_; }

  bool carries_verdict() const { return status_ == Status::Pass || status_ == Status::Fail; }
  bool failed() const { return status_ == Status::Fail; }

 private:
  Row() = default;

  std::string check_;
  Relation relation_ = Relation::Ratio;
  Status status_ = Status::Reported;
  std::string lhs_;
  std::string rhs_;
  double ratio_ = 0.0;
  std::string notes_;
};

struct VerificationReport {
  std::string instance_id;
  std::vector<Row> rows;

  void add(Row row) { rows.push_back(std::move(row)); }
  void add(std::vector<Row> more);
  bool passed() const;
  std::size_t count(Status s) const;
  // First row with the given check name, or nullptr.
  const Row* find(const std::string& check) const;
};

// Fixed-precision, locale-independent rendering used in every CSV.
std::string format_double(double v);

void write_report_csv_header(std::ostream& os);
void write_report_csv_rows(std::ostream& os, const VerificationReport& report);

}  // namespace addcomb
