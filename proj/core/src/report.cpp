#include "addcomb/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace addcomb {

namespace {

double big_ratio(const BigInt& lhs, const BigInt& rhs) {
  if (rhs == 0) return lhs == 0 ? 1.0 : std::numeric_limits<double>::infinity();
  return to_double(Rational(lhs, rhs));
}

// CSV field quoting for free-text columns.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

const char* relation_name(Relation r) {
  switch (r) {
    case Relation::Le: return "<=";
    case Relation::Eq: return "=";
    case Relation::Ratio: return "ratio";
  }
  return "?";
}

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Reported: return "reported";
    case Status::Skipped: return "skipped";
  }
  return "?";
}

Row Row::exact_le(std::string check, const BigInt& lhs, const BigInt& rhs, std::string notes) {
  Row r;
  r.check_ = std::move(check);
  r.relation_ = Relation::Le;
  r.status_ = lhs <= rhs ? Status::Pass : Status::Fail;
  r.lhs_ = to_string(lhs);
  r.rhs_ = to_string(rhs);
  r.ratio_ = big_ratio(lhs, rhs);
  r.notes_ = std::move(notes);
  return r;
}

Row Row::exact_eq(std::string check, const BigInt& lhs, const BigInt& rhs, std::string notes) {
  Row r;
  r.check_ = std::move(check);
  r.relation_ = Relation::Eq;
  r.status_ = lhs == rhs ? Status::Pass : Status::Fail;
  r.lhs_ = to_string(lhs);
  r.rhs_ = to_string(rhs);
  r.ratio_ = lhs == rhs ? 1.0 : big_ratio(lhs, rhs);
  r.notes_ = std::move(notes);
  return r;
}

Row Row::ratio(std::string check, double value, std::string lhs, std::string rhs, std::string notes) {
  Row r;
  r.check_ = std::move(check);
  r.relation_ = Relation::Ratio;
  r.status_ = Status::Reported;
  r.lhs_ = std::move(lhs);
  r.rhs_ = std::move(rhs);
  r.ratio_ = value;
  r.notes_ = std::move(notes);
  return r;
}

Row Row::skipped(std::string check, Relation relation, std::string reason) {
  Row r;
  r.check_ = std::move(check);
  r.relation_ = relation;
  r.status_ = Status::Skipped;
  r.ratio_ = std::numeric_limits<double>::quiet_NaN();
  r.notes_ = std::move(reason);
  return r;
}

void VerificationReport::add(std::vector<Row> more) {
  for (auto& r : more) rows.push_back(std::move(r));
}

bool VerificationReport::passed() const {
  return std::none_of(rows.begin(), rows.end(), [](const Row& r) { return r.failed(); });
}

std::size_t VerificationReport::count(Status s) const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [s](const Row& r) { return r.status() == s; }));
}

const Row* VerificationReport::find(const std::string& check) const {
  for (const auto& r : rows)
    if (r.check() == check) return &r;
  return nullptr;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void write_report_csv_header(std::ostream& os) {
  os << "schema_version,instance_id,check,relation,status,lhs,rhs,ratio,notes\n";
}

void write_report_csv_rows(std::ostream& os, const VerificationReport& report) {
  for (const auto& r : report.rows) {
    os << kCsvSchemaVersion << ',' << csv_field(report.instance_id) << ',' << csv_field(r.check()) << ','
       << relation_name(r.relation()) << ',' << status_name(r.status()) << ',' << csv_field(r.lhs()) << ','
       << csv_field(r.rhs()) << ',' << format_double(r.empirical_ratio()) << ',' << csv_field(r.notes())
       << '\n';
  }
}

}  // namespace addcomb
