#include "asymq/csv.hpp"

#include <cmath>
#include <cstdio>

namespace asymq {

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

CsvWriter::CsvWriter(std::ostream& os, std::initializer_list<std::string_view> header) : os_(os) {
  for (auto h : header) cell(h);
  end_row();
}

CsvWriter& CsvWriter::cell(double v) { return cell(std::string_view(format_real(v))); }

CsvWriter& CsvWriter::cell(long v) { return cell(std::string_view(std::to_string(v))); }

CsvWriter& CsvWriter::cell(std::string_view v) {
  if (row_started_) os_ << ',';
  os_ << v;
  row_started_ = true;
  return *this;
}

void CsvWriter::end_row() {
  os_ << '\n';
  row_started_ = false;
}

}  // namespace asymq
