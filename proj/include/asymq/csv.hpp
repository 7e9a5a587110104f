#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace asymq {

// 12 significant digits, the format every CSV emitter uses for reals.
std::string format_real(double v);

// Comma-separated rows with a one-line header.
class CsvWriter {
 public:
  CsvWriter(std::ostream& os, std::initializer_list<std::string_view> header);

  CsvWriter& cell(double v);
  CsvWriter& cell(long v);
  CsvWriter& cell(int v) { return cell(static_cast<long>(v)); }
  CsvWriter& cell(std::string_view v);
  void end_row();

 private:
  std::ostream& os_;
  bool row_started_ = false;
};

}  // namespace asymq
