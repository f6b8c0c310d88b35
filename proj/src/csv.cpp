#include "mfg/csv.hpp"

#include <cstdio>
#include <stdexcept>

#include "mfg/grid.hpp"

namespace mfg {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : out_(path) {
  if (!out_) throw std::runtime_error("CsvWriter: cannot open " + path);
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out_ << ',';
    out_ << header[i];
  }
  out_ << '\n';
}

void CsvWriter::sep() {
  if (row_started_) out_ << ',';
  row_started_ = true;
}

CsvWriter& CsvWriter::field(double v) {
  sep();
  out_ << format_g17(v);
  return *this;
}

CsvWriter& CsvWriter::field(long v) {
  sep();
  out_ << v;
  return *this;
}

CsvWriter& CsvWriter::field(const std::string& v) {
  sep();
  out_ << v;
  return *this;
}

void CsvWriter::end_row() {
  out_ << '\n';
  row_started_ = false;
}

void write_measure_csv(const std::string& path, const GridMeasure& mu) {
  CsvWriter csv(path, {"x", "density", "atom0"});
  const Grid g(mu.n());
  for (int i = 0; i < mu.n(); ++i) {
    csv.field(g.node(i)).field(mu.density[i]);
    if (i == 0) csv.field(mu.atom0);
    else csv.field(std::string());
    csv.end_row();
  }
}

}  // namespace mfg
