#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "mfg/measure.hpp"

namespace mfg {

/// CSV writer: header row, '.' decimal point, 17 significant digits so runs
/// are reproducible byte for byte.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);

  CsvWriter& field(double v);
  CsvWriter& field(long v);
  CsvWriter& field(int v) { return field(static_cast<long>(v)); }
  CsvWriter& field(const std::string& v);
  void end_row();

 private:
  std::ofstream out_;
  bool row_started_ = false;
  void sep();
};

std::string format_g17(double v);

/// Measure dump: columns (x, density, atom0); the atom mass appears in the
/// first data row only.
void write_measure_csv(const std::string& path, const GridMeasure& mu);

}  // namespace mfg
