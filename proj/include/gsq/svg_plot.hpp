#pragma once

#include <string>
#include <vector>

namespace gsq {

/// Static line chart from one of the experiment CSVs. One polyline per y
/// column; with a group column, one polyline per (y column, group value).
struct PlotSpec {
  std::string csv_path;
  std::string out_path;
  std::string x_col;
  std::vector<std::string> y_cols;
  std::string group_col;  ///< optional
  bool log_y = false;
  std::string title;
};

void write_line_chart(const PlotSpec& spec);

}  // namespace gsq
