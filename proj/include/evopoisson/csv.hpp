#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace evopoisson {

/// 12 significant digits, shortest form ("%.12g").
std::string format_number(double v);

/// Header plus rows of preformatted cells.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

void write_csv(std::ostream& out, const Table& table);

struct Series {
  std::string name;
  std::vector<double> xs;
  std::vector<double> ys;
};

/// Minimal polyline chart; one polyline per series.
void write_svg(std::ostream& out, const std::string& title, const std::string& x_label,
               const std::string& y_label, const std::vector<Series>& series);

}  // namespace evopoisson
