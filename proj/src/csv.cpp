#include "evopoisson/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace evopoisson {
namespace {

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

}  // namespace

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_csv(std::ostream& out, const Table& table) {
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << cells[i];
    }
    out << '\n';
  };
  line(table.header);
  for (const auto& row : table.rows) line(row);
}

void write_svg(std::ostream& out, const std::string& title, const std::string& x_label,
               const std::string& y_label, const std::vector<Series>& series) {
  constexpr double width = 640, height = 420, margin = 56;
  double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
  double y_min = x_min, y_max = -x_min;
  for (const auto& s : series) {
    for (double x : s.xs) x_min = std::min(x_min, x), x_max = std::max(x_max, x);
    for (double y : s.ys) y_min = std::min(y_min, y), y_max = std::max(y_max, y);
  }
  if (!(x_max > x_min)) x_max = x_min + 1;
  if (!(y_max > y_min)) y_max = y_min + 1;
  auto sx = [&](double x) { return margin + (x - x_min) / (x_max - x_min) * (width - 2 * margin); };
  auto sy = [&](double y) { return height - margin - (y - y_min) / (y_max - y_min) * (height - 2 * margin); };

  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << escape_xml(title)
      << "</text>\n";
  out << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin << "\" y2=\""
      << height - margin << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\"" << height - margin
      << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"" << height - 16 << "\" text-anchor=\"middle\" font-size=\"12\">"
      << escape_xml(x_label) << " [" << format_number(x_min) << ", " << format_number(x_max) << "]</text>\n";
  out << "<text x=\"16\" y=\"" << height / 2 << "\" font-size=\"12\" transform=\"rotate(-90 16 " << height / 2
      << ")\" text-anchor=\"middle\">" << escape_xml(y_label) << " [" << format_number(y_min) << ", "
      << format_number(y_max) << "]</text>\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const char* color = colors[i % std::size(colors)];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t j = 0; j < std::min(s.xs.size(), s.ys.size()); ++j) {
      if (j) out << ' ';
      out << format_number(sx(s.xs[j])) << ',' << format_number(sy(s.ys[j]));
    }
    out << "\"/>\n";
    out << "<text x=\"" << width - margin - 4 << "\" y=\"" << margin + 14 * (i + 1)
        << "\" text-anchor=\"end\" font-size=\"11\" fill=\"" << color << "\">" << escape_xml(s.name)
        << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace evopoisson
