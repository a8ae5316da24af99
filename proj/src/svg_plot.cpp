#include "gsq/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace gsq {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(line);
  while (std::getline(ss, item, ',')) out.push_back(item);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

int column_index(const std::vector<std::string>& header,
                 const std::string& name) {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end())
    throw std::runtime_error("plot: no column named '" + name + "'");
  return static_cast<int>(it - header.begin());
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

}  // namespace

void write_line_chart(const PlotSpec& spec) {
  std::ifstream in(spec.csv_path);
  if (!in) throw std::runtime_error("plot: cannot open " + spec.csv_path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("plot: empty CSV");
  const auto header = split_csv(line);
  const int xi = column_index(header, spec.x_col);
  std::vector<int> yis;
  for (const auto& y : spec.y_cols) yis.push_back(column_index(header, y));
  const int gi =
      spec.group_col.empty() ? -1 : column_index(header, spec.group_col);

  // series key: "<ycol>" or "<ycol> <group>=<value>"
  std::map<std::string, std::vector<std::pair<double, double>>> series;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    double x;
    try {
      x = std::stod(cells.at(xi));
    } catch (...) {
      continue;
    }
    for (std::size_t j = 0; j < yis.size(); ++j) {
      const std::string& cell = cells.at(yis[j]);
      if (cell.empty()) continue;
      double y;
      try {
        y = std::stod(cell);
      } catch (...) {
        continue;
      }
      if (spec.log_y && y <= 0.0) continue;
      std::string key = spec.y_cols[j];
      if (gi >= 0) key += " " + spec.group_col + "=" + cells.at(gi);
      series[key].push_back({x, spec.log_y ? std::log10(y) : y});
    }
  }
  if (series.empty()) throw std::runtime_error("plot: no data points");

  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (auto& [key, pts] : series) {
    std::sort(pts.begin(), pts.end());
    for (const auto& [x, y] : pts) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (xmax <= xmin) xmax = xmin + 1.0;
  if (ymax <= ymin) ymax = ymin + 1.0;

  const double width = 720, height = 480;
  const double ml = 70, mr = 170, mt = 40, mb = 50;
  auto px = [&](double x) {
    return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr);
  };
  auto py = [&](double y) {
    return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb);
  };

  std::ofstream out(spec.out_path, std::ios::binary);
  if (!out) throw std::runtime_error("plot: cannot write " + spec.out_path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" font-family=\"sans-serif\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!spec.title.empty())
    out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-size=\"15\">" << spec.title << "</text>\n";

  // axes and ticks
  out << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\""
      << width - mr << "\" y2=\"" << height - mb
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
      << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double xv = xmin + (xmax - xmin) * t / 4.0;
    const double yv = ymin + (ymax - ymin) * t / 4.0;
    out << "<text x=\"" << px(xv) << "\" y=\"" << height - mb + 18
        << "\" text-anchor=\"middle\" font-size=\"11\">" << fmt(xv)
        << "</text>\n";
    const std::string ylabel =
        spec.log_y ? ("1e" + fmt(yv)) : fmt(yv);
    out << "<text x=\"" << ml - 8 << "\" y=\"" << py(yv) + 4
        << "\" text-anchor=\"end\" font-size=\"11\">" << ylabel
        << "</text>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << py(yv) << "\" x2=\""
        << width - mr << "\" y2=\"" << py(yv)
        << "\" stroke=\"#dddddd\"/>\n";
  }
  out << "<text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 12
      << "\" text-anchor=\"middle\" font-size=\"12\">" << spec.x_col
      << "</text>\n";

  int ci = 0;
  double legend_y = mt + 10;
  for (const auto& [key, pts] : series) {
    const char* color = kPalette[ci % 8];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : pts) out << fmt(px(x)) << "," << fmt(py(y)) << " ";
    out << "\"/>\n";
    for (const auto& [x, y] : pts)
      out << "<circle cx=\"" << fmt(px(x)) << "\" cy=\"" << fmt(py(y))
          << "\" r=\"2.2\" fill=\"" << color << "\"/>\n";
    out << "<text x=\"" << width - mr + 12 << "\" y=\"" << legend_y
        << "\" font-size=\"11\" fill=\"" << color << "\">" << key
        << "</text>\n";
    legend_y += 16;
    ++ci;
  }
  out << "</svg>\n";
}

}  // namespace gsq
