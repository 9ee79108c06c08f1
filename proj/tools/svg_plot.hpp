#pragma once

#include <string>
#include <vector>

namespace cmon_cli {

struct Series {
  std::string label;
  std::string color;
  std::vector<double> x;
  std::vector<double> y;
};

struct LinePlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

// Non-finite points are skipped. An empty plot still produces a valid file.
void write_line_plot(const LinePlot& plot, const std::string& path);

// values is row-major by x index (P rows of Q entries), as in the grid CSVs.
void write_heatmap(const std::vector<std::vector<double>>& values, const std::string& title, const std::string& path);

}  // namespace cmon_cli
