#pragma once

#include <string>
#include <vector>

#include "glebd/io.hpp"

namespace glebd {

struct PlotSeries {
  std::vector<double> x;
  std::vector<double> y;
  std::string label;
};

// Deterministic line plot: identical inputs produce identical bytes.
// Throws before creating the file when the curve list is empty or a
// series is malformed. Metadata pairs become XML comment lines at the
// top of the document.
void emit_plot(const std::vector<PlotSeries>& curves, const std::string& path,
               const std::string& title = "", const std::string& x_label = "t",
               const std::string& y_label = "", const Metadata& meta = {});

}  // namespace glebd
