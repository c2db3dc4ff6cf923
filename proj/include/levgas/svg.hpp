#pragma once

#include <string>
#include <vector>

#include "levgas/csv.hpp"

namespace levgas {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Self-contained SVG line plot: axes, tick labels, legend, one polyline per
/// series. Single-point series degrade to markers.
std::string render_line_plot(const std::string& title, const std::string& x_label,
                             const std::string& y_label,
                             const std::vector<Series>& series);

void write_svg(const std::string& path, const std::string& svg);

/// Figures from a trajectory CSV: levels-vs-t written to `levels_path`,
/// occupations-vs-t to `occupations_path`. A positive segment length breaks
/// the occupation plot into per-segment files (suffix _seg<k>) so each
/// segment gets its own vertical scale. Returns the paths written. Throws
/// SchemaMismatch when the CSV lacks the trajectory schema or has no rows.
std::vector<std::string> emit_trajectory_figures(const CsvTable& table,
                                                 const std::string& levels_path,
                                                 const std::string& occupations_path,
                                                 double segment_seconds = 0.0);

}  // namespace levgas
