// report.hpp — number formatting, CSV preambles, SVG heatmap and sweep summary

#pragma once

#include <string>

#include "noisent/analysis.hpp"

namespace noisent::cli {

// 12 significant digits, "%.12g"; negative zero prints as 0.
std::string format_number(double v);

// "# units: ..." and "# config: ..." lines, each newline-terminated.
std::string csv_preamble(const std::string& config_echo);

// Long-form CSV: axis1,axis2,concurrence (named after the sweep parameters).
std::string sweep_csv(const SweepGrid& grid, const std::string& config_echo);

// One rect.cell per grid point, linear color scale over [0, max].
std::string heatmap_svg(const SweepGrid& grid);

// Argmax along each axis for every sample of the other axis.
std::string sweep_summary(const SweepGrid& grid);

} // namespace noisent::cli
