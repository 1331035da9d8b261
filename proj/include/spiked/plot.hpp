#pragma once

#include <string>
#include <vector>

#include "spiked/harness.hpp"

namespace spiked {

struct PlotRange {
  double x_min, x_max, y_min, y_max;
};

/// Axis ranges: theta in [min - 0.1, max + 0.1], loss in [0, 1.1 * max],
/// where max covers mean + std and the prediction.
PlotRange plot_range(const std::vector<ExperimentReport>& reports);

/// Static SVG of one or more sweeps over the same group: per noise model the
/// trial mean with +-1 std error bars, plus the single-letter prediction
/// curve. Output bytes depend only on the reports.
std::string render_svg(const std::vector<ExperimentReport>& reports);

}  // namespace spiked
