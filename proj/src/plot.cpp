#include "spiked/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "spiked/errors.hpp"

namespace spiked {
namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 55.0;

std::string fixed(double x, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

const char* colour_for(NoiseModel model) {
  return model == NoiseModel::truth_or_haar ? "#1f77b4" : "#ff7f0e";
}

// 1, 2 or 5 times a power of ten, giving about `target` intervals.
double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (m * mag >= raw) return m * mag;
  return 10.0 * mag;
}

}  // namespace

PlotRange plot_range(const std::vector<ExperimentReport>& reports) {
  double tmin = INFINITY, tmax = -INFINITY, ymax = 0.0;
  for (const auto& r : reports) {
    for (const auto& s : r.summaries) {
      tmin = std::min(tmin, s.theta);
      tmax = std::max(tmax, s.theta);
      ymax = std::max(ymax, s.mean_loss + s.std_loss);
      if (s.prediction_mean) ymax = std::max(ymax, *s.prediction_mean);
    }
  }
  if (!std::isfinite(tmin)) throw ValidationError("cannot plot a report without theta values");
  if (ymax <= 0.0) ymax = 1.0;
  return {tmin - 0.1, tmax + 0.1, 0.0, ymax * 1.1};
}

std::string render_svg(const std::vector<ExperimentReport>& reports) {
  if (reports.empty()) throw ValidationError("nothing to plot");
  const GroupKind group = reports.front().config.group;
  for (const auto& r : reports)
    if (!(r.config.group == group)) throw ValidationError("plotted reports must share one group");
  const PlotRange range = plot_range(reports);

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double t) { return kLeft + (t - range.x_min) / (range.x_max - range.x_min) * pw; };
  auto py = [&](double y) { return kTop + ph - (y - range.y_min) / (range.y_max - range.y_min) * ph; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
  svg << "<text x=\"" << fixed(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">G = "
      << group.name() << ", n = " << reports.front().config.n << ", loss = " << reports.front().config.loss.name()
      << "</text>\n";

  // axes
  svg << "<g stroke=\"black\" stroke-width=\"1\">\n";
  svg << "<line x1=\"" << fixed(kLeft) << "\" y1=\"" << fixed(kTop + ph) << "\" x2=\"" << fixed(kLeft + pw)
      << "\" y2=\"" << fixed(kTop + ph) << "\"/>\n";
  svg << "<line x1=\"" << fixed(kLeft) << "\" y1=\"" << fixed(kTop) << "\" x2=\"" << fixed(kLeft) << "\" y2=\""
      << fixed(kTop + ph) << "\"/>\n";
  svg << "</g>\n";

  const double xstep = nice_step(range.x_max - range.x_min, 6);
  svg << "<g text-anchor=\"middle\">\n";
  for (double t = std::ceil(range.x_min / xstep) * xstep; t <= range.x_max + 1e-9; t += xstep) {
    svg << "<line x1=\"" << fixed(px(t)) << "\" y1=\"" << fixed(kTop + ph) << "\" x2=\"" << fixed(px(t))
        << "\" y2=\"" << fixed(kTop + ph + 5) << "\" stroke=\"black\"/>";
    svg << "<text x=\"" << fixed(px(t)) << "\" y=\"" << fixed(kTop + ph + 18) << "\">" << fixed(t, 1)
        << "</text>\n";
  }
  svg << "</g>\n";
  const double ystep = nice_step(range.y_max - range.y_min, 5);
  svg << "<g text-anchor=\"end\">\n";
  for (double y = 0.0; y <= range.y_max + 1e-12; y += ystep) {
    svg << "<line x1=\"" << fixed(kLeft - 5) << "\" y1=\"" << fixed(py(y)) << "\" x2=\"" << fixed(kLeft)
        << "\" y2=\"" << fixed(py(y)) << "\" stroke=\"black\"/>";
    svg << "<text x=\"" << fixed(kLeft - 8) << "\" y=\"" << fixed(py(y) + 4) << "\">" << fixed(y, 3)
        << "</text>\n";
  }
  svg << "</g>\n";
  svg << "<text x=\"" << fixed(kLeft + pw / 2) << "\" y=\"" << fixed(kHeight - 12)
      << "\" text-anchor=\"middle\">theta</text>\n";
  svg << "<text x=\"16\" y=\"" << fixed(kTop + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << fixed(kTop + ph / 2) << ")\">average loss</text>\n";

  // prediction curve from the first report that carries predictions
  for (const auto& r : reports) {
    std::string points;
    for (const auto& s : r.summaries) {
      if (!s.prediction_mean) continue;
      if (!points.empty()) points += ' ';
      points += fixed(px(s.theta)) + "," + fixed(py(*s.prediction_mean));
    }
    if (points.empty()) continue;
    svg << "<polyline class=\"prediction\" fill=\"none\" stroke=\"#2ca02c\" stroke-width=\"2\" points=\"" << points
        << "\"/>\n";
    break;
  }

  for (const auto& r : reports) {
    const char* colour = colour_for(r.config.noise_model);
    svg << "<g class=\"" << to_string(r.config.noise_model) << "\" stroke=\"" << colour << "\" fill=\"" << colour
        << "\">\n";
    for (const auto& s : r.summaries) {
      const double x = px(s.theta);
      const double lo = py(std::max(range.y_min, s.mean_loss - s.std_loss));
      const double hi = py(s.mean_loss + s.std_loss);
      svg << "<line class=\"errorbar\" x1=\"" << fixed(x) << "\" y1=\"" << fixed(lo) << "\" x2=\"" << fixed(x)
          << "\" y2=\"" << fixed(hi) << "\"/>";
      svg << "<circle cx=\"" << fixed(x) << "\" cy=\"" << fixed(py(s.mean_loss)) << "\" r=\"3\"/>\n";
    }
    svg << "</g>\n";
  }

  // legend
  double ly = kTop + 10;
  const double lx = kLeft + pw - 170;
  svg << "<g font-size=\"11\">\n";
  svg << "<line x1=\"" << fixed(lx) << "\" y1=\"" << fixed(ly) << "\" x2=\"" << fixed(lx + 20) << "\" y2=\""
      << fixed(ly) << "\" stroke=\"#2ca02c\" stroke-width=\"2\"/><text x=\"" << fixed(lx + 26) << "\" y=\""
      << fixed(ly + 4) << "\">single-letter prediction</text>\n";
  for (const auto& r : reports) {
    ly += 16;
    svg << "<circle cx=\"" << fixed(lx + 10) << "\" cy=\"" << fixed(ly) << "\" r=\"3\" fill=\""
        << colour_for(r.config.noise_model) << "\"/><text x=\"" << fixed(lx + 26) << "\" y=\"" << fixed(ly + 4)
        << "\">" << to_string(r.config.noise_model) << "</text>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

}  // namespace spiked
