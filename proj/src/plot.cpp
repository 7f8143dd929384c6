#include "rfad/eval.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <map>

namespace rfad {
namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

constexpr std::array<const char *, 8> kPalette = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                                  "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

} // namespace

std::string snr_plot_svg(const SweepTable &table) {
  constexpr double width = 640, height = 400, left = 60, right = 130, top = 30, bottom = 50;
  const double plot_w = width - left - right, plot_h = height - top - bottom;

  std::map<int, std::vector<std::pair<double, double>>> lines;
  double lo = 0.0, hi = 1.0;
  bool first = true;
  for (const auto &r : table.rows) {
    if (!r.snr_db) continue;
    lines[r.k].emplace_back(*r.snr_db, r.test_accuracy);
    lo = first ? *r.snr_db : std::min(lo, *r.snr_db);
    hi = first ? *r.snr_db : std::max(hi, *r.snr_db);
    first = false;
  }
  if (hi <= lo) hi = lo + 1.0;
  auto x = [&](double snr) { return left + (snr - lo) / (hi - lo) * plot_w; };
  auto y = [&](double acc) { return top + (1.0 - acc) * plot_h; };

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" + num(height) +
                    "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + num(left + plot_w / 2) + "\" y=\"18\" text-anchor=\"middle\">Accuracy vs SNR</text>\n";
  // axes
  svg += "<line x1=\"" + num(left) + "\" y1=\"" + num(top + plot_h) + "\" x2=\"" + num(left + plot_w) + "\" y2=\"" +
         num(top + plot_h) + "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + num(left) + "\" y1=\"" + num(top) + "\" x2=\"" + num(left) + "\" y2=\"" + num(top + plot_h) +
         "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 5; ++t) {
    const double acc = t / 5.0;
    svg += "<text x=\"" + num(left - 6) + "\" y=\"" + num(y(acc) + 4) + "\" text-anchor=\"end\">" + num(acc) + "</text>\n";
    svg += "<line x1=\"" + num(left) + "\" y1=\"" + num(y(acc)) + "\" x2=\"" + num(left + plot_w) + "\" y2=\"" +
           num(y(acc)) + "\" stroke=\"#ddd\"/>\n";
  }
  for (int t = 0; t <= 4; ++t) {
    const double snr = lo + (hi - lo) * t / 4.0;
    svg += "<text x=\"" + num(x(snr)) + "\" y=\"" + num(top + plot_h + 16) + "\" text-anchor=\"middle\">" + num(snr) +
           "</text>\n";
  }
  svg += "<text x=\"" + num(left + plot_w / 2) + "\" y=\"" + num(height - 10) + "\" text-anchor=\"middle\">SNR (dB)</text>\n";
  svg += "<text transform=\"translate(16," + num(top + plot_h / 2) + ") rotate(-90)\" text-anchor=\"middle\">Accuracy</text>\n";

  std::size_t index = 0;
  for (auto &[k, pts] : lines) {
    std::sort(pts.begin(), pts.end());
    const char *colour = kPalette[index % kPalette.size()];
    std::string points;
    for (const auto &[snr, acc] : pts) points += num(x(snr)) + "," + num(y(acc)) + " ";
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(colour) + "\" stroke-width=\"2\" points=\"" + points + "\"/>\n";
    const double ly = top + 10 + 18.0 * static_cast<double>(index);
    svg += "<line x1=\"" + num(left + plot_w + 15) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(left + plot_w + 35) +
           "\" y2=\"" + num(ly) + "\" stroke=\"" + colour + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + num(left + plot_w + 40) + "\" y=\"" + num(ly + 4) + "\">k = " + std::to_string(k) + "</text>\n";
    ++index;
  }
  svg += "</svg>\n";
  return svg;
}

} // namespace rfad
