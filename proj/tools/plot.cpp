#include "plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <string>

namespace addcomb::cli {

namespace {

constexpr double kWidth = 640, kHeight = 400, kMargin = 50;
constexpr const char* kColours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

void write_exponent_svg(std::ostream& os, const std::vector<SweepRow>& rows) {
  double xmax = 1, ymin = 1, ymax = 2;
  for (const auto& r : rows) {
    if (std::isnan(r.exponent)) continue;
    xmax = std::max(xmax, std::log2(static_cast<double>(r.size)));
    ymin = std::min(ymin, r.exponent);
    ymax = std::max(ymax, r.exponent);
  }
  auto px = [&](double x) { return kMargin + x / xmax * (kWidth - 2 * kMargin); };
  auto py = [&](double y) { return kHeight - kMargin - (y - ymin) / (ymax - ymin) * (kHeight - 2 * kMargin); };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\"" << kWidth - kMargin << "\" y2=\""
     << kHeight - kMargin << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin << "\" y2=\"" << kHeight - kMargin
     << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12 << "\" text-anchor=\"middle\">log2 |A|</text>\n";
  os << "<text x=\"14\" y=\"" << kHeight / 2 << "\" transform=\"rotate(-90 14 " << kHeight / 2
     << ")\" text-anchor=\"middle\">log(|A+A|+|AA|) / log|A|</text>\n";
  for (double y : {ymin, (ymin + ymax) / 2, ymax}) {
    os << "<text x=\"" << kMargin - 6 << "\" y=\"" << num(py(y) + 4) << "\" text-anchor=\"end\">" << num(y)
       << "</text>\n";
  }
  os << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kHeight - kMargin + 16 << "\" text-anchor=\"end\">"
     << num(xmax) << "</text>\n";

  std::map<std::string, std::size_t> colour;
  for (const auto& r : rows) colour.emplace(r.family, colour.size());
  for (const auto& r : rows) {
    if (std::isnan(r.exponent)) continue;
    os << "<circle cx=\"" << num(px(std::log2(static_cast<double>(r.size)))) << "\" cy=\"" << num(py(r.exponent))
       << "\" r=\"3\" fill=\"" << kColours[colour[r.family] % std::size(kColours)] << "\"/>\n";
  }
  double ly = kMargin;
  for (const auto& [family, i] : colour) {
    os << "<circle cx=\"" << kWidth - kMargin - 120 << "\" cy=\"" << ly << "\" r=\"4\" fill=\""
       << kColours[i % std::size(kColours)] << "\"/>";
    os << "<text x=\"" << kWidth - kMargin - 110 << "\" y=\"" << ly + 4 << "\">" << family << "</text>\n";
    ly += 16;
  }
  os << "</svg>\n";
}

}  // namespace addcomb::cli
