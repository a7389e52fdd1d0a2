#include "tlsel/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace tlsel {

namespace {

constexpr int kWidth = 800;
constexpr int kHeight = 280;
constexpr int kMarginLeft = 50;
constexpr int kMarginRight = 15;
constexpr int kMarginTop = 30;
constexpr int kMarginBottom = 35;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

void open_svg(std::ostringstream& s, const std::string& title) {
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
    << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
    << kHeight << "\">\n";
  s << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" fill=\"white\"/>\n";
  s << "<text x=\"" << kMarginLeft << "\" y=\"18\" font-family=\"sans-serif\" "
    << "font-size=\"13\">" << title << "</text>\n";
}

void axes(std::ostringstream& s) {
  const int x0 = kMarginLeft, x1 = kWidth - kMarginRight;
  const int y0 = kHeight - kMarginBottom, y1 = kMarginTop;
  s << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x1
    << "\" y2=\"" << y0 << "\" stroke=\"#444\" stroke-width=\"1\"/>\n";
  s << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x0
    << "\" y2=\"" << y1 << "\" stroke=\"#444\" stroke-width=\"1\"/>\n";
}

}  // namespace

std::string daily_counts_svg(const DailyCountSeries& series,
                             const std::vector<Day>& marker_days,
                             const std::string& title) {
  if (series.size() == 0) throw std::invalid_argument("empty series");
  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  const double max_count =
      std::max(1, series.counts.maxCoeff());
  const int n = series.size();

  const auto x_at = [&](int i) {
    return kMarginLeft + (n == 1 ? plot_w / 2
                                 : plot_w * i / static_cast<double>(n - 1));
  };
  const auto y_at = [&](double c) {
    return kHeight - kMarginBottom - plot_h * c / max_count;
  };

  std::ostringstream s;
  open_svg(s, title);
  axes(s);

  for (Day d : marker_days) {
    const int i = d - series.start_day;
    if (i < 0 || i >= n) continue;
    s << "<line x1=\"" << num(x_at(i)) << "\" y1=\"" << kMarginTop
      << "\" x2=\"" << num(x_at(i)) << "\" y2=\""
      << kHeight - kMarginBottom
      << "\" stroke=\"crimson\" stroke-width=\"1\" stroke-dasharray=\"4,3\"/>"
      << "\n";
  }

  s << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" "
       "points=\"";
  for (int i = 0; i < n; ++i) {
    if (i) s << ' ';
    s << num(x_at(i)) << ',' << num(y_at(series.counts[i]));
  }
  s << "\"/>\n";

  s << "<text x=\"8\" y=\"" << kMarginTop + 4
    << "\" font-family=\"sans-serif\" font-size=\"11\">"
    << static_cast<int>(max_count) << "</text>\n";
  s << "<text x=\"" << kMarginLeft << "\" y=\"" << kHeight - 12
    << "\" font-family=\"sans-serif\" font-size=\"11\">"
    << series.start_day.str() << "</text>\n";
  s << "<text x=\"" << kWidth - kMarginRight - 70 << "\" y=\""
    << kHeight - 12 << "\" font-family=\"sans-serif\" font-size=\"11\">"
    << series.day_at(n - 1).str() << "</text>\n";
  s << "</svg>\n";
  return s.str();
}

std::string histogram_svg(const std::vector<double>& values, int bins,
                          const std::string& title) {
  if (values.empty()) throw std::invalid_argument("no values");
  if (bins < 1) throw std::invalid_argument("bins must be >= 1");
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double width = std::max(*hi_it - lo, 1e-12);

  std::vector<int> counts(static_cast<std::size_t>(bins), 0);
  for (double v : values) {
    int b = static_cast<int>((v - lo) / width * bins);
    b = std::clamp(b, 0, bins - 1);
    ++counts[static_cast<std::size_t>(b)];
  }
  const double max_count =
      *std::max_element(counts.begin(), counts.end());

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  const double bar_w = plot_w / bins;

  std::ostringstream s;
  open_svg(s, title);
  axes(s);
  for (int b = 0; b < bins; ++b) {
    const double h =
        plot_h * counts[static_cast<std::size_t>(b)] / max_count;
    s << "<rect x=\"" << num(kMarginLeft + b * bar_w + 1) << "\" y=\""
      << num(kHeight - kMarginBottom - h) << "\" width=\""
      << num(std::max(bar_w - 2, 1.0)) << "\" height=\"" << num(h)
      << "\" fill=\"steelblue\"/>\n";
  }
  s << "<text x=\"" << kMarginLeft << "\" y=\"" << kHeight - 12
    << "\" font-family=\"sans-serif\" font-size=\"11\">" << num(lo)
    << "</text>\n";
  s << "<text x=\"" << kWidth - kMarginRight - 40 << "\" y=\""
    << kHeight - 12 << "\" font-family=\"sans-serif\" font-size=\"11\">"
    << num(lo + width) << "</text>\n";
  s << "</svg>\n";
  return s.str();
}

}  // namespace tlsel
