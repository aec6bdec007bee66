#include "glebd/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "glebd/errors.hpp"
#include "glebd/io.hpp"

namespace glebd {

namespace {

constexpr double kWidth = 720.0, kHeight = 480.0;
constexpr double kLeft = 64.0, kRight = 24.0, kTop = 40.0, kBottom = 48.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

// Fixed 6-decimal pixel coordinates keep the output byte-stable
// without the noise of shortest-round-trip formatting.
std::string px(double v) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  os << v;
  return os.str();
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

// XML comments may not contain "--".
std::string escape_comment(const std::string& s) {
  std::string out = escape_xml(s);
  std::size_t pos = 0;
  while ((pos = out.find("--", pos)) != std::string::npos)
    out.replace(pos, 2, "- -");
  return out;
}

// Round tick spacing to 1/2/5 times a power of ten.
double nice_step(double span) {
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double frac = raw / mag;
  if (frac < 1.5) return mag;
  if (frac < 3.5) return 2.0 * mag;
  if (frac < 7.5) return 5.0 * mag;
  return 10.0 * mag;
}

}  // namespace

void emit_plot(const std::vector<PlotSeries>& curves, const std::string& path,
               const std::string& title, const std::string& x_label,
               const std::string& y_label, const Metadata& meta) {
  if (curves.empty())
    throw ValidationError("emit_plot: empty curve list");
  for (const auto& c : curves) {
    if (c.x.empty() || c.x.size() != c.y.size())
      throw ValidationError("emit_plot: series '" + c.label +
                            "' is empty or ragged");
    for (double v : c.x)
      if (!std::isfinite(v))
        throw ValidationError("emit_plot: non-finite x in '" + c.label + "'");
    for (double v : c.y)
      if (!std::isfinite(v))
        throw ValidationError("emit_plot: non-finite y in '" + c.label + "'");
  }

  double x0 = curves[0].x[0], x1 = x0, y0 = curves[0].y[0], y1 = y0;
  for (const auto& c : curves) {
    for (double v : c.x) {
      x0 = std::min(x0, v);
      x1 = std::max(x1, v);
    }
    for (double v : c.y) {
      y0 = std::min(y0, v);
      y1 = std::max(y1, v);
    }
  }
  if (x1 - x0 <= 0.0) x1 = x0 + 1.0;
  if (y1 - y0 <= 0.0) {
    y0 -= 0.5;
    y1 += 0.5;
  }
  const double ypad = 0.05 * (y1 - y0);
  y0 -= ypad;
  y1 += ypad;

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  const auto sx = [&](double v) { return kLeft + (v - x0) / (x1 - x0) * pw; };
  const auto sy = [&](double v) {
    return kTop + (1.0 - (v - y0) / (y1 - y0)) * ph;
  };

  std::ostringstream svg;
  for (const auto& [key, value] : meta)
    svg << "<!-- " << escape_comment(key) << " = " << escape_comment(value)
        << " -->\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n";
  svg << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";
  if (!title.empty())
    svg << "<text x=\"" << px(kWidth / 2)
        << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"16\">"
        << escape_xml(title) << "</text>\n";

  // Axes frame and ticks.
  svg << "<rect x=\"" << px(kLeft) << "\" y=\"" << px(kTop) << "\" width=\""
      << px(pw) << "\" height=\"" << px(ph)
      << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
  const double xs = nice_step(x1 - x0);
  for (double v = std::ceil(x0 / xs) * xs; v <= x1 + 1e-12 * xs; v += xs) {
    svg << "<line x1=\"" << px(sx(v)) << "\" y1=\"" << px(kTop + ph)
        << "\" x2=\"" << px(sx(v)) << "\" y2=\"" << px(kTop + ph + 5)
        << "\" stroke=\"#333333\"/>\n";
    svg << "<text x=\"" << px(sx(v)) << "\" y=\"" << px(kTop + ph + 18)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << format_double(v) << "</text>\n";
  }
  const double ys = nice_step(y1 - y0);
  for (double v = std::ceil(y0 / ys) * ys; v <= y1 + 1e-12 * ys; v += ys) {
    svg << "<line x1=\"" << px(kLeft - 5) << "\" y1=\"" << px(sy(v))
        << "\" x2=\"" << px(kLeft) << "\" y2=\"" << px(sy(v))
        << "\" stroke=\"#333333\"/>\n";
    svg << "<text x=\"" << px(kLeft - 8) << "\" y=\"" << px(sy(v) + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << format_double(v) << "</text>\n";
  }
  if (!x_label.empty())
    svg << "<text x=\"" << px(kLeft + pw / 2) << "\" y=\""
        << px(kHeight - 12)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"13\">"
        << escape_xml(x_label) << "</text>\n";
  if (!y_label.empty())
    svg << "<text x=\"16\" y=\"" << px(kTop + ph / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"13\" transform=\"rotate(-90 16 " << px(kTop + ph / 2)
        << ")\">" << escape_xml(y_label) << "</text>\n";

  for (std::size_t c = 0; c < curves.size(); ++c) {
    const char* color = kPalette[c % (sizeof(kPalette) / sizeof(*kPalette))];
    svg << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < curves[c].x.size(); ++i) {
      if (i) svg << " ";
      svg << px(sx(curves[c].x[i])) << "," << px(sy(curves[c].y[i]));
    }
    svg << "\"/>\n";
  }

  // Legend.
  const double lx = kLeft + pw - 170.0, ly = kTop + 10.0;
  svg << "<rect x=\"" << px(lx - 8) << "\" y=\"" << px(ly - 4) << "\" width=\""
      << px(178.0 - 0.0) << "\" height=\"" << px(curves.size() * 18.0 + 8)
      << "\" fill=\"white\" fill-opacity=\"0.8\" stroke=\"#cccccc\"/>\n";
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const char* color = kPalette[c % (sizeof(kPalette) / sizeof(*kPalette))];
    const double yy = ly + 18.0 * c + 8.0;
    svg << "<line x1=\"" << px(lx) << "\" y1=\"" << px(yy) << "\" x2=\""
        << px(lx + 24) << "\" y2=\"" << px(yy) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << px(lx + 30) << "\" y=\"" << px(yy + 4)
        << "\" font-family=\"sans-serif\" font-size=\"12\">"
        << escape_xml(curves[c].label) << "</text>\n";
  }
  svg << "</svg>\n";

  write_text_file(path, svg.str());
}

}  // namespace glebd
