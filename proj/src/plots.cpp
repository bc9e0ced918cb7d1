#include "mptcf/plots.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "mptcf/errors.hpp"
#include "mptcf/io.hpp"

namespace mptcf::plots {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 56.0;

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path.string());
  return out;
}

struct Scale {
  double lo = 0.0, hi = 1.0;
  double px_lo = 0.0, px_hi = 1.0;

  double operator()(double v) const {
    if (hi == lo) return 0.5 * (px_lo + px_hi);
    return px_lo + (v - lo) / (hi - lo) * (px_hi - px_lo);
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

void svg_header(std::ofstream& out, const std::string& title) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\" "
      << "font-family=\"sans-serif\">" << title << "</text>\n";
}

void svg_axes(std::ofstream& out, const Scale& sx, const Scale& sy,
              const std::string& xlabel, const std::string& ylabel) {
  out << "<line x1=\"" << sx.px_lo << "\" y1=\"" << sy.px_lo << "\" x2=\"" << sx.px_hi
      << "\" y2=\"" << sy.px_lo << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << sx.px_lo << "\" y1=\"" << sy.px_lo << "\" x2=\"" << sx.px_lo
      << "\" y2=\"" << sy.px_hi << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << (sx.px_lo + sx.px_hi) / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\" font-size=\"12\" font-family=\"sans-serif\">" << xlabel
      << "</text>\n"
      << "<text x=\"16\" y=\"" << (sy.px_lo + sy.px_hi) / 2
      << "\" text-anchor=\"middle\" font-size=\"12\" font-family=\"sans-serif\" "
      << "transform=\"rotate(-90 16 " << (sy.px_lo + sy.px_hi) / 2 << ")\">" << ylabel
      << "</text>\n"
      << "<text x=\"" << sx.px_lo << "\" y=\"" << sy.px_lo + 16
      << "\" font-size=\"10\" font-family=\"sans-serif\">" << num(sx.lo) << "</text>\n"
      << "<text x=\"" << sx.px_hi << "\" y=\"" << sy.px_lo + 16
      << "\" text-anchor=\"end\" font-size=\"10\" font-family=\"sans-serif\">" << num(sx.hi)
      << "</text>\n"
      << "<text x=\"" << sx.px_lo - 4 << "\" y=\"" << sy.px_lo
      << "\" text-anchor=\"end\" font-size=\"10\" font-family=\"sans-serif\">" << num(sy.lo)
      << "</text>\n"
      << "<text x=\"" << sx.px_lo - 4 << "\" y=\"" << sy.px_hi + 8
      << "\" text-anchor=\"end\" font-size=\"10\" font-family=\"sans-serif\">" << num(sy.hi)
      << "</text>\n";
}

}  // namespace

void gamma_histogram(const fs::path& csv_path, const fs::path& svg_path,
                     const std::vector<double>& gammas, double lo, double hi, int bins) {
  if (!(lo > 0.0) || !(hi > lo) || bins < 1)
    throw InvalidInput("histogram needs 0 < lo < hi and bins >= 1");

  const double log_lo = std::log(lo);
  const double log_hi = std::log(hi);
  const double step = (log_hi - log_lo) / bins;
  std::vector<long> counts(static_cast<std::size_t>(bins), 0);
  for (double g : gammas) {
    const double x = std::clamp(std::log(g), log_lo, log_hi);
    const long b = std::min<long>(bins - 1, static_cast<long>((x - log_lo) / step));
    ++counts[static_cast<std::size_t>(b)];
  }

  {
    auto csv = open_out(csv_path);
    csv << "bin_lo,bin_hi,count\n";
    if (!gammas.empty()) {
      for (int b = 0; b < bins; ++b)
        csv << io::format_double(std::exp(log_lo + b * step)) << ','
            << io::format_double(std::exp(log_lo + (b + 1) * step)) << ','
            << counts[static_cast<std::size_t>(b)] << '\n';
    }
  }

  auto svg = open_out(svg_path);
  svg_header(svg, "Risk aversion distribution (log bins)");
  Scale sx{log_lo, log_hi, kMargin, kWidth - kMargin};
  const long max_count =
      gammas.empty() ? 1 : std::max<long>(1, *std::max_element(counts.begin(), counts.end()));
  Scale sy{0.0, static_cast<double>(max_count), kHeight - kMargin, kMargin};
  svg_axes(svg, sx, sy, "gamma (log scale)", "users");
  if (gammas.empty()) {
    svg << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight / 2
        << "\" text-anchor=\"middle\" font-size=\"14\" font-family=\"sans-serif\">no data"
        << "</text>\n";
  } else {
    for (int b = 0; b < bins; ++b) {
      const double x0 = sx(log_lo + b * step);
      const double x1 = sx(log_lo + (b + 1) * step);
      const double y = sy(static_cast<double>(counts[static_cast<std::size_t>(b)]));
      svg << "<rect x=\"" << x0 << "\" y=\"" << y << "\" width=\"" << (x1 - x0) * 0.92
          << "\" height=\"" << sy(0.0) - y << "\" fill=\"#4477aa\"/>\n";
    }
  }
  svg << "</svg>\n";
}

void risk_return(const fs::path& csv_path, const fs::path& svg_path,
                 const std::vector<std::pair<double, double>>& frontier,
                 const std::vector<Marker>& markers) {
  {
    auto csv = open_out(csv_path);
    csv << "kind,label,risk,expected_return\n";
    for (const auto& [risk, ret] : frontier)
      csv << "frontier,," << io::format_double(risk) << ',' << io::format_double(ret) << '\n';
    for (const auto& m : markers)
      csv << m.kind << ',' << m.label << ',' << io::format_double(m.risk) << ','
          << io::format_double(m.expected_return) << '\n';
  }

  double x_lo = 0.0, x_hi = 1e-9, y_lo = 0.0, y_hi = 1e-9;
  bool first = true;
  const auto grow = [&](double x, double y) {
    if (first) {
      x_lo = x_hi = x;
      y_lo = y_hi = y;
      first = false;
      return;
    }
    x_lo = std::min(x_lo, x);
    x_hi = std::max(x_hi, x);
    y_lo = std::min(y_lo, y);
    y_hi = std::max(y_hi, y);
  };
  for (const auto& [risk, ret] : frontier) grow(risk, ret);
  for (const auto& m : markers) grow(m.risk, m.expected_return);
  const double x_pad = (x_hi - x_lo) * 0.08 + 1e-12;
  const double y_pad = (y_hi - y_lo) * 0.08 + 1e-12;

  auto svg = open_out(svg_path);
  svg_header(svg, "Risk-return plane");
  Scale sx{x_lo - x_pad, x_hi + x_pad, kMargin, kWidth - kMargin};
  Scale sy{y_lo - y_pad, y_hi + y_pad, kHeight - kMargin, kMargin};
  svg_axes(svg, sx, sy, "risk (stdev of return)", "expected return");

  if (!frontier.empty()) {
    svg << "<polyline fill=\"none\" stroke=\"#222222\" stroke-width=\"1.5\" points=\"";
    for (const auto& [risk, ret] : frontier) svg << sx(risk) << ',' << sy(ret) << ' ';
    svg << "\"/>\n";
  }
  const std::vector<std::string> palette = {"#228833", "#4477aa", "#ee6677", "#ccbb44",
                                            "#66ccee", "#aa3377"};
  std::size_t color_idx = 0;
  for (const auto& m : markers) {
    const double x = sx(m.risk);
    const double y = sy(m.expected_return);
    if (m.kind == "user") {
      svg << "<rect x=\"" << x - 5 << "\" y=\"" << y - 5
          << "\" width=\"10\" height=\"10\" fill=\"black\"/>\n";
    } else if (m.kind == "optimal") {
      svg << "<rect x=\"" << x - 5 << "\" y=\"" << y - 5
          << "\" width=\"10\" height=\"10\" fill=\"white\" stroke=\"black\"/>\n";
    } else if (m.kind == "post_addition") {
      const auto& color = palette[color_idx++ % palette.size()];
      svg << "<rect x=\"" << x - 4 << "\" y=\"" << y - 4
          << "\" width=\"8\" height=\"8\" fill=\"" << color << "\"/>\n";
    } else {
      const auto& color = palette[color_idx++ % palette.size()];
      svg << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"4\" fill=\"" << color
          << "\"/>\n";
    }
    if (!m.label.empty())
      svg << "<text x=\"" << x + 7 << "\" y=\"" << y - 6
          << "\" font-size=\"10\" font-family=\"sans-serif\">" << m.label << "</text>\n";
  }
  svg << "</svg>\n";
}

}  // namespace mptcf::plots
