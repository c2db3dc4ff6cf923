#include "levgas/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace levgas {

namespace {

constexpr int kWidth = 820;
constexpr int kHeight = 520;
constexpr int kMarginLeft = 80;
constexpr int kMarginRight = 150;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 60;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void include(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!(lo <= hi)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo < 1e-300) {
      const double bump = std::max(1e-6, std::abs(hi) * 1e-3);
      lo -= bump;
      hi += bump;
    } else {
      const double bump = 0.03 * (hi - lo);
      lo -= bump;
      hi += bump;
    }
  }
};

std::string trim_number(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

std::string render_line_plot(const std::string& title, const std::string& x_label,
                             const std::string& y_label,
                             const std::vector<Series>& series) {
  Range xr, yr;
  for (const Series& s : series) {
    for (double v : s.x) xr.include(v);
    for (double v : s.y) yr.include(v);
  }
  xr.pad();
  yr.pad();

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  const auto px = [&](double x) {
    return kMarginLeft + plot_w * (x - xr.lo) / (xr.hi - xr.lo);
  };
  const auto py = [&](double y) {
    return kMarginTop + plot_h * (1.0 - (y - yr.lo) / (yr.hi - yr.lo));
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
      << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";

  // Frame and ticks.
  svg << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\"" << plot_w
      << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";
  const int ticks = 5;
  for (int i = 0; i <= ticks; ++i) {
    const double fx = xr.lo + (xr.hi - xr.lo) * i / ticks;
    const double fy = yr.lo + (yr.hi - yr.lo) * i / ticks;
    const double tx = px(fx);
    const double ty = py(fy);
    svg << "<line x1=\"" << tx << "\" y1=\"" << kMarginTop + plot_h << "\" x2=\"" << tx
        << "\" y2=\"" << kMarginTop + plot_h + 6 << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << tx << "\" y=\"" << kMarginTop + plot_h + 22
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << trim_number(fx) << "</text>\n";
    svg << "<line x1=\"" << kMarginLeft - 6 << "\" y1=\"" << ty << "\" x2=\"" << kMarginLeft
        << "\" y2=\"" << ty << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << kMarginLeft - 10 << "\" y=\"" << ty + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << trim_number(fy) << "</text>\n";
  }
  svg << "<text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\"" << kHeight - 16
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
      << x_label << "</text>\n";
  svg << "<text x=\"20\" y=\"" << kMarginTop + plot_h / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
      << "transform=\"rotate(-90 20 " << kMarginTop + plot_h / 2 << ")\">" << y_label
      << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
    const Series& ser = series[s];
    if (ser.x.size() == 1) {
      svg << "<circle cx=\"" << px(ser.x[0]) << "\" cy=\"" << py(ser.y[0])
          << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.4\" points=\"";
    for (std::size_t i = 0; i < ser.x.size(); ++i) {
      svg << px(ser.x[i]) << ',' << py(ser.y[i]) << ' ';
    }
    svg << "\"/>\n";
    const double ly = kMarginTop + 16.0 * (s + 1);
    svg << "<line x1=\"" << kWidth - kMarginRight + 12 << "\" y1=\"" << ly << "\" x2=\""
        << kWidth - kMarginRight + 36 << "\" y2=\"" << ly << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << kWidth - kMarginRight + 42 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << ser.label << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void write_svg(const std::string& path, const std::string& svg) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << svg;
  if (!out) throw IoError("write failed: " + path);
}

std::vector<std::string> emit_trajectory_figures(const CsvTable& table,
                                                 const std::string& levels_path,
                                                 const std::string& occupations_path,
                                                 double segment_seconds) {
  if (table.rows() == 0) {
    throw SchemaMismatch("figures: csv has no data rows");
  }
  const std::vector<double>& t = table.at("t");

  std::vector<Series> levels;
  std::vector<Series> occupations;
  for (int i = 0;; ++i) {
    const int xi = table.find("x_" + std::to_string(i));
    if (xi < 0) break;
    levels.push_back({"level " + std::to_string(i + 1), t, table.columns[xi]});
  }
  for (int i = 0;; ++i) {
    const int oi = table.find("occ_" + std::to_string(i));
    if (oi < 0) break;
    occupations.push_back({"state " + std::to_string(i + 1), t, table.columns[oi]});
  }
  if (levels.empty() || occupations.empty()) {
    throw SchemaMismatch("figures: csv lacks x_*/occ_* trajectory columns");
  }

  std::vector<std::string> written;
  write_svg(levels_path,
            render_line_plot("Energy levels", "t", "energy", levels));
  written.push_back(levels_path);

  if (segment_seconds > 0.0) {
    const double t_begin = t.front();
    const double t_end = t.back();
    int seg = 0;
    for (double lo = t_begin; lo < t_end; lo += segment_seconds, ++seg) {
      const double hi = std::min(lo + segment_seconds, t_end);
      std::vector<Series> slice;
      for (const Series& s : occupations) {
        Series cut{s.label, {}, {}};
        for (std::size_t i = 0; i < s.x.size(); ++i) {
          if (s.x[i] >= lo - 1e-12 && s.x[i] <= hi + 1e-12) {
            cut.x.push_back(s.x[i]);
            cut.y.push_back(s.y[i]);
          }
        }
        if (!cut.x.empty()) slice.push_back(std::move(cut));
      }
      if (slice.empty()) continue;
      std::string path = occupations_path;
      const std::string suffix = "_seg" + std::to_string(seg);
      const std::size_t dot = path.rfind(".svg");
      if (dot != std::string::npos) {
        path.insert(dot, suffix);
      } else {
        path += suffix;
      }
      write_svg(path, render_line_plot("Occupation numbers (" + trim_number(lo) + "s to " +
                                           trim_number(hi) + "s)",
                                       "t", "occupation", slice));
      written.push_back(path);
    }
  } else {
    write_svg(occupations_path,
              render_line_plot("Occupation numbers", "t", "occupation", occupations));
    written.push_back(occupations_path);
  }
  return written;
}

}  // namespace levgas
