#include <fovgmres/errors.hpp>
#include <fovgmres/svg.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace fovgmres {

namespace {

constexpr int kWidth = 760, kHeight = 520;
constexpr int kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string num(Real v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

struct Frame {
  Real x0, x1, y0, y1;
  Real px(Real x) const {
    return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight);
  }
  Real py(Real y) const {
    return kHeight - kBottom - (y - y0) / (y1 - y0) * (kHeight - kTop - kBottom);
  }
};

void open_svg(std::ofstream& out, const std::string& title) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\" "
         "font-family=\"sans-serif\">"
      << title << "</text>\n";
}

void axes_box(std::ofstream& out) {
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\""
      << kWidth - kLeft - kRight << "\" height=\"" << kHeight - kTop - kBottom
      << "\" fill=\"none\" stroke=\"black\"/>\n";
}

}  // namespace

void write_svg_log_chart(const std::string& path, const std::string& title,
                         const std::vector<SvgSeries>& series) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");

  Real xmin = std::numeric_limits<Real>::infinity(), xmax = -xmin;
  Real ymin = std::numeric_limits<Real>::infinity(), ymax = -ymin;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (s.y[i] <= 0.0) continue;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, std::log10(s.y[i]));
      ymax = std::max(ymax, std::log10(s.y[i]));
    }
  if (!(xmax > xmin)) xmax = xmin + 1;
  if (!(ymax > ymin)) ymax = ymin + 1;
  ymax = std::ceil(ymax);
  ymin = std::floor(ymin);

  open_svg(out, title);
  const Frame f{xmin, xmax, ymin, ymax};
  axes_box(out);
  const int decades = static_cast<int>(ymax - ymin);
  const int step = std::max(1, decades / 8);
  for (int e = static_cast<int>(ymin); e <= static_cast<int>(ymax); e += step) {
    const Real y = f.py(static_cast<Real>(e));
    out << "<line x1=\"" << kLeft << "\" y1=\"" << num(y) << "\" x2=\"" << kWidth - kRight
        << "\" y2=\"" << num(y) << "\" stroke=\"#dddddd\"/>\n";
    out << "<text x=\"" << kLeft - 6 << "\" y=\"" << num(y + 4)
        << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">1e" << e
        << "</text>\n";
  }
  for (int t = 0; t <= 5; ++t) {
    const Real x = xmin + (xmax - xmin) * t / 5.0;
    out << "<text x=\"" << num(f.px(x)) << "\" y=\"" << kHeight - kBottom + 18
        << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">"
        << num(x) << "</text>\n";
  }
  out << "<text x=\"" << (kLeft + kWidth - kRight) / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\" font-size=\"12\" font-family=\"sans-serif\">k</text>\n";

  int ci = 0;
  for (const auto& s : series) {
    const char* color = kPalette[ci % 8];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (s.y[i] <= 0.0) continue;
      out << num(f.px(s.x[i])) << "," << num(f.py(std::log10(s.y[i]))) << " ";
    }
    out << "\"/>\n";
    out << "<text x=\"" << kWidth - kRight - 10 << "\" y=\"" << kTop + 16 + 16 * ci
        << "\" text-anchor=\"end\" font-size=\"12\" font-family=\"sans-serif\" fill=\"" << color
        << "\">" << s.label << "</text>\n";
    ++ci;
  }
  out << "</svg>\n";
}

void write_svg_plane(const std::string& path, const std::string& title,
                     const std::vector<Complex>& points, const std::vector<SvgRect>& rects) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");

  Real xmin = 0, xmax = 1, ymin = -1, ymax = 1;
  bool first = true;
  auto grow = [&](Real x, Real y) {
    if (first) {
      xmin = xmax = x;
      ymin = ymax = y;
      first = false;
    }
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  };
  for (const Complex& p : points) grow(p.real(), p.imag());
  for (const SvgRect& r : rects) {
    grow(r.re_min, -r.im_half);
    grow(r.re_max, r.im_half);
  }
  const Real padx = 0.05 * (xmax - xmin + 1e-12), pady = 0.05 * (ymax - ymin + 1e-12);
  const Frame f{xmin - padx, xmax + padx, ymin - pady, ymax + pady};

  open_svg(out, title);
  axes_box(out);
  for (int t = 0; t <= 5; ++t) {
    const Real x = f.x0 + (f.x1 - f.x0) * t / 5.0;
    out << "<text x=\"" << num(f.px(x)) << "\" y=\"" << kHeight - kBottom + 18
        << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">" << num(x)
        << "</text>\n";
    const Real y = f.y0 + (f.y1 - f.y0) * t / 5.0;
    out << "<text x=\"" << kLeft - 6 << "\" y=\"" << num(f.py(y) + 4)
        << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">" << num(y)
        << "</text>\n";
  }
  int ci = 1;
  for (const SvgRect& r : rects) {
    const char* color = kPalette[ci % 8];
    out << "<rect x=\"" << num(f.px(r.re_min)) << "\" y=\"" << num(f.py(r.im_half))
        << "\" width=\"" << num(f.px(r.re_max) - f.px(r.re_min)) << "\" height=\""
        << num(f.py(-r.im_half) - f.py(r.im_half)) << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-dasharray=\"6,3\"/>\n";
    out << "<text x=\"" << kWidth - kRight - 10 << "\" y=\"" << kTop + 16 + 16 * ci
        << "\" text-anchor=\"end\" font-size=\"12\" font-family=\"sans-serif\" fill=\"" << color
        << "\">" << r.label << "</text>\n";
    ++ci;
  }
  for (const Complex& p : points)
    out << "<circle cx=\"" << num(f.px(p.real())) << "\" cy=\"" << num(f.py(p.imag()))
        << "\" r=\"1.6\" fill=\"" << kPalette[0] << "\"/>\n";
  out << "<text x=\"" << kWidth - kRight - 10 << "\" y=\"" << kTop + 16
      << "\" text-anchor=\"end\" font-size=\"12\" font-family=\"sans-serif\" fill=\""
      << kPalette[0] << "\">fov boundary</text>\n";
  out << "</svg>\n";
}

}  // namespace fovgmres
