#include <algorithm>
#include <cmath>
#include <sstream>

#include "pmc/cli.hpp"
#include "pmc/numfmt.hpp"

namespace pmc::cli {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kPad = 0.05;

std::string fixed(double v) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  os << v;
  return os.str();
}

std::string escape(const std::string& s) {
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

struct Mapper {
  double x0, x1, z0, z1;
  double px(double r) const { return kWidth * (kPad + (1.0 - 2.0 * kPad) * (r - x0) / (x1 - x0)); }
  double py(double z) const { return kHeight * (1.0 - kPad - (1.0 - 2.0 * kPad) * (z - z0) / (z1 - z0)); }
};

std::string polyline(const Mapper& m, const std::vector<double>& r, const std::vector<double>& z,
                     const std::string& color, bool dashed) {
  std::ostringstream os;
  os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
  if (dashed) os << " stroke-dasharray=\"6,4\"";
  os << " points=\"";
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) os << ' ';
    os << fixed(m.px(r[i])) << ',' << fixed(m.py(z[i]));
  }
  os << "\"/>\n";
  return os.str();
}

}  // namespace

std::string render_svg(const SolveOutcome& outcome, const std::string& title) {
  const SolutionGrid& g = outcome.grid;
  const bool circles = outcome.circles_available;
  std::vector<double> y, w;
  if (circles) {
    y = circle_heights(outcome.circles.upper, g.r);
    w = circle_heights(outcome.circles.lower, g.r);
  }

  double zmin = *std::min_element(g.u.begin(), g.u.end());
  double zmax = *std::max_element(g.u.begin(), g.u.end());
  for (const auto* v : {&y, &w}) {
    if (v->empty()) continue;
    zmin = std::min(zmin, *std::min_element(v->begin(), v->end()));
    zmax = std::max(zmax, *std::max_element(v->begin(), v->end()));
  }
  if (!(zmax > zmin)) {
    zmin -= 0.5;
    zmax += 0.5;
  }
  const Mapper m{0.0, g.r.back(), zmin, zmax};

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth << "\" height=\""
     << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
     << "<title>" << escape(title) << "</title>\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // axes along the bottom and left edges of the data box
  const double ax = m.px(0.0), ay = m.py(zmin);
  os << "<g stroke=\"black\" stroke-width=\"1\">\n"
     << "<line x1=\"" << fixed(ax) << "\" y1=\"" << fixed(ay) << "\" x2=\"" << fixed(m.px(g.r.back()))
     << "\" y2=\"" << fixed(ay) << "\"/>\n"
     << "<line x1=\"" << fixed(ax) << "\" y1=\"" << fixed(ay) << "\" x2=\"" << fixed(ax) << "\" y2=\""
     << fixed(m.py(zmax)) << "\"/>\n"
     << "</g>\n";
  os << "<g font-family=\"sans-serif\" font-size=\"11\">\n"
     << "<text x=\"" << fixed(ax) << "\" y=\"" << fixed(ay + 14) << "\">0</text>\n"
     << "<text x=\"" << fixed(m.px(g.r.back()) - 20) << "\" y=\"" << fixed(ay + 14) << "\">r = "
     << escape(format_double(g.r.back())) << "</text>\n"
     << "<text x=\"" << fixed(ax + 4) << "\" y=\"" << fixed(m.py(zmax) + 10) << "\">z = "
     << escape(format_double(zmax)) << "</text>\n"
     << "</g>\n";

  if (circles) {
    os << polyline(m, g.r, y, "#c0392b", true);
    os << polyline(m, g.r, w, "#2471a3", true);
  }
  os << polyline(m, g.r, g.u, "black", false);

  for (double r : {0.0, g.r.back()}) {
    const double z = r == 0.0 ? g.u.front() : g.u.back();
    os << "<circle cx=\"" << fixed(m.px(r)) << "\" cy=\"" << fixed(m.py(z))
       << "\" r=\"3\" fill=\"black\"/>\n";
  }

  struct Entry {
    const char* label;
    const char* color;
    bool dashed;
  };
  std::vector<Entry> legend{{"u", "black", false}};
  if (circles) {
    const bool lines = outcome.circles.degenerate;
    legend.push_back({lines ? "y (line)" : "y", "#c0392b", true});
    legend.push_back({lines ? "w (line)" : "w", "#2471a3", true});
  }
  const double lx = kWidth * 0.75, ly = kHeight * 0.1;
  os << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (std::size_t i = 0; i < legend.size(); ++i) {
    const double yy = ly + 16.0 * static_cast<double>(i);
    os << "<line x1=\"" << fixed(lx) << "\" y1=\"" << fixed(yy) << "\" x2=\"" << fixed(lx + 24)
       << "\" y2=\"" << fixed(yy) << "\" stroke=\"" << legend[i].color << "\" stroke-width=\"1.5\"";
    if (legend[i].dashed) os << " stroke-dasharray=\"6,4\"";
    os << "/>\n<text x=\"" << fixed(lx + 30) << "\" y=\"" << fixed(yy + 4) << "\">" << legend[i].label
       << "</text>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace pmc::cli
