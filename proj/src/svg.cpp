#include "polystab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <vector>

namespace polystab {

namespace {

struct Pt {
  double x, y;
};

}  // namespace

void write_svg_plot(std::ostream& os, const SweepSamples& samples, const std::string& title) {
  std::vector<Pt> pts;
  for (const SweepPoint& p : samples.points) {
    if (p.finite && p.value > 0 && p.param > 0) {
      pts.push_back({std::log10(p.param), std::log10(p.value)});
    }
  }
  if (pts.size() < 2) throw InvariantError("plot needs at least two finite positive samples");

  double xmin = pts[0].x, xmax = pts[0].x, ymin = pts[0].y, ymax = pts[0].y;
  for (const Pt& p : pts) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;

  const double w = 640, h = 420, ml = 70, mr = 20, mt = 40, mb = 50;
  auto sx = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (w - ml - mr); };
  auto sy = [&](double y) { return h - mb - (y - ymin) / (ymax - ymin) * (h - mt - mb); };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
     << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << w / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << title
     << "</text>\n";

  // Decade grid lines with labels.
  for (int d = static_cast<int>(std::ceil(xmin)); d <= static_cast<int>(std::floor(xmax)); ++d) {
    os << "<line x1=\"" << sx(d) << "\" y1=\"" << mt << "\" x2=\"" << sx(d) << "\" y2=\""
       << h - mb << "\" stroke=\"#ddd\"/>\n";
    os << "<text x=\"" << sx(d) << "\" y=\"" << h - mb + 18
       << "\" text-anchor=\"middle\" font-size=\"11\">1e" << d << "</text>\n";
  }
  for (int d = static_cast<int>(std::ceil(ymin)); d <= static_cast<int>(std::floor(ymax)); ++d) {
    os << "<line x1=\"" << ml << "\" y1=\"" << sy(d) << "\" x2=\"" << w - mr << "\" y2=\""
       << sy(d) << "\" stroke=\"#ddd\"/>\n";
    os << "<text x=\"" << ml - 8 << "\" y=\"" << sy(d) + 4
       << "\" text-anchor=\"end\" font-size=\"11\">1e" << d << "</text>\n";
  }
  os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << w - ml - mr << "\" height=\""
     << h - mt - mb << "\" fill=\"none\" stroke=\"black\"/>\n";

  os << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
  for (const Pt& p : pts) os << sx(p.x) << ',' << sy(p.y) << ' ';
  os << "\"/>\n";

  const char* xlabel = samples.axis == SweepAxis::Time ? "t" : "omega";
  os << "<text x=\"" << w / 2 << "\" y=\"" << h - 12
     << "\" text-anchor=\"middle\" font-size=\"13\">" << xlabel << "</text>\n";
  os << "</svg>\n";
}

}  // namespace polystab
