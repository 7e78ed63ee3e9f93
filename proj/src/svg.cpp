#include "jra/svg.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace jra {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

std::string render_svg_string(const Instance& inst,
                              const std::vector<std::pair<Tour, TourStyle>>& tours) {
  const double side = std::sqrt(inst.area());
  const double margin = 0.04 * side;
  const double view = side + 2.0 * margin;
  // SVG y grows downward; flip so plots read like the plane.
  auto px = [&](double x) { return x + margin; };
  auto py = [&](double y) { return side - y + margin; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 " +
         num(view) + " " + num(view) + "\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + num(view) + "\" height=\"" + num(view) +
         "\" fill=\"white\"/>\n";

  for (const auto& [tour, style] : tours) {
    validate_tour(inst, tour);
    svg += "<polygon points=\"";
    const int n = tour.n();
    for (int k = 0; k < n; ++k) {
      const Point& item = inst.coord(tour.q_I[k]);
      const Point& ph = inst.coord(tour.q_P[k]);
      svg += num(px(item.x)) + "," + num(py(item.y)) + " ";
      svg += num(px(ph.x)) + "," + num(py(ph.y));
      if (k + 1 < n) svg += " ";
    }
    svg += "\" fill=\"none\" stroke=\"" + style.stroke + "\" stroke-width=\"" +
           num(style.width_frac * side) + "\"/>\n";
  }

  const double marker = 0.006 * side;
  for (NodeId v = 1; v <= inst.n(); ++v) {
    const Point& p = inst.coord(v);
    svg += "<circle cx=\"" + num(px(p.x)) + "\" cy=\"" + num(py(p.y)) + "\" r=\"" + num(marker) +
           "\" fill=\"black\"/>\n";
  }
  for (NodeId v = inst.n() + 1; v <= 2 * inst.n(); ++v) {
    const Point& p = inst.coord(v);
    svg += "<rect x=\"" + num(px(p.x) - marker) + "\" y=\"" + num(py(p.y) - marker) +
           "\" width=\"" + num(2 * marker) + "\" height=\"" + num(2 * marker) +
           "\" fill=\"none\" stroke=\"black\" stroke-width=\"" + num(0.3 * marker) + "\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

void render_svg(const Instance& inst, const std::vector<std::pair<Tour, TourStyle>>& tours,
                const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) {
    throw Error("cannot write SVG file: " + file.string());
  }
  out << render_svg_string(inst, tours);
}

}  // namespace jra
