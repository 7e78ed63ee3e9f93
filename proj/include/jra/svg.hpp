#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "jra/instance.hpp"
#include "jra/tour.hpp"

namespace jra {

struct TourStyle {
  std::string stroke = "#1f77b4";
  double width_frac = 0.003;  // stroke width as a fraction of the domain side
};

/// Deterministic SVG: items as filled circles, placeholders as open
/// squares, each tour as a closed polyline in its style.
std::string render_svg_string(const Instance& inst,
                              const std::vector<std::pair<Tour, TourStyle>>& tours);

void render_svg(const Instance& inst, const std::vector<std::pair<Tour, TourStyle>>& tours,
                const std::filesystem::path& file);

}  // namespace jra
