#pragma once

#include <string>
#include <utility>
#include <vector>

#include "aswn/polygon.hpp"

namespace aswn {

// SVG 1.1 overlay of labelled polygons with vertex markers and a legend.
// Exact rationals are rendered as doubles at plot time only.
std::string svg_plot(const std::vector<std::pair<std::string, Polygon>>& series,
                     const std::string& title);

} // namespace aswn
