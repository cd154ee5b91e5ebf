#pragma once

#include "mobius/rigidity.hpp"

#include <string>

namespace mobius {

/// SVG drawing of a planar configuration: circles, half-plane boundaries
/// clipped to the viewport, points as labeled dots. The viewport is fitted to
/// the finite items. Throws InvalidArgument unless dim = 2.
std::string render_svg(const Configuration& conf);

}  // namespace mobius
