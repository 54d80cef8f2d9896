#pragma once

#include <string>

#include "kara/layout.hpp"
#include "kara/scene.hpp"

namespace kara {

/// Formats a coordinate with at most two decimals and no trailing zeros.
std::string format_number(double value);

/// Renders a laid-out scene as an SVG 1.1 document. Items are painted in
/// ascending z; within one z connections come first, then shapes, then
/// labels. Hidden elements (and labels of hidden hosts) are omitted.
std::string render_svg(const Scene& scene, const LayoutResult& layout);

}  // namespace kara
