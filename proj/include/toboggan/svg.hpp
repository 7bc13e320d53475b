#pragma once

#include "toboggan/contour.hpp"
#include "toboggan/wedges.hpp"

#include <map>
#include <string>
#include <vector>

namespace toboggan {

struct SvgOptions {
  int width = 640;
  int height = 640;
  double plot_radius = 4.0;   // complex-plane radius mapped to the canvas
  double cut_rotation = 0.0;  // radians; negative rotates the cut clockwise
  double s_window = 8.0;      // contours sampled on [-s_window, s_window]
  int samples = 600;
  int wedge_count = 3;        // wedges drawn per side
  bool draw_plus_wedges = false;
};

/// Deterministic figure: shaded wedges of the dominant exponent D, the branch
/// cut ray (upward by default, rotated by cut_rotation), axes, and the
/// projected contour polylines.  Byte-identical for identical inputs.
std::string export_svg(const std::vector<ContourPtr>& contours, int D,
                       const SvgOptions& options = {});

/// The seven stock diagrams (decadic wedges, harmonic wedges with toboggan
/// contours, cut rotations) keyed by file stem: fig1 .. fig7.
std::map<std::string, std::string> render_figures();

}  // namespace toboggan
