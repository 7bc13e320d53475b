#include "toboggan/svg.hpp"

#include "toboggan/contour.hpp"

#include "doctest.h"

#include <numbers>
#include <string>

using namespace toboggan;

TEST_CASE("export_svg is deterministic") {
  std::vector<ContourPtr> contours;
  contours.push_back(wedge_join(3, 2.0, 1.0));
  contours.push_back(bg_line(0.4));
  std::string first = export_svg(contours, 2);
  std::string second = export_svg(contours, 2);
  CHECK(first == second);
  CHECK(!first.empty());
}

TEST_CASE("export_svg emits well-formed markup with the expected elements") {
  std::vector<ContourPtr> contours;
  contours.push_back(bg_line(0.2));
  SvgOptions options;
  options.cut_rotation = -std::numbers::pi / 2.0;
  std::string svg = export_svg(contours, 10, options);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("<polyline") != std::string::npos);  // the contour
  CHECK(svg.find("<path") != std::string::npos);      // wedge sectors
  CHECK(svg.find("stroke-dasharray") != std::string::npos);  // the cut ray
}

TEST_CASE("export_svg works without contours") {
  std::string svg = export_svg({}, 2);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("<polyline") == std::string::npos);
}

TEST_CASE("render_figures yields the seven stock diagrams, reproducibly") {
  auto figures = render_figures();
  REQUIRE(figures.size() == 7);
  for (int i = 1; i <= 7; ++i) {
    auto it = figures.find("fig" + std::to_string(i));
    REQUIRE(it != figures.end());
    CHECK(it->second.rfind("<svg", 0) == 0);
  }
  CHECK(render_figures() == figures);
}
