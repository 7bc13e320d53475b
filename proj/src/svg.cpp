#include "toboggan/svg.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace toboggan {

namespace {

constexpr double kPi = std::numbers::pi;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v + 0.0);  // +0.0 normalizes -0
  return buf;
}

struct Canvas {
  int width, height;
  double scale;

  double px(double re) const { return width / 2.0 + re * scale; }
  double py(double im) const { return height / 2.0 - im * scale; }
};

void draw_wedge_sector(std::ostringstream& out, const Canvas& canvas, const Wedge& wedge,
                       double radius, const char* fill) {
  // principal-sheet projection of the sector between the Stokes boundaries
  double a0 = wedge.lower();
  double a1 = wedge.upper();
  double x0 = canvas.px(radius * std::cos(a0)), y0 = canvas.py(radius * std::sin(a0));
  double x1 = canvas.px(radius * std::cos(a1)), y1 = canvas.py(radius * std::sin(a1));
  out << "<path d=\"M " << num(canvas.px(0)) << " " << num(canvas.py(0)) << " L "
      << num(x0) << " " << num(y0) << " A " << num(radius * canvas.scale) << " "
      << num(radius * canvas.scale) << " 0 0 0 " << num(x1) << " " << num(y1)
      << " Z\" fill=\"" << fill << "\" stroke=\"none\"/>\n";
}

}  // namespace

std::string export_svg(const std::vector<ContourPtr>& contours, int D,
                       const SvgOptions& options) {
  Canvas canvas{options.width, options.height,
                std::min(options.width, options.height) / (2.2 * options.plot_radius)};
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width
      << "\" height=\"" << options.height << "\" viewBox=\"0 0 " << options.width << " "
      << options.height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  double rim = options.plot_radius;
  AnsatzSign sign = options.draw_plus_wedges ? AnsatzSign::Plus : AnsatzSign::Minus;
  for (const Wedge& wedge : asymptotic_wedges(D, sign, options.wedge_count)) {
    const char* fill = wedge.sign == AnsatzSign::Minus ? "#cfe3f5" : "#f5d9cf";
    draw_wedge_sector(out, canvas, wedge, rim, fill);
  }

  // axes
  out << "<line x1=\"" << num(canvas.px(-rim)) << "\" y1=\"" << num(canvas.py(0))
      << "\" x2=\"" << num(canvas.px(rim)) << "\" y2=\"" << num(canvas.py(0))
      << "\" stroke=\"#999999\" stroke-width=\"1\"/>\n";
  out << "<line x1=\"" << num(canvas.px(0)) << "\" y1=\"" << num(canvas.py(-rim))
      << "\" x2=\"" << num(canvas.px(0)) << "\" y2=\"" << num(canvas.py(rim))
      << "\" stroke=\"#999999\" stroke-width=\"1\"/>\n";

  // branch cut ray, upward unless rotated
  double cut = kPi / 2.0 + options.cut_rotation;
  out << "<line x1=\"" << num(canvas.px(0)) << "\" y1=\"" << num(canvas.py(0)) << "\" x2=\""
      << num(canvas.px(rim * std::cos(cut))) << "\" y2=\"" << num(canvas.py(rim * std::sin(cut)))
      << "\" stroke=\"#b03030\" stroke-width=\"2.5\" stroke-dasharray=\"7 4\"/>\n";

  const char* colors[] = {"#1f5fa8", "#2e8b57", "#8a2be2", "#b8860b"};
  for (std::size_t c = 0; c < contours.size(); ++c) {
    out << "<polyline fill=\"none\" stroke=\"" << colors[c % 4]
        << "\" stroke-width=\"2\" points=\"";
    for (int i = 0; i <= options.samples; ++i) {
      double s = -options.s_window + 2.0 * options.s_window * i / options.samples;
      std::complex<double> x = contours[c]->x(s);
      if (std::abs(x) > 1.6 * rim) continue;
      out << num(canvas.px(x.real())) << "," << num(canvas.py(x.imag())) << " ";
    }
    out << "\"/>\n";
  }
  out << "<circle cx=\"" << num(canvas.px(0)) << "\" cy=\"" << num(canvas.py(0))
      << "\" r=\"3\" fill=\"#b03030\"/>\n";
  out << "</svg>\n";
  return out.str();
}

std::map<std::string, std::string> render_figures() {
  std::map<std::string, std::string> figures;
  SvgOptions opt;

  // decadic wedges, normal and alternative asymptotics
  figures["fig1"] = export_svg({}, 10, opt);
  SvgOptions plus = opt;
  plus.draw_plus_wedges = true;
  figures["fig2"] = export_svg({}, 10, plus);

  // harmonic wedges with the toboggan that leaves the first sheet
  ContourPtr third_third = wedge_join(3, 2.0, 1.0);
  figures["fig3"] = export_svg({third_third}, 2, opt);

  // second-second contour of the anomalous asymptotics
  SvgOptions fig4 = plus;
  figures["fig4"] = export_svg({wedge_join(2, 2.0, 1.0)}, 2, fig4);

  // third-third toboggan: cut rotated clockwise / anticlockwise by 90 degrees
  SvgOptions left_view = opt;
  left_view.cut_rotation = -kPi / 2.0;
  figures["fig5"] = export_svg({third_third}, 2, left_view);
  SvgOptions right_view = opt;
  right_view.cut_rotation = kPi / 2.0;
  figures["fig6"] = export_svg({third_third}, 2, right_view);

  // fourth-fourth toboggan, cut rotated by 180 degrees
  SvgOptions fig7 = plus;
  fig7.cut_rotation = -kPi;
  figures["fig7"] = export_svg({wedge_join(4, 2.0, 1.0)}, 2, fig7);
  return figures;
}

}  // namespace toboggan
