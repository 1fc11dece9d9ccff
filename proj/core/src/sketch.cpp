#include "bbp/sketch.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace bbp {

namespace {

struct Pt {
  double x, y;
};

const char* kPalette[] = {"#c62828", "#1565c0", "#2e7d32", "#6a1b9a",
                          "#ef6c00", "#00838f", "#4e342e", "#9e9d24"};

std::string fmt(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << v;
  return os.str();
}

}  // namespace

std::string render_sketch_svg(const CatalogEntry& entry) {
  ResolvedRadius rr = resolve_radius(entry.base, entry.b);
  double r = embed(rr.r, 12).real().upper_magnitude_double();

  const double scale = 300.0 / r;  // circle radius 300 px in user units
  // world -> user coordinates: y flips, circle center (1, 0) at the origin
  auto map = [&](double wx, double wy) {
    return Pt{(wx - 1.0) * scale, -wy * scale};
  };
  Pt A = map(0, 0), B = map(1, 0);

  std::vector<Pt> cs;
  std::vector<std::string> labels;
  for (const auto& [a, coeff] : entry.coeffs) {
    double theta = 2.0 * M_PI * static_cast<double>(a) / static_cast<double>(entry.b);
    Pt C = map(1.0 + r * std::cos(theta), r * std::sin(theta));
    cs.push_back(C);
    std::ostringstream lab;
    lab << "C(a=" << a << "), coeff " << coeff.get_str();
    labels.push_back(lab.str());
  }

  // fit the view box around everything (circle, A, B, legend strip)
  double min_x = std::min(A.x, -300.0), max_x = 300.0;
  double min_y = -320.0, max_y = 320.0;
  for (const auto& c : cs) {
    min_x = std::min(min_x, c.x);
    max_x = std::max(max_x, c.x);
  }
  min_x -= 40;
  max_x += 40;
  double legend_h = 24.0 * static_cast<double>(cs.size()) + 30.0;
  max_y += legend_h;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"700\" "
      << "viewBox=\"" << fmt(min_x) << " " << fmt(min_y) << " " << fmt(max_x - min_x) << " "
      << fmt(max_y - min_y) << "\">\n";
  svg << "  <rect x=\"" << fmt(min_x) << "\" y=\"" << fmt(min_y) << "\" width=\""
      << fmt(max_x - min_x) << "\" height=\"" << fmt(max_y - min_y) << "\" fill=\"white\"/>\n";
  // axes through A
  svg << "  <line x1=\"" << fmt(min_x + 10) << "\" y1=\"0\" x2=\"" << fmt(max_x - 10)
      << "\" y2=\"0\" stroke=\"#999\" stroke-width=\"1\"/>\n";
  svg << "  <line x1=\"" << fmt(A.x) << "\" y1=\"" << fmt(-310.0) << "\" x2=\"" << fmt(A.x)
      << "\" y2=\"" << fmt(310.0) << "\" stroke=\"#999\" stroke-width=\"1\"/>\n";
  // the circle |z - 1| = r
  svg << "  <circle cx=\"0\" cy=\"0\" r=\"300\" fill=\"none\" stroke=\"black\" "
         "stroke-width=\"1.5\"/>\n";
  // triangles
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const char* color = kPalette[i % (sizeof kPalette / sizeof *kPalette)];
    svg << "  <polygon points=\"" << fmt(A.x) << "," << fmt(A.y) << " " << fmt(cs[i].x) << ","
        << fmt(cs[i].y) << " " << fmt(B.x) << "," << fmt(B.y) << "\" fill=\"" << color
        << "\" fill-opacity=\"0.12\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    svg << "  <circle cx=\"" << fmt(cs[i].x) << "\" cy=\"" << fmt(cs[i].y)
        << "\" r=\"4\" fill=\"" << color << "\"/>\n";
    svg << "  <text x=\"" << fmt(cs[i].x + 8) << "\" y=\"" << fmt(cs[i].y - 8)
        << "\" font-size=\"16\">" << labels[i] << "</text>\n";
  }
  // vertices
  svg << "  <circle cx=\"" << fmt(A.x) << "\" cy=\"0\" r=\"4\"/>\n";
  svg << "  <text x=\"" << fmt(A.x - 10) << "\" y=\"24\" font-size=\"16\">A = 0</text>\n";
  svg << "  <circle cx=\"" << fmt(B.x) << "\" cy=\"0\" r=\"4\"/>\n";
  svg << "  <text x=\"" << fmt(B.x + 6) << "\" y=\"24\" font-size=\"16\">B = 1</text>\n";
  // legend
  double ly = 330.0;
  svg << "  <text x=\"" << fmt(min_x + 20) << "\" y=\"" << fmt(ly) << "\" font-size=\"16\">"
      << "r = " << entry.base.to_string() << ", b = " << entry.b << "</text>\n";
  for (std::size_t i = 0; i < cs.size(); ++i) {
    ly += 24;
    const char* color = kPalette[i % (sizeof kPalette / sizeof *kPalette)];
    svg << "  <rect x=\"" << fmt(min_x + 20) << "\" y=\"" << fmt(ly - 12)
        << "\" width=\"14\" height=\"14\" fill=\"" << color << "\" fill-opacity=\"0.5\"/>\n";
    svg << "  <text x=\"" << fmt(min_x + 42) << "\" y=\"" << fmt(ly) << "\" font-size=\"14\">"
        << labels[i] << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace bbp
