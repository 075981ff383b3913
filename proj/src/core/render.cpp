#include "render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace wigmd {

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::io_error, "cannot open for writing: " + path);
  out << text;
  if (!out) fail(Errc::io_error, "write failed: " + path);
}

double max_abs_real(const Field2D& f) {
  double v = 0.0;
  for (size_t i = 0; i < f.count(); ++i) v = std::max(v, std::abs(f.data()[i].real()));
  return v;
}

}  // namespace

std::string field_to_ppm(const Field2D& f) {
  const int n0 = f.size_x();
  const int n1 = f.size_y();
  const double vmax = max_abs_real(f);
  std::string out = "P6\n" + std::to_string(n1) + " " + std::to_string(n0) + "\n255\n";
  out.reserve(out.size() + static_cast<size_t>(n0) * n1 * 3);
  // rows top-to-bottom are decreasing xi; columns left-to-right increasing x
  for (int b = n1 - 1; b >= 0; --b)
    for (int a = 0; a < n0; ++a) {
      const double t = vmax > 0.0 ? std::clamp(f.at(a, b).real() / vmax, -1.0, 1.0) : 0.0;
      unsigned char r = 255, g = 255, bl = 255;
      if (t >= 0.0) {
        g = static_cast<unsigned char>(std::lround(255.0 * (1.0 - t)));
        bl = g;
      } else {
        r = static_cast<unsigned char>(std::lround(255.0 * (1.0 + t)));
        g = r;
      }
      out.push_back(static_cast<char>(r));
      out.push_back(static_cast<char>(g));
      out.push_back(static_cast<char>(bl));
    }
  return out;
}

void save_ppm(const std::string& path, const Field2D& f) { write_file(path, field_to_ppm(f)); }

namespace {

struct Segment {
  double x0, y0, x1, y1;
};

// marching squares on the real part at a single level
void contour_level(const Field2D& f, double level, std::vector<Segment>& segments) {
  const int n0 = f.size_x();
  const int n1 = f.size_y();
  auto value = [&](int a, int b) { return f.at(a, b).real() - level; };
  auto lerp = [](double va, double vb) { return va / (va - vb); };
  for (int a = 0; a + 1 < n0; ++a)
    for (int b = 0; b + 1 < n1; ++b) {
      const double v00 = value(a, b), v10 = value(a + 1, b);
      const double v01 = value(a, b + 1), v11 = value(a + 1, b + 1);
      int mask = (v00 > 0) | ((v10 > 0) << 1) | ((v11 > 0) << 2) | ((v01 > 0) << 3);
      if (mask == 0 || mask == 15) continue;
      // edge interpolation points in (a,b) index coordinates
      const double ex_bottom = a + lerp(v00, v10);
      const double ex_top = a + lerp(v01, v11);
      const double ey_left = b + lerp(v00, v01);
      const double ey_right = b + lerp(v10, v11);
      auto add = [&](double xa, double ya, double xb, double yb) { segments.push_back({xa, ya, xb, yb}); };
      switch (mask) {
        case 1: case 14: add(ex_bottom, b, a, ey_left); break;
        case 2: case 13: add(ex_bottom, b, a + 1, ey_right); break;
        case 3: case 12: add(a, ey_left, a + 1, ey_right); break;
        case 4: case 11: add(ex_top, b + 1, a + 1, ey_right); break;
        case 5: case 10: add(ex_bottom, b, ex_top, b + 1); break;  // ambiguous saddle, split arbitrarily
        case 6: case 9: add(ex_bottom, b, ex_top, b + 1); break;
        case 7: case 8: add(ex_top, b + 1, a, ey_left); break;
        default: break;
      }
    }
}

}  // namespace

std::string field_to_svg(const Field2D& f) {
  const int n0 = f.size_x();
  const int n1 = f.size_y();
  const double vmax = max_abs_real(f);
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + std::to_string(n0) + " " +
                    std::to_string(n1) + "\">\n";
  const double levels[] = {0.2, 0.4, 0.6, 0.8};
  for (double sgn : {1.0, -1.0})
    for (double lv : levels) {
      if (vmax <= 0.0) continue;
      std::vector<Segment> segs;
      contour_level(f, sgn * lv * vmax, segs);
      if (segs.empty()) continue;
      out += sgn > 0 ? "<path stroke=\"#b03030\"" : "<path stroke=\"#3030b0\"";
      out += " fill=\"none\" stroke-width=\"0.4\" d=\"";
      char buf[96];
      for (const Segment& s : segs) {
        std::snprintf(buf, sizeof(buf), "M%.2f %.2fL%.2f %.2f", s.x0, n1 - 1 - s.y0, s.x1, n1 - 1 - s.y1);
        out += buf;
      }
      out += "\"/>\n";
    }
  out += "</svg>\n";
  return out;
}

void save_svg(const std::string& path, const Field2D& f) { write_file(path, field_to_svg(f)); }

}  // namespace wigmd
