#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "torjet/tropical.hpp"

namespace torjet {

namespace detail {

inline std::string fmt(double x) {
  if (std::fabs(x) < 5e-5) x = 0.0;  // avoid "-0.0000"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

// Parameter t >= 0 where p + t d leaves the box [lo, hi]^2.
inline double exit_time(const double p[2], const double d[2], const double lo[2], const double hi[2]) {
  double t = 1e300;
  for (int i = 0; i < 2; ++i) {
    if (d[i] > 0) t = std::min(t, (hi[i] - p[i]) / d[i]);
    if (d[i] < 0) t = std::min(t, (lo[i] - p[i]) / d[i]);
  }
  return t;
}

}  // namespace detail

/// Deterministic drawing of a plane tropical curve. Curve edges and rays are
/// the only <line> elements; the unit grid is a single <path>. The y axis
/// points up.
inline std::string render_svg(const PlaneTropicalCurve& c) {
  double lo[2] = {0, 0}, hi[2] = {0, 0};
  for (std::size_t i = 0; i < c.vertices.size(); ++i)
    for (int k = 0; k < 2; ++k) {
      const double v = c.vertices[i][k].get_d();
      if (i == 0 || v < lo[k]) lo[k] = v;
      if (i == 0 || v > hi[k]) hi[k] = v;
    }
  for (int k = 0; k < 2; ++k) {
    lo[k] = std::floor(lo[k]) - 2;
    hi[k] = std::ceil(hi[k]) + 2;
  }
  const double w = hi[0] - lo[0], h = hi[1] - lo[1];
  auto X = [&](double x) { return detail::fmt(x); };
  auto Y = [&](double y) { return detail::fmt(-y); };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + X(lo[0]) + " " + Y(hi[1]) + " " + detail::fmt(w) + " " +
         detail::fmt(h) + "\">\n";
  std::string grid;
  for (double x = lo[0]; x <= hi[0]; x += 1) grid += "M" + X(x) + " " + Y(lo[1]) + "V" + Y(hi[1]);
  for (double y = lo[1]; y <= hi[1]; y += 1) grid += "M" + X(lo[0]) + " " + Y(y) + "H" + X(hi[0]);
  out += "<path d=\"" + grid + "\" stroke=\"#dddddd\" stroke-width=\"0.02\" fill=\"none\"/>\n";

  auto segment = [&](double x1, double y1, double x2, double y2, const Integer& m) {
    const double sw = 0.04 * m.get_d();
    out += "<line x1=\"" + X(x1) + "\" y1=\"" + Y(y1) + "\" x2=\"" + X(x2) + "\" y2=\"" + Y(y2) + "\" stroke=\"black\" stroke-width=\"" +
           detail::fmt(sw) + "\"/>\n";
    out += "<text x=\"" + X((x1 + x2) / 2) + "\" y=\"" + Y((y1 + y2) / 2) + "\" font-size=\"0.35\">" + m.get_str() + "</text>\n";
  };
  for (const auto& e : c.edges) {
    segment(c.vertices[e.from][0].get_d(), c.vertices[e.from][1].get_d(), c.vertices[e.to][0].get_d(), c.vertices[e.to][1].get_d(),
            e.multiplicity);
  }
  for (const auto& r : c.rays) {
    const double p[2] = {c.vertices[r.from][0].get_d(), c.vertices[r.from][1].get_d()};
    const double d[2] = {r.direction[0].get_d(), r.direction[1].get_d()};
    const double t = detail::exit_time(p, d, lo, hi);
    segment(p[0], p[1], p[0] + t * d[0], p[1] + t * d[1], r.multiplicity);
  }
  for (const auto& v : c.vertices) {
    out += "<circle cx=\"" + X(v[0].get_d()) + "\" cy=\"" + Y(v[1].get_d()) + "\" r=\"0.08\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace torjet
