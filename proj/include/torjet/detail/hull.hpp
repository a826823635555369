#pragma once

// Exact convex hulls of integer point sets whose affine span is all of Z^d,
// d <= 3. Input points must be distinct and sorted lexicographically; the
// returned vertex and facet sets index into that input.

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "torjet/arith.hpp"
#include "torjet/linalg.hpp"

namespace torjet::detail {

struct RawHull {
  std::vector<std::size_t> vertices;              // ascending input indices
  std::vector<std::vector<std::size_t>> facets;   // ascending vertex indices per facet
  std::vector<IntVector> normals;                 // primitive inward normal per facet
  std::vector<Integer> offsets;                   // <normal, x> >= offset
};

inline IntVector sub(const IntVector& a, const IntVector& b) {
  IntVector d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

inline IntVector cross(const IntVector& a, const IntVector& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline RawHull hull_1d(const std::vector<IntVector>& pts) {
  RawHull h;
  std::size_t lo = 0, hi = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i][0] < pts[lo][0]) lo = i;
    if (pts[i][0] > pts[hi][0]) hi = i;
  }
  h.vertices = {std::min(lo, hi), std::max(lo, hi)};
  h.facets = {{lo}, {hi}};
  h.normals = {{Integer(1)}, {Integer(-1)}};
  h.offsets = {pts[lo][0], -pts[hi][0]};
  return h;
}

inline Integer turn(const IntVector& o, const IntVector& a, const IntVector& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Andrew's monotone chain; collinear boundary points are dropped.
inline RawHull hull_2d(const std::vector<IntVector>& pts) {
  std::vector<std::size_t> chain(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && turn(pts[chain[k - 2]], pts[chain[k - 1]], pts[i]) <= 0) --k;
    chain[k++] = i;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && turn(pts[chain[k - 2]], pts[chain[k - 1]], pts[i]) <= 0) --k;
    chain[k++] = i;
  }
  chain.resize(k - 1);  // counter-clockwise, last point repeats the first

  RawHull h;
  h.vertices = chain;
  std::sort(h.vertices.begin(), h.vertices.end());
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const std::size_t a = chain[i], b = chain[(i + 1) % chain.size()];
    const IntVector e = sub(pts[b], pts[a]);
    IntVector normal = primitive({-e[1], e[0]});
    h.offsets.push_back(dot(normal, pts[a]));
    h.normals.push_back(std::move(normal));
    h.facets.push_back({std::min(a, b), std::max(a, b)});
  }
  return h;
}

// Incremental hull with strict visibility. A point lying on the plane of a
// visible triangle's neighbour is never joined to a collinear horizon edge,
// because a triangle containing that line cannot be strictly visible.
inline RawHull hull_3d(const std::vector<IntVector>& pts) {
  using Tri = std::array<std::size_t, 3>;
  auto outward = [&](const Tri& t) { return cross(sub(pts[t[1]], pts[t[0]]), sub(pts[t[2]], pts[t[0]])); };

  std::array<std::size_t, 4> seed{0, 0, 0, 0};
  std::size_t i = 1;
  while (pts[i] == pts[0]) ++i;
  seed[1] = i;
  for (i = 1; i < pts.size(); ++i) {
    const IntVector c = cross(sub(pts[seed[1]], pts[0]), sub(pts[i], pts[0]));
    if (c[0] != 0 || c[1] != 0 || c[2] != 0) break;
  }
  seed[2] = i;
  for (i = 1; i < pts.size(); ++i) {
    if (determinant3(sub(pts[seed[1]], pts[0]), sub(pts[seed[2]], pts[0]), sub(pts[i], pts[0])) != 0) break;
  }
  seed[3] = i;

  std::vector<Tri> tris;
  for (std::size_t skip = 0; skip < 4; ++skip) {
    Tri t{};
    std::size_t w = 0;
    for (std::size_t j = 0; j < 4; ++j)
      if (j != skip) t[w++] = seed[j];
    if (dot(outward(t), sub(pts[seed[skip]], pts[t[0]])) > 0) std::swap(t[1], t[2]);
    tris.push_back(t);
  }

  for (std::size_t p = 0; p < pts.size(); ++p) {
    if (std::find(seed.begin(), seed.end(), p) != seed.end()) continue;
    std::vector<bool> visible(tris.size(), false);
    bool any = false;
    for (std::size_t t = 0; t < tris.size(); ++t) {
      if (dot(outward(tris[t]), sub(pts[p], pts[tris[t][0]])) > 0) visible[t] = any = true;
    }
    if (!any) continue;
    std::map<std::pair<std::size_t, std::size_t>, int> directed;
    for (std::size_t t = 0; t < tris.size(); ++t) {
      if (!visible[t]) continue;
      for (int e = 0; e < 3; ++e) directed[{tris[t][e], tris[t][(e + 1) % 3]}] += 1;
    }
    std::vector<Tri> next;
    for (std::size_t t = 0; t < tris.size(); ++t)
      if (!visible[t]) next.push_back(tris[t]);
    for (const auto& [edge, count] : directed) {
      if (directed.count({edge.second, edge.first})) continue;
      next.push_back({edge.first, edge.second, p});
    }
    tris = std::move(next);
  }

  // Merge coplanar triangles into facets.
  std::map<std::pair<IntVector, Integer>, int> planes;
  std::vector<std::size_t> corners;
  for (const Tri& t : tris) {
    IntVector normal = primitive(outward(t));
    for (Integer& x : normal) x = -x;
    const Integer offset = dot(normal, pts[t[0]]);
    planes.emplace(std::make_pair(std::move(normal), offset), 0);
    corners.insert(corners.end(), t.begin(), t.end());
  }
  std::sort(corners.begin(), corners.end());
  corners.erase(std::unique(corners.begin(), corners.end()), corners.end());

  RawHull h;
  for (const auto& entry : planes) {
    h.normals.push_back(entry.first.first);
    h.offsets.push_back(entry.first.second);
  }
  // A corner is a vertex iff the normals of the facets through it span R^3.
  for (std::size_t c : corners) {
    std::vector<RationalVector> tight;
    for (std::size_t f = 0; f < h.normals.size(); ++f)
      if (dot(h.normals[f], pts[c]) == h.offsets[f]) tight.push_back(to_rational(h.normals[f]));
    if (rank(RationalMatrix::from_rows(tight, 3)) == 3) h.vertices.push_back(c);
  }
  for (std::size_t f = 0; f < h.normals.size(); ++f) {
    std::vector<std::size_t> on;
    for (std::size_t v : h.vertices)
      if (dot(h.normals[f], pts[v]) == h.offsets[f]) on.push_back(v);
    h.facets.push_back(std::move(on));
  }
  return h;
}

}  // namespace torjet::detail
