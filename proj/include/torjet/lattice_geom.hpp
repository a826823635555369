#pragma once

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "torjet/arith.hpp"
#include "torjet/detail/hull.hpp"
#include "torjet/linalg.hpp"

namespace torjet {

using LatticePoint = IntVector;
using RationalPoint = RationalVector;
using PointConfiguration = std::vector<LatticePoint>;

/// Facet inequality <normal, x> >= offset with a primitive inward normal.
struct Facet {
  IntVector normal;
  Integer offset;
  std::vector<std::size_t> vertices;
};

/// A nonempty face given by the indices of its vertices.
struct Face {
  int dim = 0;
  std::vector<std::size_t> vertices;
};

/// Convex hull of finitely many lattice points in Z^n, n <= 3. The polytope
/// may be lower-dimensional; facet inequalities exist only when it is
/// full-dimensional, the face lattice always.
class LatticePolytope {
 public:
  static LatticePolytope from_points(std::vector<IntVector> points) {
    if (points.empty()) throw Error(ErrorCode::EmptyInput, "no points");
    const std::size_t n = points[0].size();
    if (n == 0) throw Error(ErrorCode::DimensionMismatch, "zero-dimensional ambient space");
    for (const auto& p : points)
      if (p.size() != n) throw Error(ErrorCode::DimensionMismatch, "points of different lengths");
    if (n > 3) throw Error(ErrorCode::DimensionUnsupported, "ambient dimension " + std::to_string(n) + " > 3", static_cast<long>(n));
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    LatticePolytope P;
    P.ambient_ = n;
    std::vector<std::size_t> pivots;
    P.dim_ = affine_rank(points, &pivots);

    std::vector<std::vector<std::size_t>> facet_sets;
    std::vector<std::size_t> vertex_ids;
    detail::RawHull raw;
    if (P.dim_ == 0) {
      vertex_ids = {0};
    } else {
      // Coordinates at the pivot columns determine a point of the affine span.
      std::vector<IntVector> proj;
      proj.reserve(points.size());
      for (const auto& p : points) {
        IntVector q;
        for (std::size_t c : pivots) q.push_back(p[c]);
        proj.push_back(std::move(q));
      }
      // Projection onto pivot columns need not preserve lexicographic order.
      std::vector<std::size_t> order(points.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return proj[a] < proj[b]; });
      std::vector<IntVector> sorted;
      for (std::size_t i : order) sorted.push_back(proj[i]);
      if (P.dim_ == 1) raw = detail::hull_1d(sorted);
      else if (P.dim_ == 2) raw = detail::hull_2d(sorted);
      else raw = detail::hull_3d(sorted);
      for (std::size_t v : raw.vertices) vertex_ids.push_back(order[v]);
      for (auto& f : raw.facets) {
        std::vector<std::size_t> g;
        for (std::size_t v : f) g.push_back(order[v]);
        std::sort(g.begin(), g.end());
        facet_sets.push_back(std::move(g));
      }
    }
    std::sort(vertex_ids.begin(), vertex_ids.end());
    std::vector<std::size_t> renumber(points.size(), 0);
    for (std::size_t i = 0; i < vertex_ids.size(); ++i) {
      renumber[vertex_ids[i]] = i;
      P.vertices_.push_back(points[vertex_ids[i]]);
    }
    for (auto& f : facet_sets)
      for (auto& v : f) v = renumber[v];

    if (P.full_dimensional()) {
      for (std::size_t f = 0; f < facet_sets.size(); ++f) P.facets_.push_back({raw.normals[f], raw.offsets[f], facet_sets[f]});
      std::sort(P.facets_.begin(), P.facets_.end(), [](const Facet& a, const Facet& b) { return a.vertices < b.vertices; });
    }
    P.build_face_lattice(facet_sets);
    return P;
  }

  std::size_t ambient_dim() const noexcept { return ambient_; }
  int dim() const noexcept { return dim_; }
  bool full_dimensional() const noexcept { return dim_ == static_cast<int>(ambient_); }

  /// Lexicographically sorted vertices.
  const std::vector<IntVector>& vertices() const noexcept { return vertices_; }
  /// Facet inequalities; empty unless full-dimensional.
  const std::vector<Facet>& facets() const noexcept { return facets_; }
  /// All nonempty faces including P itself, sorted by dimension then vertex set.
  const std::vector<Face>& faces() const noexcept { return faces_; }

  std::vector<Face> faces_of_dim(int d) const {
    std::vector<Face> out;
    for (const Face& f : faces_)
      if (f.dim == d) out.push_back(f);
    return out;
  }

  std::vector<Face> edges() const { return faces_of_dim(1); }

  bool contains(const IntVector& x) const {
    require_full("contains");
    for (const Facet& f : facets_)
      if (dot(f.normal, x) < f.offset) return false;
    return true;
  }

  bool contains_strictly(const IntVector& x) const {
    require_full("contains_strictly");
    for (const Facet& f : facets_)
      if (dot(f.normal, x) <= f.offset) return false;
    return true;
  }

  /// Normalized volume of a face in the lattice induced on its affine span.
  Integer face_volume(const Face& face) const {
    Integer total = 0;
    for (const auto& simplex : triangulate(face)) total += simplex_volume(simplex);
    return total;
  }

  Integer volume() const { return face_volume(faces_.back()); }

  /// Lattice length of an edge.
  Integer edge_length(const Face& edge) const {
    return content(detail::sub(vertices_[edge.vertices[1]], vertices_[edge.vertices[0]]));
  }

  /// Faces of dimension face.dim - 1 contained in face.
  std::vector<Face> subfacets(const Face& face) const {
    std::vector<Face> out;
    for (const Face& g : faces_) {
      if (g.dim != face.dim - 1) continue;
      if (std::includes(face.vertices.begin(), face.vertices.end(), g.vertices.begin(), g.vertices.end())) out.push_back(g);
    }
    return out;
  }

  bool operator==(const LatticePolytope& other) const {
    return ambient_ == other.ambient_ && vertices_ == other.vertices_;
  }

 private:
  void require_full(const char* what) const {
    if (!full_dimensional())
      throw Error(ErrorCode::NotFullDimensional, std::string(what) + " needs a full-dimensional polytope", dim_);
  }

  void build_face_lattice(const std::vector<std::vector<std::size_t>>& facet_sets) {
    std::set<std::vector<std::size_t>> seen;
    std::vector<std::vector<std::size_t>> frontier;
    for (const auto& f : facet_sets)
      if (seen.insert(f).second) frontier.push_back(f);
    while (!frontier.empty()) {
      std::vector<std::vector<std::size_t>> next;
      for (const auto& a : frontier) {
        for (const auto& b : facet_sets) {
          std::vector<std::size_t> c;
          std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(c));
          if (!c.empty() && seen.insert(c).second) next.push_back(std::move(c));
        }
      }
      frontier = std::move(next);
    }
    std::vector<std::size_t> all(vertices_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    seen.insert(all);
    for (const auto& s : seen) {
      std::vector<IntVector> pts;
      for (std::size_t v : s) pts.push_back(vertices_[v]);
      faces_.push_back({affine_rank(pts), s});
    }
    std::stable_sort(faces_.begin(), faces_.end(), [](const Face& a, const Face& b) {
      return a.dim != b.dim ? a.dim < b.dim : a.vertices < b.vertices;
    });
  }

  // Cone from the lowest vertex over the subfacets that miss it.
  std::vector<std::vector<std::size_t>> triangulate(const Face& face) const {
    if (face.dim == 0) return {face.vertices};
    const std::size_t apex = face.vertices.front();
    std::vector<std::vector<std::size_t>> out;
    for (const Face& g : subfacets(face)) {
      if (std::binary_search(g.vertices.begin(), g.vertices.end(), apex)) continue;
      for (auto s : triangulate(g)) {
        s.insert(s.begin(), apex);
        out.push_back(std::move(s));
      }
    }
    return out;
  }

  // gcd of the maximal minors of the edge-vector matrix.
  Integer simplex_volume(const std::vector<std::size_t>& s) const {
    const std::size_t d = s.size() - 1;
    if (d == 0) return 1;
    std::vector<IntVector> rows;
    for (std::size_t i = 1; i <= d; ++i) rows.push_back(detail::sub(vertices_[s[i]], vertices_[s[0]]));
    Integer g = 0;
    std::vector<std::size_t> cols(d);
    // enumerate d-subsets of the ambient coordinates
    std::vector<bool> pick(ambient_, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(d), true);
    do {
      std::vector<IntVector> minor;
      for (const auto& r : rows) {
        IntVector m;
        for (std::size_t c = 0; c < ambient_; ++c)
          if (pick[c]) m.push_back(r[c]);
        minor.push_back(std::move(m));
      }
      g = gcd(g, determinant(minor));
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return g;
  }

  std::size_t ambient_ = 0;
  int dim_ = -1;
  std::vector<IntVector> vertices_;
  std::vector<Facet> facets_;
  std::vector<Face> faces_;
};

/// Full-dimensional hull; lower-dimensional input is rejected with its actual dimension.
inline LatticePolytope convex_hull(const std::vector<IntVector>& points) {
  LatticePolytope P = LatticePolytope::from_points(points);
  if (!P.full_dimensional())
    throw Error(ErrorCode::NotFullDimensional, "affine span has dimension " + std::to_string(P.dim()), P.dim());
  return P;
}

inline Integer normalized_volume(const LatticePolytope& P) { return P.volume(); }
inline Integer normalized_volume(const LatticePolytope& P, const Face& face) { return P.face_volume(face); }

/// Lattice points of a full-dimensional polytope in lexicographic order.
inline std::vector<IntVector> lattice_points(const LatticePolytope& P, bool strict = false) {
  if (!P.full_dimensional()) throw Error(ErrorCode::NotFullDimensional, "lattice_points needs a full-dimensional polytope", P.dim());
  const std::size_t n = P.ambient_dim();
  IntVector lo = P.vertices()[0], hi = P.vertices()[0];
  for (const auto& v : P.vertices())
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = std::min(lo[i], v[i]);
      hi[i] = std::max(hi[i], v[i]);
    }
  std::vector<IntVector> out;
  IntVector x = lo;
  while (true) {
    if (strict ? P.contains_strictly(x) : P.contains(x)) out.push_back(x);
    std::size_t i = n;
    while (i-- > 0) {
      if (x[i] < hi[i]) {
        x[i] += 1;
        break;
      }
      x[i] = lo[i];
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

enum class HullTag { Empty, Point, Segment, Polygon, Full };

inline std::string tag_name(HullTag t) {
  switch (t) {
    case HullTag::Empty: return "empty";
    case HullTag::Point: return "point";
    case HullTag::Segment: return "segment";
    case HullTag::Polygon: return "polygon";
    case HullTag::Full: return "full";
  }
  return "unknown";
}

inline HullTag tag_for(int dim, std::size_t ambient) {
  if (dim < 0) return HullTag::Empty;
  if (static_cast<std::size_t>(dim) == ambient) return HullTag::Full;
  if (dim == 0) return HullTag::Point;
  if (dim == 1) return HullTag::Segment;
  return HullTag::Polygon;
}

struct InteriorHull {
  HullTag tag = HullTag::Empty;
  std::optional<LatticePolytope> polytope;
};

/// Hull of the strictly interior lattice points.
inline InteriorHull interior_hull(const LatticePolytope& P) {
  const auto pts = lattice_points(P, true);
  if (pts.empty()) return {};
  // The points on any axis-parallel line form an interval, so a vertex of the
  // hull must be an end of its interval in every axis direction.
  std::vector<IntVector> boundary;
  for (const auto& p : pts) {
    bool end_everywhere = true;
    IntVector q = p;
    for (std::size_t i = 0; end_everywhere && i < q.size(); ++i) {
      bool both = true;
      for (int s : {-1, 1}) {
        q[i] += s;
        both = both && std::binary_search(pts.begin(), pts.end(), q);
        q[i] -= s;
      }
      end_everywhere = !both;
    }
    if (end_everywhere) boundary.push_back(p);
  }
  LatticePolytope Q = LatticePolytope::from_points(boundary);
  return {tag_for(Q.dim(), Q.ambient_dim()), std::move(Q)};
}

/// Polytope with rational vertices, stored as `scale` times a lattice polytope.
/// Lower-dimensional volumes of such a polytope are not used anywhere and
/// are deliberately not offered.
struct RationalPolytope {
  std::size_t ambient_dim = 0;
  std::vector<RationalVector> vertices;  // lexicographic
  Integer scale = 1;
  std::optional<LatticePolytope> scaled;  // hull of scale * vertices; empty for the empty set

  bool empty() const { return !scaled.has_value(); }
  int dim() const { return scaled ? scaled->dim() : -1; }
  HullTag tag() const { return tag_for(dim(), ambient_dim); }
  bool is_lattice() const { return scale == 1; }

  /// Normalized volume; zero unless full-dimensional.
  Rational volume() const {
    if (!scaled || !scaled->full_dimensional()) return 0;
    Integer denom = 1;
    for (std::size_t i = 0; i < ambient_dim; ++i) denom *= scale;
    return make_rational(scaled->volume(), denom);
  }
};

inline RationalPolytope rational_polytope(std::size_t ambient, std::vector<RationalVector> pts) {
  RationalPolytope Q;
  Q.ambient_dim = ambient;
  if (pts.empty()) return Q;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  Integer D = 1;
  for (const auto& p : pts) D = lcm(D, denominator_lcm(p));
  std::vector<IntVector> scaled;
  for (const auto& p : pts) {
    IntVector q;
    for (const Rational& x : p) {
      const Rational y = x * D;
      q.push_back(y.get_num());
    }
    scaled.push_back(std::move(q));
  }
  Q.scale = D;
  Q.scaled = LatticePolytope::from_points(scaled);
  for (const auto& v : Q.scaled->vertices()) {
    RationalVector w;
    for (const Integer& x : v) w.push_back(make_rational(x, D));
    Q.vertices.push_back(std::move(w));
  }
  std::sort(Q.vertices.begin(), Q.vertices.end());
  return Q;
}

/// Intersection of the half-spaces <a_i, x> >= b_i; bounded by assumption.
/// Vertices are found by solving every n-subset of the inequalities as equalities.
inline RationalPolytope polytope_from_inequalities(std::size_t n, const std::vector<IntVector>& normals,
                                                   const std::vector<Rational>& offsets) {
  std::vector<RationalVector> found;
  const std::size_t m = normals.size();
  std::vector<bool> pick(m, false);
  if (m < n) return rational_polytope(n, {});
  std::fill(pick.begin(), pick.begin() + static_cast<long>(n), true);
  do {
    RationalMatrix M(n, n);
    RationalVector b(n);
    std::size_t r = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (!pick[i]) continue;
      for (std::size_t j = 0; j < n; ++j) M(r, j) = normals[i][j];
      b[r++] = offsets[i];
    }
    if (rank(M) < n) continue;
    auto x = solve(M, b);
    bool feasible = true;
    for (std::size_t i = 0; i < m && feasible; ++i)
      if (dot(normals[i], *x) < offsets[i]) feasible = false;
    if (feasible) found.push_back(std::move(*x));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return rational_polytope(n, std::move(found));
}

/// {x : <nu_F, x> >= r a_F + 1 for every facet F of P}.
inline RationalPolytope tightened_polytope(const LatticePolytope& P, const Integer& r) {
  if (!P.full_dimensional()) throw Error(ErrorCode::NotFullDimensional, "tightening needs facet inequalities", P.dim());
  if (r < 1) throw Error(ErrorCode::BadParameters, "r must be positive");
  std::vector<IntVector> normals;
  std::vector<Rational> offsets;
  for (const Facet& f : P.facets()) {
    normals.push_back(f.normal);
    offsets.emplace_back(r * f.offset + 1);
  }
  return polytope_from_inequalities(P.ambient_dim(), normals, offsets);
}

inline LatticePolytope minkowski_sum(const LatticePolytope& P, const LatticePolytope& Q) {
  if (P.ambient_dim() != Q.ambient_dim()) throw Error(ErrorCode::DimensionMismatch, "Minkowski summands live in different spaces");
  std::vector<IntVector> sums;
  for (const auto& p : P.vertices())
    for (const auto& q : Q.vertices()) {
      IntVector s(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) s[i] = p[i] + q[i];
      sums.push_back(std::move(s));
    }
  return LatticePolytope::from_points(std::move(sums));
}

inline LatticePolytope dilate(const LatticePolytope& P, const Integer& k) {
  std::vector<IntVector> pts;
  for (auto v : P.vertices()) {
    for (auto& x : v) x *= k;
    pts.push_back(std::move(v));
  }
  return LatticePolytope::from_points(std::move(pts));
}

inline Integer full_volume(const LatticePolytope& P) { return P.full_dimensional() ? P.volume() : Integer(0); }

/// Normalized mixed volume in R^3, MV(P,P,P) = Vol(P), by evaluating the
/// volume polynomial at the 0/1 corners of (l1, l2, l3).
inline Rational mixed_volume3(const LatticePolytope& P1, const LatticePolytope& P2, const LatticePolytope& P3) {
  if (P1.ambient_dim() != 3 || P2.ambient_dim() != 3 || P3.ambient_dim() != 3)
    throw Error(ErrorCode::DimensionMismatch, "mixed_volume3 needs polytopes in R^3");
  const LatticePolytope* parts[3] = {&P1, &P2, &P3};
  Integer total = 0;
  for (int mask = 1; mask < 8; ++mask) {
    std::optional<LatticePolytope> sum;
    int size = 0;
    for (int i = 0; i < 3; ++i) {
      if (!(mask & (1 << i))) continue;
      ++size;
      sum = sum ? minkowski_sum(*sum, *parts[i]) : *parts[i];
    }
    const Integer v = full_volume(*sum);
    if ((3 - size) % 2 == 0) total += v;
    else total -= v;
  }
  return make_rational(total, 6);
}

/// Mixed volume with rational arguments, via MV(D1 Q1, D2 Q2, D3 Q3) = D1 D2 D3 MV(Q1, Q2, Q3).
inline Rational mixed_volume3(const RationalPolytope& Q1, const RationalPolytope& Q2, const RationalPolytope& Q3) {
  if (Q1.empty() || Q2.empty() || Q3.empty()) throw Error(ErrorCode::EmptySet, "mixed volume of an empty polytope");
  const Rational mv = mixed_volume3(*Q1.scaled, *Q2.scaled, *Q3.scaled);
  return mv / Rational(Q1.scale * Q2.scale * Q3.scale);
}

inline RationalPolytope as_rational(const LatticePolytope& P) {
  std::vector<RationalVector> pts;
  for (const auto& v : P.vertices()) pts.push_back(to_rational(v));
  return rational_polytope(P.ambient_dim(), std::move(pts));
}

// ---------------------------------------------------------------------------
// Regular subdivisions

struct SubdivisionCell {
  std::vector<std::size_t> marked;  // configuration indices on the lower face
  RationalVector gradient;          // u_i = <gradient, r_i> + intercept on marked points
  Rational intercept;
  int dim = 0;
};

struct RegularSubdivision {
  PointConfiguration configuration;
  RationalVector lifting;
  std::vector<SubdivisionCell> cells;  // maximal cells, sorted by marked set
};

/// Lower faces of the lifted configuration {(r_i, u_i)}; supports n <= 2.
inline RegularSubdivision regular_subdivision(const PointConfiguration& A, const RationalVector& u) {
  if (A.empty()) throw Error(ErrorCode::EmptyInput, "empty configuration");
  if (u.size() != A.size())
    throw Error(ErrorCode::LengthMismatch, "lifting has " + std::to_string(u.size()) + " entries for " + std::to_string(A.size()) + " points");
  const std::size_t n = A[0].size();
  if (n > 2) throw Error(ErrorCode::DimensionUnsupported, "regular subdivisions need n <= 2", static_cast<long>(n));
  const int d = affine_rank(A);
  if (d != static_cast<int>(n)) throw Error(ErrorCode::NotFullDimensional, "configuration is not full-dimensional", d);

  RegularSubdivision S{A, u, {}};
  const Integer L = denominator_lcm(u);
  std::vector<IntVector> lifted;
  for (std::size_t i = 0; i < A.size(); ++i) {
    IntVector p = A[i];
    const Rational h = u[i] * L;
    p.push_back(h.get_num());
    lifted.push_back(std::move(p));
  }
  const LatticePolytope H = LatticePolytope::from_points(lifted);
  if (!H.full_dimensional()) {
    // u is affine on A: a single cell; recover the affine function by solving.
    RationalMatrix M(A.size(), n + 1);
    for (std::size_t i = 0; i < A.size(); ++i) {
      for (std::size_t j = 0; j < n; ++j) M(i, j) = A[i][j];
      M(i, n) = 1;
    }
    const auto sol = solve(M, u);
    SubdivisionCell c;
    for (std::size_t i = 0; i < A.size(); ++i) c.marked.push_back(i);
    c.gradient.assign(sol->begin(), sol->begin() + static_cast<long>(n));
    c.intercept = (*sol)[n];
    c.dim = static_cast<int>(n);
    S.cells.push_back(std::move(c));
    return S;
  }
  for (const Facet& f : H.facets()) {
    if (f.normal[n] <= 0) continue;
    SubdivisionCell c;
    std::vector<IntVector> pts;
    for (std::size_t i = 0; i < lifted.size(); ++i)
      if (dot(f.normal, lifted[i]) == f.offset) {
        c.marked.push_back(i);
        pts.push_back(A[i]);
      }
    const Rational scale = Rational(f.normal[n] * L);
    for (std::size_t j = 0; j < n; ++j) c.gradient.push_back(Rational(-f.normal[j]) / scale);
    c.intercept = Rational(f.offset) / scale;
    c.dim = affine_rank(pts);
    S.cells.push_back(std::move(c));
  }
  std::sort(S.cells.begin(), S.cells.end(), [](const SubdivisionCell& a, const SubdivisionCell& b) { return a.marked < b.marked; });
  return S;
}

}  // namespace torjet
