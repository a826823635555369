#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "torjet/lattice_geom.hpp"

namespace torjet {

struct InvariantVector {
  Integer vol;   // normalized volume
  Integer F;     // sum of facet volumes
  Integer E;     // sum of edge lengths
  Integer V;     // vertex count
  bool operator==(const InvariantVector&) const = default;
};

inline void require_full_upto3(const LatticePolytope& P) {
  if (!P.full_dimensional()) throw Error(ErrorCode::NotFullDimensional, "polytope is not full-dimensional", P.dim());
}

inline InvariantVector invariant_vector(const LatticePolytope& P) {
  require_full_upto3(P);
  InvariantVector iv{P.volume(), 0, 0, static_cast<long>(P.vertices().size())};
  for (const Face& f : P.faces()) {
    if (f.dim == P.dim() - 1) iv.F += P.face_volume(f);
    if (f.dim == 1) iv.E += P.edge_length(f);
  }
  return iv;
}

/// Edges at vertex v as primitive directions pointing away from v.
inline std::vector<IntVector> edge_directions_at(const LatticePolytope& P, std::size_t v) {
  std::vector<IntVector> dirs;
  for (const Face& e : P.edges()) {
    if (e.vertices[0] != v && e.vertices[1] != v) continue;
    const std::size_t w = e.vertices[0] == v ? e.vertices[1] : e.vertices[0];
    dirs.push_back(primitive(detail::sub(P.vertices()[w], P.vertices()[v])));
  }
  return dirs;
}

/// Every vertex is simple and its primitive edge directions form a lattice basis.
inline bool is_smooth(const LatticePolytope& P) {
  require_full_upto3(P);
  const std::size_t n = P.ambient_dim();
  for (std::size_t v = 0; v < P.vertices().size(); ++v) {
    const auto dirs = edge_directions_at(P, v);
    if (dirs.size() != n) return false;
    const Integer det = determinant(dirs);
    if (det != 1 && det != -1) return false;
  }
  return true;
}

inline bool is_k_regular(const LatticePolytope& P, const Integer& k) {
  for (const Face& e : P.edges())
    if (P.edge_length(e) < k) return false;
  return true;
}

/// Nefness of K + rL on the smooth toric variety of P: for every vertex,
/// the point cut out by its tightened facet equalities lies in the
/// tightened polytope.
inline bool adjoint_is_nef(const LatticePolytope& P, const Integer& r) {
  require_full_upto3(P);
  const std::size_t n = P.ambient_dim();
  const auto& facets = P.facets();
  for (std::size_t v = 0; v < P.vertices().size(); ++v) {
    std::vector<RationalVector> rows;
    RationalVector rhs;
    for (const Facet& f : facets) {
      if (!std::binary_search(f.vertices.begin(), f.vertices.end(), v)) continue;
      rows.push_back(to_rational(f.normal));
      rhs.emplace_back(r * f.offset + 1);
    }
    const auto x = solve(RationalMatrix::from_rows(rows, n), rhs);
    if (!x) return false;
    for (const Facet& f : facets)
      if (dot(f.normal, *x) < Rational(r * f.offset + 1)) return false;
  }
  return true;
}

struct AdjointInvariants {
  Integer r;
  Rational vol_adj;                  // Vol of the tightened polytope Q, 0 unless Q is full-dimensional
  std::optional<Rational> facet_adj; // r MV(P,Q,Q) - vol_adj; absent when Q is empty
  Integer edge_adj;                  // rE - 24
  HullTag degenerate = HullTag::Empty;
  // Face sums of Q, present when Q is full-dimensional with lattice vertices.
  std::optional<Integer> facet_sum_of_q;
  std::optional<Integer> edge_sum_of_q;
  bool combinatorial_match = false;
  HullTag interior_hull_tag = HullTag::Empty;
  bool interior_hull_differs = false; // Conv(int(rP)) is not the tightened polytope
  RationalPolytope tightened;
};

inline AdjointInvariants adjoint_invariants(const LatticePolytope& P, const Integer& r) {
  require_full_upto3(P);
  if (P.ambient_dim() != 3) throw Error(ErrorCode::NotDim3, "adjoint invariants need a threefold polytope", P.dim());
  if (!is_smooth(P)) throw Error(ErrorCode::NotSmooth, "polytope is not smooth");
  if (r < 1) throw Error(ErrorCode::BadParameters, "r must be positive");

  AdjointInvariants a;
  a.r = r;
  a.tightened = tightened_polytope(P, r);
  const RationalPolytope& Q = a.tightened;
  a.degenerate = Q.tag();
  a.vol_adj = Q.volume();
  const InvariantVector iv = invariant_vector(P);
  a.edge_adj = r * iv.E - 24;
  if (!Q.empty()) {
    const Rational mv = mixed_volume3(as_rational(P), Q, Q);
    a.facet_adj = Rational(r) * mv - a.vol_adj;
  }
  if (!Q.empty() && Q.is_lattice() && Q.scaled->full_dimensional()) {
    const InvariantVector q = invariant_vector(*Q.scaled);
    a.facet_sum_of_q = q.F;
    a.edge_sum_of_q = q.E;
    a.combinatorial_match = a.facet_adj && *a.facet_adj == Rational(q.F) && a.edge_adj == q.E;
  }
  const InteriorHull ih = interior_hull(r == 1 ? P : dilate(P, r));
  a.interior_hull_tag = ih.tag;
  if (ih.polytope.has_value() != !Q.empty()) {
    a.interior_hull_differs = true;
  } else if (ih.polytope) {
    std::vector<RationalVector> iv_pts;
    for (const auto& v : ih.polytope->vertices()) iv_pts.push_back(to_rational(v));
    a.interior_hull_differs = iv_pts != Q.vertices;
  }
  return a;
}

// ---------------------------------------------------------------------------
// Exceptional families for which K + L fails to be nef

enum class ExceptionalKind { None, KSimplex, DoubleCayleyScroll };

struct ExceptionalTag {
  ExceptionalKind kind = ExceptionalKind::None;
  long k = 0;                 // KSimplex
  long a = 0, b = 0, c = 0;   // DoubleCayleyScroll: fiber lengths 2a+twist, 2b+twist, 2c+twist
  long twist = 0;             // 0 for the even family, 1 when every fiber has odd length
  IntVector direction;        // fiber direction for DoubleCayleyScroll
  bool operator==(const ExceptionalTag& o) const {
    return kind == o.kind && k == o.k && a == o.a && b == o.b && c == o.c && twist == o.twist;
  }
};

inline std::string kind_name(ExceptionalKind k) {
  switch (k) {
    case ExceptionalKind::None: return "none";
    case ExceptionalKind::KSimplex: return "k-simplex";
    case ExceptionalKind::DoubleCayleyScroll: return "double-cayley-scroll";
  }
  return "unknown";
}

/// Unimodular U with U e = e_1 for a primitive e, built from integer row operations.
inline std::vector<IntVector> unimodular_completion(const IntVector& e) {
  const std::size_t n = e.size();
  std::vector<IntVector> U(n, IntVector(n, Integer(0)));
  for (std::size_t i = 0; i < n; ++i) U[i][i] = 1;
  IntVector v = e;
  auto row_sub = [&](std::size_t j, std::size_t i, const Integer& q) {
    v[j] -= q * v[i];
    for (std::size_t c = 0; c < n; ++c) U[j][c] -= q * U[i][c];
  };
  while (true) {
    std::size_t best = n;
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (v[i] == 0) continue;
      ++nonzero;
      if (best == n || abs(v[i]) < abs(v[best])) best = i;
    }
    if (nonzero <= 1) {
      std::swap(v[0], v[best]);
      std::swap(U[0], U[best]);
      break;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (j == best || v[j] == 0) continue;
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), v[j].get_mpz_t(), v[best].get_mpz_t());
      row_sub(j, best, q);
    }
  }
  if (v[0] < 0) {
    v[0] = -v[0];
    for (auto& x : U[0]) x = -x;
  }
  if (v[0] != 1) throw Error(ErrorCode::BadParameters, "direction is not primitive");
  return U;
}

inline std::optional<ExceptionalTag> match_double_cayley(const LatticePolytope& P, const IntVector& e) {
  if (P.vertices().size() != 6) return std::nullopt;
  const auto U = unimodular_completion(e);
  std::vector<IntVector> proj;
  for (const auto& v : P.vertices()) proj.push_back({dot(U[1], v), dot(U[2], v)});
  const LatticePolytope T = LatticePolytope::from_points(proj);
  if (!T.full_dimensional() || T.vertices().size() != 3) return std::nullopt;
  for (const Face& edge : T.edges())
    if (T.edge_length(edge) != 2) return std::nullopt;
  if (T.volume() != 4) return std::nullopt;  // 2 x unimodular triangle
  std::vector<long> lengths;
  for (const auto& t : T.vertices()) {
    std::vector<Integer> heights;
    for (std::size_t i = 0; i < proj.size(); ++i)
      if (proj[i] == t) heights.push_back(dot(U[0], P.vertices()[i]));
    if (heights.size() != 2) return std::nullopt;
    lengths.push_back(to_int64(abs(heights[0] - heights[1])));
  }
  const long twist = lengths[0] % 2;
  for (long l : lengths)
    if (l < 2 || l % 2 != twist) return std::nullopt;
  std::sort(lengths.begin(), lengths.end());
  ExceptionalTag tag;
  tag.kind = ExceptionalKind::DoubleCayleyScroll;
  tag.a = (lengths[0] - twist) / 2;
  tag.b = (lengths[1] - twist) / 2;
  tag.c = (lengths[2] - twist) / 2;
  tag.twist = twist;
  tag.direction = e;
  return tag;
}

inline ExceptionalTag detect_exceptional(const LatticePolytope& P) {
  if (!P.full_dimensional() || P.ambient_dim() != 3)
    throw Error(ErrorCode::PreconditionViolated, "detect_exceptional needs a full-dimensional threefold polytope");
  if (!is_smooth(P)) throw Error(ErrorCode::PreconditionViolated, "polytope is not smooth");
  if (!is_k_regular(P, 2)) throw Error(ErrorCode::PreconditionViolated, "polytope is not 2-regular");

  ExceptionalTag none;
  if (P.vertices().size() == 4) {
    const auto edges = P.edges();
    const Integer k = P.edge_length(edges[0]);
    for (const Face& e : edges)
      if (P.edge_length(e) != k) return none;
    ExceptionalTag tag;
    tag.kind = ExceptionalKind::KSimplex;
    tag.k = to_int64(k);
    return tag;
  }
  std::vector<IntVector> directions;
  for (const Face& e : P.edges()) {
    IntVector d = primitive(detail::sub(P.vertices()[e.vertices[1]], P.vertices()[e.vertices[0]]));
    // fix the sign: first nonzero entry positive
    for (const Integer& x : d) {
      if (x == 0) continue;
      if (x < 0)
        for (auto& y : d) y = -y;
      break;
    }
    directions.push_back(std::move(d));
  }
  std::sort(directions.begin(), directions.end());
  directions.erase(std::unique(directions.begin(), directions.end()), directions.end());
  for (const auto& d : directions)
    if (auto tag = match_double_cayley(P, d)) return *tag;
  return none;
}

/// Vertices of Conv([0, d_j] x {e_{j-1}}), e_0 = 0, in R^n.
inline std::vector<IntVector> cayley_scroll_vertices(const std::vector<long>& d) {
  if (d.size() < 2) throw Error(ErrorCode::BadParameters, "a scroll needs at least two segments");
  for (long x : d)
    if (x < 1) throw Error(ErrorCode::BadParameters, "segment lengths must be positive");
  const std::size_t n = d.size();
  std::vector<IntVector> pts;
  for (std::size_t j = 0; j < n; ++j) {
    IntVector lo(n, Integer(0));
    if (j > 0) lo[j] = 1;
    IntVector hi = lo;
    hi[0] = d[j];
    pts.push_back(lo);
    pts.push_back(hi);
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

inline LatticePolytope cayley_scroll_polytope(const std::vector<long>& d) {
  return convex_hull(cayley_scroll_vertices(d));
}

}  // namespace torjet
