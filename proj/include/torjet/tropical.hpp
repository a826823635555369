#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "torjet/detail/fourier_motzkin.hpp"
#include "torjet/jet_apparatus.hpp"
#include "torjet/lattice_geom.hpp"
#include "torjet/polynomial.hpp"

namespace torjet {

/// p_{A,u}(w) = min_i (u_i + <w, r_i>).
struct TropicalForm {
  PointConfiguration config;
  RationalVector u;

  TropicalForm(PointConfiguration A, RationalVector weights) : config(std::move(A)), u(std::move(weights)) {
    config_dim(config);
    if (u.size() != config.size())
      throw Error(ErrorCode::LengthMismatch, "u has " + std::to_string(u.size()) + " entries for " + std::to_string(config.size()) + " points");
  }

  std::size_t n() const { return config[0].size(); }
};

struct TropEval {
  Rational value;
  std::vector<std::size_t> argmin;
};

inline Rational term_value(const TropicalForm& T, std::size_t i, const RationalVector& b) {
  return T.u[i] + dot(T.config[i], b);
}

/// Minimum over `indices` (all indices when empty) and the indices attaining it.
inline TropEval trop_eval(const TropicalForm& T, const RationalVector& b, const std::vector<std::size_t>& indices = {}) {
  if (b.size() != T.n()) throw Error(ErrorCode::DimensionMismatch, "point has wrong length");
  std::vector<std::size_t> all;
  const std::vector<std::size_t>* idx = &indices;
  if (indices.empty()) {
    for (std::size_t i = 0; i < T.config.size(); ++i) all.push_back(i);
    idx = &all;
  }
  TropEval out;
  bool first = true;
  for (std::size_t i : *idx) {
    const Rational v = term_value(T, i, b);
    if (first || v < out.value) {
      out.value = v;
      out.argmin = {i};
      first = false;
    } else if (v == out.value) {
      out.argmin.push_back(i);
    }
  }
  return out;
}

struct EulerDerivative {
  std::vector<std::size_t> support;  // points where Q does not vanish; may be empty
  Polynomial Q;
};

inline EulerDerivative euler_derivative(const TropicalForm& T, const Polynomial& Q, unsigned k) {
  if (Q.nvars() != T.n()) throw Error(ErrorCode::DimensionMismatch, "Q has the wrong number of variables");
  if (Q.degree() > k) throw Error(ErrorCode::DegreeTooHigh, "deg Q = " + std::to_string(Q.degree()) + " > k", Q.degree());
  EulerDerivative d{{}, Q};
  for (std::size_t i = 0; i < T.config.size(); ++i)
    if (Q.evaluate(T.config[i]) != 0) d.support.push_back(i);
  return d;
}

/// True iff the minimum over every cocircuit support is attained at least twice.
inline bool verify_witness(const TropicalForm& T, const std::vector<CocircuitVector>& circuits, const RationalVector& b) {
  for (const auto& cc : circuits)
    if (trop_eval(T, b, cc.support).argmin.size() < 2) return false;
  return true;
}

inline bool verify_witness(const PointConfiguration& A, unsigned k, const RationalVector& u, const RationalVector& b,
                           std::size_t cap = kDefaultColumnCap) {
  const TropicalForm T(A, u);
  return verify_witness(T, cocircuits(build_Ak(A, k), cap), b);
}

enum class Verdict { InTrop, NotInTrop, Inconclusive };

inline std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::InTrop: return "InTrop";
    case Verdict::NotInTrop: return "NotInTrop";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "unknown";
}

struct MembershipCaps {
  std::size_t columns = kDefaultColumnCap;
  std::size_t nodes = 20000;  // search-tree nodes
};

struct FailureTrace {
  std::size_t nodes_explored = 0;
  std::size_t infeasible_branches = 0;
  std::optional<std::vector<std::size_t>> singleton_support;
  std::string reason;
};

struct MembershipCertificate {
  Verdict verdict = Verdict::Inconclusive;
  std::optional<RationalVector> witness_b;
  // For each cocircuit (in enumeration order), two indices attaining the minimum at the witness.
  std::vector<std::pair<std::size_t, std::size_t>> tie_assignment;
  FailureTrace trace;
  std::size_t cocircuit_count = 0;
};

namespace detail {

// L_i(b) <= L_l(b) becomes <r_l - r_i, b> >= u_i - u_l.
inline void add_order(ConstraintSet& sys, const TropicalForm& T, std::size_t i, std::size_t l) {
  Constraint c{RationalVector(T.n()), T.u[i] - T.u[l]};
  for (std::size_t j = 0; j < T.n(); ++j) c.a[j] = Rational(T.config[l][j] - T.config[i][j]);
  sys.add(std::move(c));
}

struct TieSearch {
  const TropicalForm& T;
  const std::vector<CocircuitVector>& circuits;
  std::size_t node_cap;
  FailureTrace& trace;
  bool capped = false;

  std::optional<RationalVector> run(const ConstraintSet& sys) {
    if (++trace.nodes_explored > node_cap) {
      capped = true;
      return std::nullopt;
    }
    const auto point = feasible_point(sys);
    if (!point) {
      ++trace.infeasible_branches;
      return std::nullopt;
    }
    const CocircuitVector* violated = nullptr;
    for (const auto& cc : circuits)
      if (trop_eval(T, *point, cc.support).argmin.size() < 2) {
        violated = &cc;
        break;
      }
    if (!violated) return point;
    const auto& S = violated->support;
    for (std::size_t x = 0; x < S.size(); ++x)
      for (std::size_t y = x + 1; y < S.size(); ++y) {
        ConstraintSet next = sys;
        add_order(next, T, S[x], S[y]);
        add_order(next, T, S[y], S[x]);
        for (std::size_t l : S)
          if (l != S[x] && l != S[y]) add_order(next, T, S[x], l);
        if (auto found = run(next)) return found;
        if (capped) return std::nullopt;
      }
    return std::nullopt;
  }
};

}  // namespace detail

/// Decides whether some b makes every cocircuit minimum tie, by a depth-first
/// search over tie pairs of violated cocircuits with exact feasibility checks.
inline MembershipCertificate membership(const PointConfiguration& A, unsigned k, const RationalVector& u,
                                        const MembershipCaps& caps = {}) {
  const TropicalForm T(A, u);
  MembershipCertificate cert;
  std::vector<CocircuitVector> circuits;
  try {
    circuits = cocircuits(build_Ak(A, k), caps.columns);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::CapExceeded) throw;
    cert.trace.reason = e.what();
    return cert;
  }
  cert.cocircuit_count = circuits.size();
  for (const auto& cc : circuits) {
    if (cc.support.size() == 1) {
      cert.verdict = Verdict::NotInTrop;
      cert.trace.singleton_support = cc.support;
      cert.trace.reason = "a cocircuit has a single point in its support";
      return cert;
    }
  }
  detail::TieSearch search{T, circuits, caps.nodes, cert.trace};
  const auto witness = search.run(detail::ConstraintSet(T.n()));
  if (witness) {
    cert.verdict = Verdict::InTrop;
    cert.witness_b = witness;
    for (const auto& cc : circuits) {
      const auto ev = trop_eval(T, *witness, cc.support);
      cert.tie_assignment.emplace_back(ev.argmin[0], ev.argmin[1]);
    }
    if (!verify_witness(T, circuits, *witness)) throw Error(ErrorCode::PreconditionViolated, "internal: witness failed verification");
  } else if (search.capped) {
    cert.verdict = Verdict::Inconclusive;
    cert.trace.reason = "node cap reached";
  } else {
    cert.verdict = Verdict::NotInTrop;
    cert.trace.reason = "every tie assignment is infeasible";
  }
  return cert;
}

struct InitialForm {
  Polynomial form;
  Rational weight;
  bool is_monomial = false;
};

/// Terms of F whose exponent minimizes <alpha, u>.
inline InitialForm initial_form(const Polynomial& F, const RationalVector& u) {
  if (F.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "initial form of the zero polynomial");
  if (u.size() != F.nvars()) throw Error(ErrorCode::DimensionMismatch, "weight vector has wrong length");
  std::optional<Rational> best;
  for (const auto& [e, c] : F.terms()) {
    Rational w = 0;
    for (std::size_t i = 0; i < e.size(); ++i) w += u[i] * e[i];
    if (!best || w < *best) best = w;
  }
  InitialForm out{Polynomial(F.nvars()), *best, false};
  for (const auto& [e, c] : F.terms()) {
    Rational w = 0;
    for (std::size_t i = 0; i < e.size(); ++i) w += u[i] * e[i];
    if (w == *best) out.form.add_term(e, c);
  }
  out.is_monomial = out.form.is_monomial();
  return out;
}

// ---------------------------------------------------------------------------
// Plane tropical curves

struct CurveEdge {
  std::size_t from = 0, to = 0;  // curve vertex indices
  Integer multiplicity;
  std::pair<IntVector, IntVector> dual;  // endpoints of the dual subdivision edge
};

struct CurveRay {
  std::size_t from = 0;
  IntVector direction;  // primitive
  Integer multiplicity;
  std::pair<IntVector, IntVector> dual;
};

struct PlaneTropicalCurve {
  std::vector<RationalVector> vertices;
  std::vector<CurveEdge> edges;
  std::vector<CurveRay> rays;
};

/// Primitive integer vector along a nonzero rational direction.
inline IntVector primitive_direction(const RationalVector& v) {
  const Integer D = denominator_lcm(v);
  IntVector out;
  for (const Rational& x : v) {
    const Rational y = x * D;
    out.push_back(y.get_num());
  }
  return primitive(out);
}

/// Curve dual to the regular subdivision of A induced by u: one vertex per
/// maximal cell at w = -gradient, bounded edges for interior subdivision
/// edges, rays along inward normals of boundary edges.
inline PlaneTropicalCurve plane_curve(const TropicalForm& T) {
  if (T.n() != 2) throw Error(ErrorCode::NotPlanar, "plane curves need points in Z^2", static_cast<long>(T.n()));
  const RegularSubdivision S = regular_subdivision(T.config, T.u);
  PlaneTropicalCurve curve;
  using Key = std::pair<IntVector, IntVector>;
  std::map<Key, std::vector<std::size_t>> owners;
  std::map<Key, IntVector> inward;  // normal pointing into the owning cell
  for (const auto& cell : S.cells) {
    const std::size_t v = curve.vertices.size();
    RationalVector w;
    for (const Rational& g : cell.gradient) w.push_back(-g);
    curve.vertices.push_back(std::move(w));
    std::vector<IntVector> pts;
    for (std::size_t i : cell.marked) pts.push_back(T.config[i]);
    const LatticePolytope C = LatticePolytope::from_points(pts);
    for (const Facet& f : C.facets()) {
      Key key{C.vertices()[f.vertices[0]], C.vertices()[f.vertices[1]]};
      owners[key].push_back(v);
      inward[key] = f.normal;
    }
  }
  for (const auto& [key, cells] : owners) {
    const Integer mult = content(detail::sub(key.second, key.first));
    if (cells.size() == 2) {
      curve.edges.push_back({cells[0], cells[1], mult, key});
    } else {
      curve.rays.push_back({cells[0], inward.at(key), mult, key});
    }
  }
  return curve;
}

/// Sum of multiplicity times primitive outgoing direction at each vertex.
inline std::vector<IntVector> balancing_defects(const PlaneTropicalCurve& c) {
  std::vector<IntVector> sums(c.vertices.size(), IntVector(2, Integer(0)));
  auto add = [&](std::size_t v, const IntVector& d, const Integer& m) {
    for (std::size_t i = 0; i < 2; ++i) sums[v][i] += m * d[i];
  };
  for (const auto& e : c.edges) {
    RationalVector diff(2);
    for (std::size_t i = 0; i < 2; ++i) diff[i] = c.vertices[e.to][i] - c.vertices[e.from][i];
    const IntVector d = primitive_direction(diff);
    add(e.from, d, e.multiplicity);
    add(e.to, {-d[0], -d[1]}, e.multiplicity);
  }
  for (const auto& r : c.rays) add(r.from, r.direction, r.multiplicity);
  return sums;
}

inline bool is_balanced(const PlaneTropicalCurve& c) {
  for (const auto& s : balancing_defects(c))
    if (s[0] != 0 || s[1] != 0) return false;
  return true;
}

}  // namespace torjet
