#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "torjet/lattice_geom.hpp"
#include "torjet/polytope_invariants.hpp"

namespace torjet {

enum class Outcome { Degree, Defective, EmptyDual };
enum class Branch { Formula, KSimplex2, KSimplex3, DoubleCayley, ScrollClosedForm, DeltaSequence };

inline std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Degree: return "Degree";
    case Outcome::Defective: return "Defective";
    case Outcome::EmptyDual: return "EmptyDual";
  }
  return "unknown";
}

inline std::string branch_name(Branch b) {
  switch (b) {
    case Branch::Formula: return "Formula";
    case Branch::KSimplex2: return "KSimplex2";
    case Branch::KSimplex3: return "KSimplex3";
    case Branch::DoubleCayley: return "DoubleCayley";
    case Branch::ScrollClosedForm: return "ScrollClosedForm";
    case Branch::DeltaSequence: return "DeltaSequence";
  }
  return "unknown";
}

struct DegreeReport {
  Outcome outcome = Outcome::Degree;
  Integer degree = 0;  // meaningful for Outcome::Degree only
  Branch branch = Branch::Formula;
  std::vector<std::pair<std::string, Rational>> intermediates;

  void record(const std::string& name, const Rational& value) { intermediates.emplace_back(name, value); }

  std::optional<Rational> get(const std::string& name) const {
    for (const auto& [k, v] : intermediates)
      if (k == name) return v;
    return std::nullopt;
  }
};

inline Integer require_integral(const Rational& x, const char* what) {
  if (!is_integral(x)) throw Error(ErrorCode::NonIntegralResult, std::string(what) + " evaluated to " + to_string(x));
  return x.get_num();
}

inline void require_smooth(const LatticePolytope& P) {
  if (!P.full_dimensional()) throw Error(ErrorCode::NotFullDimensional, "polytope is not full-dimensional", P.dim());
  if (!is_smooth(P)) throw Error(ErrorCode::NotSmooth, "polytope is not smooth");
}

inline void require_smooth_threefold(const LatticePolytope& P) {
  if (P.ambient_dim() != 3) throw Error(ErrorCode::NotDim3, "need a threefold polytope", static_cast<long>(P.ambient_dim()));
  require_smooth(P);
}

/// Signed face sum: sum over faces of (-1)^codim (dim + 1) Vol(face).
inline Integer dual_degree_smooth(const LatticePolytope& P) {
  require_smooth(P);
  Integer total = 0;
  for (const Face& f : P.faces()) {
    const Integer term = Integer(f.dim + 1) * P.face_volume(f);
    if ((P.dim() - f.dim) % 2 == 0) total += term;
    else total -= term;
  }
  return total;
}

struct DeltaSequence {
  Integer delta1;
  Integer delta2;
  int codim = 1;
  Integer degree;
};

inline DeltaSequence dual_degree_sequence_threefold(const LatticePolytope& P) {
  require_smooth_threefold(P);
  const InvariantVector iv = invariant_vector(P);
  DeltaSequence s;
  s.delta1 = dual_degree_smooth(P);
  s.delta2 = -2 * iv.vol + 3 * iv.F - 3 * iv.E + 2 * iv.V;
  if (s.delta1 != 0) {
    s.codim = 1;
    s.degree = s.delta1;
  } else if (s.delta2 != 0) {
    s.codim = 2;
    s.degree = s.delta2;
  } else {
    throw Error(ErrorCode::BothZero, "both delta_1 and delta_2 vanish");
  }
  return s;
}

inline void record_invariants(DegreeReport& rep, const InvariantVector& iv) {
  rep.record("Vol", Rational(iv.vol));
  rep.record("F", Rational(iv.F));
  rep.record("E", Rational(iv.E));
  rep.record("V", Rational(iv.V));
}

/// k-th dual degree of a smooth toric surface.
inline DegreeReport surface_kdual_degree(const LatticePolytope& P, long k) {
  if (P.ambient_dim() != 2) throw Error(ErrorCode::PreconditionViolated, "surface formula needs a polygon");
  require_smooth(P);
  if (k < 1) throw Error(ErrorCode::KOutOfRange, "k must be positive", k);
  if (!is_k_regular(P, k)) throw Error(ErrorCode::NotKRegular, "some edge is shorter than k", k);
  const InvariantVector iv = invariant_vector(P);
  DegreeReport rep;
  rep.branch = Branch::Formula;
  record_invariants(rep, iv);
  rep.record("k", Rational(k));
  bool simplex = P.vertices().size() == 3;
  for (const Face& e : P.edges()) simplex = simplex && P.edge_length(e) == k;
  const Integer kk(k);
  const Rational inner = Rational(3 * iv.vol - 2 * kk * iv.E) - make_rational((kk * kk - 4) * iv.V, 3) + Rational(4 * (kk * kk - 1));
  const Rational value = Rational(binomial(k + 3, 4)) * inner;
  rep.record("formula", value);
  if (simplex) {
    rep.outcome = Outcome::Defective;
    return rep;
  }
  rep.degree = require_integral(value, "surface k-dual degree");
  rep.outcome = Outcome::Degree;
  return rep;
}

/// Evaluates 62Vol - 57F + 28E - 8V + 58Vol1 + 51F1 + 20E1 with adjoint data at r = 1.
inline DegreeReport threefold_formula(const LatticePolytope& P) {
  if (!adjoint_is_nef(P, 1))
    throw Error(ErrorCode::PreconditionViolated, "K + L is not nef and the polytope matches no exceptional family");
  const InvariantVector iv = invariant_vector(P);
  const AdjointInvariants adj = adjoint_invariants(P, 1);
  DegreeReport rep;
  rep.branch = Branch::Formula;
  record_invariants(rep, iv);
  rep.record("vol_adj", adj.vol_adj);
  rep.record("F1", *adj.facet_adj);
  rep.record("E1", Rational(adj.edge_adj));
  const Rational value = Rational(62 * iv.vol - 57 * iv.F + 28 * iv.E - 8 * iv.V) + 58 * adj.vol_adj + 51 * *adj.facet_adj +
                         Rational(20 * adj.edge_adj);
  rep.degree = require_integral(value, "second dual degree");
  rep.outcome = Outcome::Degree;
  return rep;
}

/// Second dual degree of a smooth 2-regular toric threefold. Exceptional
/// families are routed before the general formula.
inline DegreeReport threefold_2dual_degree(const LatticePolytope& P) {
  require_smooth_threefold(P);
  if (!is_k_regular(P, 2)) throw Error(ErrorCode::Not2Regular, "some edge has length 1");
  const ExceptionalTag tag = detect_exceptional(P);
  if (tag.kind == ExceptionalKind::KSimplex && tag.k <= 3) {
    DegreeReport rep;
    record_invariants(rep, invariant_vector(P));
    rep.record("k", Rational(tag.k));
    if (tag.k == 2) {
      rep.branch = Branch::KSimplex2;
      rep.outcome = Outcome::EmptyDual;
    } else {
      rep.branch = Branch::KSimplex3;
      rep.outcome = Outcome::Degree;
      rep.degree = 120;
    }
    return rep;
  }
  if (tag.kind == ExceptionalKind::DoubleCayleyScroll) {
    DegreeReport rep;
    rep.branch = Branch::DoubleCayley;
    record_invariants(rep, invariant_vector(P));
    rep.record("a", Rational(tag.a));
    rep.record("b", Rational(tag.b));
    rep.record("c", Rational(tag.c));
    rep.record("twist", Rational(tag.twist));
    rep.degree = 6 * (8 * Integer(tag.a + tag.b + tag.c) - 7) + 72 * Integer(tag.twist);
    rep.outcome = Outcome::Degree;
    return rep;
  }
  return threefold_formula(P);
}

/// The second dual degree rewritten through the adjoint polytopes of 2P
/// (variant 1) or 2P and 3P (variant 2).
inline DegreeReport threefold_2dual_via_corollary(const LatticePolytope& P, int variant) {
  require_smooth_threefold(P);
  if (variant != 1 && variant != 2) throw Error(ErrorCode::BadParameters, "variant must be 1 or 2", variant);
  if (!is_k_regular(P, 2)) throw Error(ErrorCode::Not2Regular, "some edge has length 1");
  const ExceptionalTag tag = detect_exceptional(P);
  if (tag.kind == ExceptionalKind::DoubleCayleyScroll || (tag.kind == ExceptionalKind::KSimplex && tag.k <= 3))
    throw Error(ErrorCode::PreconditionViolated, "exceptional polytope (" + kind_name(tag.kind) + ")");
  if (!adjoint_is_nef(P, 2)) throw Error(ErrorCode::PreconditionViolated, "K + 2L is not nef");
  const InvariantVector iv = invariant_vector(P);
  const AdjointInvariants a2 = adjoint_invariants(P, 2);
  DegreeReport rep;
  rep.branch = Branch::Formula;
  record_invariants(rep, iv);
  rep.record("vol2", a2.vol_adj);
  rep.record("F2", *a2.facet_adj);
  rep.record("E2", Rational(a2.edge_adj));
  Rational value;
  if (variant == 1) {
    value = 22 * a2.vol_adj + 15 * *a2.facet_adj + Rational(20 * a2.edge_adj) +
            Rational(-56 * iv.vol + 24 * iv.F + 8 * iv.E - 8 * iv.V);
  } else {
    const AdjointInvariants a3 = adjoint_invariants(P, 3);
    rep.record("vol3", a3.vol_adj);
    value = 10 * a3.vol_adj - 3 * a2.vol_adj + Rational(-126 * iv.vol + 54 * iv.F + 48 * iv.E - 8 * iv.V - 480);
  }
  rep.degree = require_integral(value, "corollary degree");
  rep.outcome = Outcome::Degree;
  return rep;
}

struct ScrollProfile {
  std::vector<long> d;
  long k = 0;
  long i_k = 0;
  long m = 0;
};

struct ScrollResult {
  long dim = 0;
  std::optional<DegreeReport> degree;
  ScrollProfile profile;
};

/// Dimension and degree of the k-th dual of the rational normal scroll with
/// segment lengths d_1 <= ... <= d_n.
inline ScrollResult scroll_kdual(const std::vector<long>& d, long k) {
  if (d.empty()) throw Error(ErrorCode::BadParameters, "no segment lengths");
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (d[j] < 1) throw Error(ErrorCode::BadParameters, "segment lengths must be positive");
    if (j > 0 && d[j] < d[j - 1]) throw Error(ErrorCode::BadParameters, "segment lengths must be nondecreasing");
  }
  const long n = static_cast<long>(d.size());
  if (k < 1 || k > d.back()) throw Error(ErrorCode::KOutOfRange, "k must lie in [1, d_n]", k);

  ScrollResult res;
  res.profile.d = d;
  res.profile.k = k;
  long sum = 0;
  for (long x : d) sum += x;
  res.profile.m = sum + n - 1;
  for (long x : d)
    if (x < k) ++res.profile.i_k;
  const long ik = res.profile.i_k;
  if (ik <= n - 2) {
    long dim = res.profile.m + 1 - k * n;
    for (long j = 0; j < ik; ++j) dim += k - 1 - d[static_cast<std::size_t>(j)];
    res.dim = dim;
  } else {
    res.dim = d.back() - k;
  }
  if (ik == 0) {
    DegreeReport rep;
    rep.branch = Branch::ScrollClosedForm;
    rep.degree = Integer(k) * sum - Integer(k) * (k - 1) * n;
    rep.outcome = Outcome::Degree;
    rep.record("d", Rational(sum));
    rep.record("n", Rational(n));
    rep.record("k", Rational(k));
    if (n >= 2 && n <= 3) {
      const LatticePolytope P = cayley_scroll_polytope(d);
      const Integer vol = P.volume();
      const Integer cross = Integer(k) * vol - binomial(k, 2) * 2 * n;
      rep.record("Vol", Rational(vol));
      rep.record("polytope_form", Rational(cross));
      if (cross != rep.degree) throw Error(ErrorCode::NonIntegralResult, "scroll degree disagrees with the polytope form");
    }
    res.degree = std::move(rep);
  }
  return res;
}

struct AbcDegrees {
  Integer dual;
  Integer second_dual;
};

inline AbcDegrees abc_bundle_degrees(long a, long b, long c) {
  if (a < 1 || b < 1 || c < 1) throw Error(ErrorCode::BadParameters, "a, b, c must be positive");
  const Integer s = Integer(a) + b + c;
  return {6 * (2 * s - 1), 6 * (8 * s - 7)};
}

}  // namespace torjet
