// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "support/corpus.hpp"
#include "torjet/torjet.hpp"

using namespace torjet;
using corpus::pts;
using corpus::rv;

namespace {

struct Line {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

Polynomial monomial(std::size_t n, std::initializer_list<std::pair<std::size_t, unsigned>> powers, long c) {
  Polynomial p(n);
  Exponent e(n, 0);
  for (const auto& [i, a] : powers) e[i] = a;
  p.add_term(e, Rational(c));
  return p;
}

void cube_example(Line& o) {
  const DegreeReport r = threefold_2dual_degree(corpus::box(2, 2, 2));
  o.require(r.outcome == torjet::Outcome::Degree && r.degree == 848, "degree 848");
  const std::vector<long> want = {48, 48, 24, 8, 0, 0, 0};
  const std::vector<std::string> keys = {"Vol", "F", "E", "V", "vol_adj", "F1", "E1"};
  for (std::size_t i = 0; i < keys.size(); ++i) o.require(r.get(keys[i]) == Rational(want[i]), keys[i]);
  o.detail << "degree " << r.degree;
}

void simplices(Line& o) {
  const DegreeReport three = threefold_2dual_degree(corpus::simplex3(3));
  const DegreeReport two = threefold_2dual_degree(corpus::simplex3(2));
  o.require(three.degree == 120, "3-simplex gives 120");
  o.require(two.outcome != torjet::Outcome::Degree, "2-simplex has no dual hypersurface");
  o.detail << "3D3 -> " << three.degree << ", 2D3 -> " << outcome_name(two.outcome);
}

void corollary(Line& o) {
  const LatticePolytope C = corpus::box(2, 2, 2);
  for (int v : {1, 2}) o.require(threefold_2dual_via_corollary(C, v).degree == 848, "variant " + std::to_string(v) + " on the cube");
  std::size_t agreeing = 0;
  for (const auto& [name, P] : corpus::threefolds()) {
    if (detect_exceptional(P).kind != ExceptionalKind::None) continue;
    const Integer want = threefold_2dual_degree(P).degree;
    const bool same = threefold_2dual_via_corollary(P, 1).degree == want && threefold_2dual_via_corollary(P, 2).degree == want;
    o.require(same, name);
    agreeing += same;
  }
  o.require(agreeing >= 20, "at least 20 corpus polytopes");
  // Printed coefficients 12 (variant 1) and 19 (variant 2) in place of 22 and 10.
  const AdjointInvariants a2 = adjoint_invariants(C, 2), a3 = adjoint_invariants(C, 3);
  const Rational printed1 = 12 * a2.vol_adj + 15 * *a2.facet_adj + Rational(20 * a2.edge_adj) + Rational(-56 * 48 + 24 * 48 + 8 * 24 - 8 * 8);
  const Rational printed2 = 19 * a3.vol_adj - 3 * a2.vol_adj + Rational(-126 * 48 + 54 * 48 + 48 * 24 - 8 * 8 - 480);
  o.detail << "corpus agreement " << agreeing << "; printed coefficients give " << printed1 << " and " << printed2 << "; ";
  o.require(printed1 == 368, "printed variant 1 gives 368");
  o.require(printed2 == 1328, "printed variant 2 gives 1328 (it gives " + printed2.get_str() + "; 1328 is the corrected sum before the -480 term)");
}

void scrolls(Line& o) {
  for (const auto& [d, dim, deg] : std::vector<std::tuple<std::vector<long>, long, long>>{{{2, 2, 2}, 3, 6}, {{2, 2, 3}, 4, 8}}) {
    const ScrollResult s = scroll_kdual(d, 2);
    o.require(s.dim == dim && s.degree && s.degree->degree == deg, "dim/degree");
    const Integer cross = 2 * cayley_scroll_polytope(d).volume() - binomial(2, 2) * 2 * static_cast<long>(d.size());
    o.require(s.degree && s.degree->degree == cross, "polytope form");
    o.detail << "(" << d[0] << d[1] << d[2] << ") -> dim " << s.dim << " degree " << (s.degree ? s.degree->degree : Integer(-1)) << "; ";
  }
}

void delta_sequences(Line& o) {
  const DeltaSequence a = dual_degree_sequence_threefold(cayley_scroll_polytope({2, 2, 3}));
  const DeltaSequence b = dual_degree_sequence_threefold(cayley_scroll_polytope({2, 2, 2}));
  o.require(a.delta1 == 0 && a.delta2 == 7, "(2,2,3) -> (0,7)");
  o.require(b.delta1 == 0 && b.delta2 == 6, "(2,2,2) -> (0,6)");
  o.detail << "(" << a.delta1 << "," << a.delta2 << ") (" << b.delta1 << "," << b.delta2 << ")";
}

void abc(Line& o) {
  for (const auto& [a, b, c] : std::vector<std::tuple<long, long, long>>{{1, 1, 1}, {1, 1, 2}, {2, 2, 2}}) {
    const AbcDegrees d = abc_bundle_degrees(a, b, c);
    const long s = a + b + c;
    o.require(d.dual == 6 * (2 * s - 1) && d.second_dual == 6 * (8 * s - 7), "closed form");
    o.detail << "(" << d.dual << "," << d.second_dual << ") ";
  }
  const Integer face_sum = dual_degree_smooth(dilate(cayley_scroll_polytope({1, 1, 1}), 2));
  o.require(face_sum == 30, "face sum on 2*Cayley(1,1,1)");
  o.detail << "face sum " << face_sum;
}

void worked_example(Line& o) {
  const auto A = corpus::extrop_points();
  const auto u = corpus::extrop_weights();
  const MembershipCertificate c = membership(A, 2, u);
  o.require(c.verdict == Verdict::InTrop, "membership InTrop");
  o.require(verify_witness(A, 2, u, rv({0, 0})), "witness (0,0)");
  const std::size_t n = 10;
  const Polynomial h = monomial(n, {{6, 1}, {7, 2}}, 4) + monomial(n, {{5, 1}, {7, 1}, {8, 1}}, -4) + monomial(n, {{4, 1}, {8, 2}}, 4) +
                       monomial(n, {{5, 2}, {9, 1}}, 3) + monomial(n, {{4, 1}, {6, 1}, {9, 1}}, -12);
  const InitialForm in = initial_form(h, u);
  const Polynomial want = monomial(n, {{5, 1}, {7, 1}, {8, 1}}, -4) + monomial(n, {{4, 1}, {8, 2}}, 4) + monomial(n, {{5, 2}, {9, 1}}, 3);
  o.require(in.form == want && !in.is_monomial, "initial form");
  o.detail << verdict_name(c.verdict) << ", in_u(h) = " << in.form.to_string();
}

void spike(Line& o) {
  const auto A = corpus::spike_points();
  const TorusDisjointness t = torus_disjoint(A, 2);
  o.require(t.disjoint && t.witness && t.index, "disjoint with witness");
  std::size_t zeros = 0, nonzero = 0;
  if (t.witness)
    for (const auto& p : A) (t.witness->evaluate(p) == 0 ? zeros : nonzero) += 1;
  o.require(zeros == 10 && nonzero == 1, "witness vanishes on 10 points");
  std::mt19937 rng(8);
  std::size_t empty = 0;
  for (int s = 0; s < 20; ++s) empty += membership(A, 2, corpus::random_rationals(A.size(), rng)).verdict == Verdict::NotInTrop;
  o.require(empty == 20, "NotInTrop for 20 random u");
  o.detail << "witness " << (t.witness ? t.witness->to_string("w", 1) : "none") << ", NotInTrop " << empty << "/20";
}

void properties(Line& o) {
  // (i) edge contract
  std::size_t independent = 0;
  bool contract = true;
  for (const auto& [name, P] : corpus::threefolds()) {
    const InvariantVector iv = invariant_vector(P);
    const AdjointInvariants a = adjoint_invariants(P, 1);
    contract = contract && iv.E - a.edge_adj == 24;
    if (a.degenerate == HullTag::Full && a.tightened.is_lattice()) {
      Integer edges = 0;
      for (const Face& e : a.tightened.scaled->edges()) edges += a.tightened.scaled->edge_length(e);
      contract = contract && iv.E - edges == 24;
      ++independent;
    }
  }
  o.require(contract, "(i) E - E1 = 24");
  o.detail << "(i) " << independent << " independent edge sums; ";

  // (ii) regularity against spannedness, threefolds and polygons, k = 1..3
  std::size_t cases = 0, generic_mismatch = 0, jet_mismatch = 0;
  std::string example;
  auto check = [&](const std::string& name, const LatticePolytope& P) {
    const auto pts = lattice_points(P);
    for (unsigned k = 1; k <= 3; ++k) {
      const bool reg = is_k_regular(P, k);
      ++cases;
      if (reg != is_generically_k_spanned(pts, k)) {
        ++generic_mismatch;
        if (example.empty()) example = name + " k=" + std::to_string(k);
      }
      jet_mismatch += reg != is_k_jet_spanned(pts, k);
    }
  };
  for (const auto& [name, P] : corpus::threefolds()) check(name, P);
  for (const auto& [name, P] : corpus::polygons()) check(name, P);
  o.detail << "(ii) " << cases << " cases, regular vs jet-spanned mismatches " << jet_mismatch << ", regular vs generic rank mismatches "
           << generic_mismatch << (example.empty() ? "" : " (first: " + example + ", not regular yet generic rank is full)") << "; ";
  o.require(jet_mismatch == 0, "(ii) regularity matches k-jet spannedness");
  o.require(generic_mismatch == 0, "(ii) regularity matches generic spannedness");

  // (iii) surface formula
  std::size_t positive = 0;
  bool vanishing = true;
  for (const auto& [name, P] : corpus::polygons())
    for (long k = 1; k <= 3; ++k) {
      if (!is_k_regular(P, k)) continue;
      const DegreeReport r = surface_kdual_degree(P, k);
      const bool simplex = P.vertices().size() == 3 && invariant_vector(P).E == 3 * k;
      if (simplex) vanishing = vanishing && r.outcome == torjet::Outcome::Defective && r.get("formula") == Rational(0);
      else if (r.outcome == torjet::Outcome::Degree && r.degree > 0) ++positive;
      else vanishing = false;
    }
  o.require(vanishing && positive >= 20, "(iii) surface formula");
  o.detail << "(iii) " << positive << " positive; ";

  // (iv) balancing and duality
  std::mt19937 rng(21);
  std::size_t curves = 0;
  bool balanced = true;
  for (long d : {3, 4}) {
    const auto A = corpus::simplex_points(2, d);
    for (int s = 0; s < 50; ++s) {
      const TropicalForm T(A, corpus::random_rationals(A.size(), rng, 8, 3));
      const PlaneTropicalCurve c = plane_curve(T);
      std::map<IntVector, Integer> per_dir;
      for (const auto& r : c.rays) per_dir[r.direction] += r.multiplicity;
      balanced = balanced && is_balanced(c) && c.vertices.size() == regular_subdivision(A, T.u).cells.size() && per_dir.size() == 3;
      for (const auto& [dir, m] : per_dir) balanced = balanced && m == d;
      ++curves;
    }
  }
  o.require(balanced, "(iv) balancing and duality");
  o.detail << "(iv) " << curves << " curves; ";

  // (v) cocircuits as a tropical basis at membership witnesses
  std::size_t witnesses = 0, vectors = 0;
  bool basis = true;
  const std::vector<std::pair<PointConfiguration, unsigned>> configs = {{corpus::simplex_points(2, 3), 1},
                                                                        {corpus::simplex_points(2, 3), 2},
                                                                        {corpus::simplex_points(2, 2), 1},
                                                                        {pts({{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {2, 1}}), 1}};
  std::bernoulli_distribution coin(0.3);
  for (const auto& [A, k] : configs) {
    const JetMatrix J = build_Ak(A, k);
    std::size_t found = 0;
    for (int attempt = 0; attempt < 200 && found < 3; ++attempt) {
      RationalVector u(A.size());
      for (auto& x : u) x = coin(rng) ? 1 : 0;
      const MembershipCertificate c = membership(A, k, u);
      if (c.verdict != Verdict::InTrop) continue;
      ++found;
      const TropicalForm T(A, u);
      for (int s = 0; s < 100; ++s) {
        const RationalVector t = corpus::random_rationals(J.matrix.rows(), rng, 5, 3);
        std::vector<std::size_t> support;
        for (std::size_t col = 0; col < J.matrix.cols(); ++col) {
          Rational x = 0;
          for (std::size_t row = 0; row < J.matrix.rows(); ++row) x += t[row] * J.matrix(row, col);
          if (x != 0) support.push_back(col);
        }
        if (support.empty()) continue;
        basis = basis && trop_eval(T, *c.witness_b, support).argmin.size() >= 2;
        ++vectors;
      }
    }
    witnesses += found;
  }
  o.require(basis && witnesses >= 8, "(v) tropical basis guard");
  o.detail << "(v) " << witnesses << " witnesses, " << vectors << " rowspan vectors";
}

void scope(Line& o) {
  o.detail << "projective degrees by elimination, jet-ampleness of gamma_k and general-embedding defects are out of scope; covered by 1-9";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Line&)>>> criteria = {
      {"cube second dual degree", cube_example},   {"simplex branches", simplices},     {"corollary cross-check", corollary},
      {"scroll duals", scrolls},                    {"delta sequence", delta_sequences}, {"abc bundles", abc},
      {"tropical worked example", worked_example}, {"empty tropical variety", spike},    {"property suites", properties},
      {"desk-scale scope", scope}};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Line o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail << "exception: " << e.what();
    }
    failures += !o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ": " << o.detail.str() << "\n";
  }
  return failures == 0 ? 0 : 1;
}
