#include <gtest/gtest.h>

#include <random>
#include <set>

#include "support/corpus.hpp"
#include "torjet/torjet.hpp"

using namespace torjet;
using corpus::iv;
using corpus::pts;
using corpus::rv;

namespace {

// Lattice points by brute force over a bounding box, tested against the
// facet inequalities.
std::size_t count_points(const LatticePolytope& P, const Integer& t) {
  const std::size_t n = P.ambient_dim();
  IntVector lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = hi[i] = P.vertices()[0][i] * t;
    for (const auto& v : P.vertices()) {
      lo[i] = std::min(lo[i], Integer(v[i] * t));
      hi[i] = std::max(hi[i], Integer(v[i] * t));
    }
  }
  std::size_t count = 0;
  IntVector x = lo;
  while (true) {
    bool in = true;
    for (const auto& f : P.facets()) in = in && dot(f.normal, x) >= f.offset * t;
    count += in;
    std::size_t i = 0;
    while (i < n && x[i] == hi[i]) x[i] = lo[i], ++i;
    if (i == n) break;
    ++x[i];
  }
  return count;
}

// Normalized volume from the Ehrhart polynomial: n! times its leading
// coefficient, recovered by finite differences of the counts at t = 0..n.
Integer ehrhart_volume(const LatticePolytope& P) {
  const std::size_t n = P.ambient_dim();
  std::vector<Integer> vals;
  for (std::size_t t = 0; t <= n; ++t) vals.push_back(t == 0 ? Integer(1) : Integer(static_cast<unsigned long>(count_points(P, Integer(static_cast<unsigned long>(t))))));
  for (std::size_t level = 0; level < n; ++level)
    for (std::size_t i = 0; i + 1 < vals.size() - level; ++i) vals[i] = vals[i + 1] - vals[i];
  return vals[0];
}

LatticePolytope random_polytope(std::size_t n, std::mt19937& rng) {
  while (true) {
    const auto p = corpus::random_points(4 + rng() % 5, n, 4, rng);
    if (affine_rank(p) == static_cast<int>(n)) return convex_hull(p);
  }
}

}  // namespace

TEST(ConvexHull, SimplexFromAllLatticePoints) {
  const LatticePolytope P = convex_hull(corpus::simplex_points(3, 2));
  EXPECT_EQ(P.vertices(), pts({{0, 0, 0}, {0, 0, 2}, {0, 2, 0}, {2, 0, 0}}));
  EXPECT_EQ(P.facets().size(), 4u);
}

TEST(ConvexHull, DuplicatesRemoved) {
  const LatticePolytope P = convex_hull(pts({{0, 0}, {1, 0}, {0, 1}, {1, 1}, {1, 1}}));
  EXPECT_EQ(P.vertices().size(), 4u);
  EXPECT_EQ(P.volume(), Integer(2));
}

TEST(ConvexHull, WorkedExampleTriangle) {
  const LatticePolytope P = convex_hull(corpus::extrop_points());
  EXPECT_EQ(P.vertices(), pts({{0, 0}, {0, 3}, {3, 0}}));
  EXPECT_EQ(P.volume(), Integer(9));
}

TEST(ConvexHull, Errors) {
  try {
    convex_hull(pts({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotFullDimensional);
    EXPECT_EQ(e.detail(), 2);
  }
  EXPECT_THROW(convex_hull({}), Error);
  try {
    convex_hull(pts({{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionUnsupported);
  }
}

TEST(ConvexHull, CubeFaceLattice) {
  const LatticePolytope C = corpus::box(2, 2, 2);
  EXPECT_EQ(C.vertices().size(), 8u);
  EXPECT_EQ(C.facets().size(), 6u);
  EXPECT_EQ(C.faces_of_dim(0).size(), 8u);
  EXPECT_EQ(C.edges().size(), 12u);
  EXPECT_EQ(C.faces_of_dim(2).size(), 6u);
  EXPECT_EQ(C.faces().size(), 27u);
}

TEST(ConvexHull, LowerDimensionalFromPoints) {
  const LatticePolytope S = LatticePolytope::from_points(pts({{1, 1, 1}, {1, 1, 2}, {1, 1, 3}}));
  EXPECT_EQ(S.dim(), 1);
  EXPECT_EQ(S.volume(), Integer(2));
  const LatticePolytope pt = LatticePolytope::from_points(pts({{3, 4}}));
  EXPECT_EQ(pt.dim(), 0);
  EXPECT_EQ(pt.volume(), Integer(1));
}

TEST(NormalizedVolume, Examples) {
  EXPECT_EQ(normalized_volume(corpus::box(2, 2, 2)), Integer(48));
  EXPECT_EQ(normalized_volume(convex_hull(pts({{0}, {5}}))), Integer(5));
  EXPECT_EQ(normalized_volume(corpus::simplex3(2)), Integer(8));
}

TEST(NormalizedVolume, FacesUseTheirOwnLattice) {
  const LatticePolytope C = corpus::box(2, 3, 4);
  Integer facet_total = 0;
  for (const Face& f : C.faces_of_dim(2)) facet_total += C.face_volume(f);
  // 2 * (2*2*3 + 2*2*4 + 2*3*4)
  EXPECT_EQ(facet_total, Integer(104));
  // A tilted edge: (0,0,0)-(2,4,6) has lattice length 2.
  const LatticePolytope T = convex_hull(pts({{0, 0, 0}, {2, 4, 6}, {1, 0, 0}, {0, 1, 0}}));
  bool found = false;
  for (const Face& e : T.edges())
    if (T.edge_length(e) == 2) found = true;
  EXPECT_TRUE(found);
}

TEST(NormalizedVolume, AgreesWithEhrhartOnRandomPolytopes) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const LatticePolytope P = random_polytope(2 + trial % 2, rng);
    EXPECT_EQ(P.volume(), ehrhart_volume(P));
  }
}

TEST(NormalizedVolume, ScalesUnderDilation) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const LatticePolytope P = random_polytope(n, rng);
    for (long k = 1; k <= 3; ++k) {
      Integer kn = 1;
      for (std::size_t i = 0; i < n; ++i) kn *= k;
      EXPECT_EQ(dilate(P, k).volume(), kn * P.volume());
    }
  }
}

TEST(LatticePoints, Examples) {
  EXPECT_EQ(lattice_points(corpus::simplex3(2)).size(), 10u);
  EXPECT_EQ(lattice_points(corpus::box(2, 2, 2), true), pts({{1, 1, 1}}));
  EXPECT_TRUE(lattice_points(corpus::simplex3(2), true).empty());
}

TEST(LatticePoints, InvariantUnderUnimodularMaps) {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const LatticePolytope P = random_polytope(2 + trial % 2, rng);
    const LatticePolytope Q = corpus::random_image(P, rng);
    EXPECT_EQ(lattice_points(P).size(), lattice_points(Q).size());
    EXPECT_EQ(lattice_points(P, true).size(), lattice_points(Q, true).size());
    EXPECT_EQ(P.volume(), Q.volume());
    EXPECT_EQ(lattice_points(P).size(), count_points(P, 1));
  }
}

TEST(HullProperties, IdempotentAndIncidences) {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 2;
    const LatticePolytope P = random_polytope(n, rng);
    EXPECT_EQ(convex_hull(P.vertices()), P);
    for (const Facet& f : P.facets()) {
      EXPECT_EQ(content(f.normal), 1);
      EXPECT_GE(f.vertices.size(), n);
      for (const auto& v : P.vertices()) EXPECT_GE(dot(f.normal, v), f.offset);
    }
    for (std::size_t v = 0; v < P.vertices().size(); ++v) {
      std::size_t tight = 0;
      for (const Facet& f : P.facets())
        if (dot(f.normal, P.vertices()[v]) == f.offset) ++tight;
      EXPECT_GE(tight, n);
    }
    // face lattice closed under intersection
    std::set<std::vector<std::size_t>> faces;
    for (const Face& f : P.faces()) faces.insert(f.vertices);
    for (const Face& a : P.faces())
      for (const Face& b : P.faces()) {
        std::vector<std::size_t> c;
        std::set_intersection(a.vertices.begin(), a.vertices.end(), b.vertices.begin(), b.vertices.end(), std::back_inserter(c));
        if (!c.empty()) {
          EXPECT_TRUE(faces.count(c));
        }
      }
  }
}

TEST(InteriorHull, Examples) {
  const InteriorHull cube = interior_hull(corpus::box(2, 2, 2));
  EXPECT_EQ(cube.tag, HullTag::Point);
  EXPECT_EQ(cube.polytope->vertices(), pts({{1, 1, 1}}));

  const InteriorHull six = interior_hull(corpus::simplex3(6));
  EXPECT_EQ(six.tag, HullTag::Full);
  EXPECT_EQ(six.polytope->vertices(), pts({{1, 1, 1}, {1, 1, 3}, {1, 3, 1}, {3, 1, 1}}));
  EXPECT_EQ(six.polytope->volume(), Integer(8));

  const InteriorHull seg = interior_hull(corpus::box(2, 2, 3));
  EXPECT_EQ(seg.tag, HullTag::Segment);
  EXPECT_EQ(seg.polytope->vertices(), pts({{1, 1, 1}, {1, 1, 2}}));

  EXPECT_EQ(interior_hull(corpus::simplex3(2)).tag, HullTag::Empty);
}

TEST(TightenedPolytope, Examples) {
  const RationalPolytope one = tightened_polytope(corpus::box(2, 2, 2), 1);
  EXPECT_EQ(one.tag(), HullTag::Point);
  EXPECT_EQ(one.vertices, std::vector<RationalVector>{rv({1, 1, 1})});
  const RationalPolytope two = tightened_polytope(corpus::box(2, 2, 2), 2);
  EXPECT_EQ(two.tag(), HullTag::Full);
  EXPECT_EQ(two.volume(), 48);
  EXPECT_EQ(two.vertices.front(), rv({1, 1, 1}));
  EXPECT_EQ(two.vertices.back(), rv({3, 3, 3}));
  EXPECT_TRUE(tightened_polytope(corpus::simplex3(2), 1).empty());
}

TEST(TightenedPolytope, RationalVertices) {
  // Tightening y >= 0, 4x + 3y <= 20, 2x - y >= 0 by one meets the last two
  // lines at (11/5, 17/5).
  const LatticePolytope T = convex_hull(pts({{0, 0}, {5, 0}, {2, 4}}));
  const RationalPolytope Q = tightened_polytope(T, 1);
  ASSERT_FALSE(Q.empty());
  EXPECT_FALSE(Q.is_lattice());
  EXPECT_EQ(Q.vertices, (std::vector<RationalVector>{rv({1, 1}), {make_rational(11, 5), make_rational(17, 5)}, rv({4, 1})}));
}

TEST(MinkowskiSum, Examples) {
  const LatticePolytope tri = convex_hull(pts({{0, 0}, {1, 0}, {0, 1}}));
  EXPECT_EQ(minkowski_sum(tri, tri), dilate(tri, 2));
  const LatticePolytope pt = LatticePolytope::from_points(pts({{2, 3}}));
  EXPECT_EQ(minkowski_sum(tri, pt).vertices(), pts({{2, 3}, {2, 4}, {3, 3}}));
  const LatticePolytope cay = cayley_scroll_polytope({1, 1, 1});
  EXPECT_EQ(minkowski_sum(cay, cay), dilate(cay, 2));
  EXPECT_THROW(minkowski_sum(tri, corpus::box(1, 1, 1)), Error);
}

TEST(MixedVolume, Examples) {
  const LatticePolytope C = corpus::box(2, 2, 2);
  EXPECT_EQ(mixed_volume3(C, C, C), 48);
  const LatticePolytope P = corpus::box(2, 2, 3);
  const LatticePolytope S = LatticePolytope::from_points(pts({{1, 1, 1}, {1, 1, 2}}));
  EXPECT_EQ(mixed_volume3(P, S, S), 0);
  const auto e1 = LatticePolytope::from_points(pts({{0, 0, 0}, {1, 0, 0}}));
  const auto e2 = LatticePolytope::from_points(pts({{0, 0, 0}, {0, 1, 0}}));
  const auto e3 = LatticePolytope::from_points(pts({{0, 0, 0}, {0, 0, 1}}));
  EXPECT_EQ(mixed_volume3(e1, e2, e3), 1);
  EXPECT_THROW(mixed_volume3(e1, e2, convex_hull(pts({{0, 0}, {1, 0}, {0, 1}}))), Error);
}

TEST(MixedVolume, SymmetricAndMultilinear) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const LatticePolytope A = random_polytope(3, rng), B = random_polytope(3, rng), C = random_polytope(3, rng), D = random_polytope(3, rng);
    const Rational abc = mixed_volume3(A, B, C);
    EXPECT_EQ(abc, mixed_volume3(B, A, C));
    EXPECT_EQ(abc, mixed_volume3(C, B, A));
    EXPECT_EQ(abc, mixed_volume3(B, C, A));
    EXPECT_EQ(mixed_volume3(minkowski_sum(A, D), B, C), abc + mixed_volume3(D, B, C));
    EXPECT_EQ(mixed_volume3(A, A, A), A.volume());
  }
}

TEST(MixedVolume, BoxesMatchIntersectionNumbers) {
  // MV of boxes [0,a_i] x [0,b_i] x [0,c_i] is the permanent of the side matrix.
  const LatticePolytope P = corpus::box(1, 2, 3), Q = corpus::box(2, 1, 1), R = corpus::box(1, 1, 4);
  const long perm = 1 * (1 * 4 + 1 * 1) + 2 * (2 * 4 + 1 * 1) + 3 * (2 * 1 + 1 * 1);
  EXPECT_EQ(mixed_volume3(P, Q, R), perm);
}

TEST(RegularSubdivision, OneDimensionalExamples) {
  const auto A = pts({{0}, {1}, {2}});
  const RegularSubdivision up = regular_subdivision(A, rv({0, 1, 0}));
  ASSERT_EQ(up.cells.size(), 1u);
  EXPECT_EQ(up.cells[0].marked, (std::vector<std::size_t>{0, 2}));
  const RegularSubdivision down = regular_subdivision(A, rv({0, -1, 0}));
  ASSERT_EQ(down.cells.size(), 2u);
  EXPECT_EQ(down.cells[0].marked, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(down.cells[1].marked, (std::vector<std::size_t>{1, 2}));
  EXPECT_THROW(regular_subdivision(A, rv({0, 1})), Error);
}

TEST(RegularSubdivision, AffineLiftGivesOneCell) {
  const auto A = corpus::simplex_points(2, 2);
  RationalVector u;
  for (const auto& p : A) u.push_back(Rational(2 * p[0] - p[1] + 5));
  const RegularSubdivision S = regular_subdivision(A, u);
  ASSERT_EQ(S.cells.size(), 1u);
  EXPECT_EQ(S.cells[0].marked.size(), A.size());
  EXPECT_EQ(S.cells[0].gradient, rv({2, -1}));
  EXPECT_EQ(S.cells[0].intercept, 5);
}

TEST(RegularSubdivision, CellsCoverAndMeetInFaces) {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const auto A = corpus::simplex_points(2, 3 + trial % 2);
    const RationalVector u = corpus::random_rationals(A.size(), rng, 4, 3);
    const RegularSubdivision S = regular_subdivision(A, u);
    Integer total = 0;
    std::vector<LatticePolytope> cells;
    for (const auto& c : S.cells) {
      std::vector<IntVector> p;
      for (std::size_t i : c.marked) p.push_back(A[i]);
      const LatticePolytope C = convex_hull(p);
      total += C.volume();
      // marked points lie on the affine function, others strictly above
      for (std::size_t i = 0; i < A.size(); ++i) {
        const Rational h = dot(A[i], c.gradient) + c.intercept;
        if (std::find(c.marked.begin(), c.marked.end(), i) != c.marked.end()) EXPECT_EQ(h, u[i]);
        else EXPECT_LT(h, u[i]);
      }
      cells.push_back(C);
    }
    EXPECT_EQ(total, convex_hull(A).volume());
    // no lattice point of 3 * a cell interior (scaled centroid test) in another cell's interior
    for (std::size_t i = 0; i < cells.size(); ++i) {
      IntVector centroid(2, Integer(0));
      for (const auto& v : cells[i].vertices())
        for (std::size_t j = 0; j < 2; ++j) centroid[j] += v[j];
      const Integer m(static_cast<unsigned long>(cells[i].vertices().size()));
      for (std::size_t j = 0; j < cells.size(); ++j) {
        if (i == j) continue;
        bool inside = true;
        for (const Facet& f : cells[j].facets()) inside = inside && dot(f.normal, centroid) > f.offset * m;
        EXPECT_FALSE(inside);
      }
    }
  }
}

TEST(RegularSubdivision, WorkedExampleCells) {
  const RegularSubdivision S = regular_subdivision(corpus::extrop_points(), corpus::extrop_weights());
  std::size_t two_cells = 0;
  for (const auto& c : S.cells) two_cells += c.dim == 2;
  EXPECT_EQ(two_cells, S.cells.size());
  EXPECT_EQ(S.cells.size(), 3u);
}
