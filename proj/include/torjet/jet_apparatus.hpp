#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "torjet/lattice_geom.hpp"
#include "torjet/linalg.hpp"
#include "torjet/polynomial.hpp"
#include "torjet/polytope_invariants.hpp"

namespace torjet {

inline constexpr std::size_t kDefaultColumnCap = 18;

/// Exponents alpha in N^n with |alpha| <= k: by total degree, then in
/// descending lexicographic order (v1^2 before v1 v2 before v2^2).
inline std::vector<Exponent> jet_multi_indices(std::size_t n, unsigned k) {
  std::vector<Exponent> out;
  for (unsigned deg = 0; deg <= k; ++deg) {
    std::vector<Exponent> level;
    Exponent e(n, 0);
    // recursive fill of compositions of deg into n parts
    auto fill = [&](auto&& self, std::size_t pos, unsigned left) -> void {
      if (pos + 1 == n || n == 0) {
        if (n > 0) e[pos] = left;
        if (n > 0 || left == 0) level.push_back(e);
        return;
      }
      for (unsigned x = left + 1; x-- > 0;) {
        e[pos] = x;
        self(self, pos + 1, left - x);
      }
    };
    fill(fill, 0, deg);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

struct JetMatrix {
  PointConfiguration config;
  unsigned k = 0;
  std::size_t n = 0;
  RationalMatrix matrix;           // binom(n+k, k) x (m+1)
  std::vector<Exponent> row_index;
};

inline std::size_t config_dim(const PointConfiguration& A) {
  if (A.empty()) throw Error(ErrorCode::EmptyInput, "empty configuration");
  const std::size_t n = A[0].size();
  for (const auto& p : A)
    if (p.size() != n) throw Error(ErrorCode::DimensionMismatch, "points of different lengths");
  return n;
}

/// Row alpha holds prod_j r_{i,j}^alpha_j for every column i; the degree-zero
/// row is the homogenizing all-ones row.
inline JetMatrix build_Ak(const PointConfiguration& A, unsigned k) {
  JetMatrix J;
  J.n = config_dim(A);
  J.config = A;
  J.k = k;
  J.row_index = jet_multi_indices(J.n, k);
  J.matrix = RationalMatrix(J.row_index.size(), A.size());
  for (std::size_t r = 0; r < J.row_index.size(); ++r) {
    const Exponent& alpha = J.row_index[r];
    for (std::size_t i = 0; i < A.size(); ++i) {
      Integer v = 1;
      for (std::size_t j = 0; j < J.n; ++j)
        for (unsigned t = 0; t < alpha[j]; ++t) v *= A[i][j];
      J.matrix(r, i) = v;
    }
  }
  return J;
}

/// Polynomial sum_alpha q_alpha w^alpha for a coefficient vector indexed like the rows of J.
inline Polynomial jet_polynomial(const JetMatrix& J, const RationalVector& q) {
  Polynomial p(J.n);
  for (std::size_t r = 0; r < q.size(); ++r) p.add_term(J.row_index[r], q[r]);
  return p;
}

struct RankKernel {
  std::size_t rank = 0;
  std::vector<RationalVector> kernel;  // read off the reduced echelon form
};

inline RankKernel rank_and_kernel(const RationalMatrix& M) {
  const EchelonForm e = rref(M);
  return {bareiss_rank(M), kernel_basis(e)};
}

inline int affine_span_dim(const PointConfiguration& A) {
  config_dim(A);
  return affine_rank(A);
}

inline bool is_generically_k_spanned(const PointConfiguration& A, unsigned k) {
  const int d = affine_span_dim(A);
  const JetMatrix J = build_Ak(A, k);
  return Integer(static_cast<long>(bareiss_rank(J.matrix))) == binomial(d + static_cast<long>(k), k);
}

/// Every torus-fixed point sees all local monomials of degree <= k: at each
/// vertex v with primitive edge basis e_1..e_n, all v + sum beta_j e_j with
/// |beta| <= k belong to A. Needs a smooth full-dimensional Conv(A).
inline bool is_k_jet_spanned(const PointConfiguration& A, unsigned k) {
  const LatticePolytope P = convex_hull(A);
  if (!is_smooth(P)) throw Error(ErrorCode::NotSmooth, "jet spannedness at fixed points needs a smooth polytope");
  std::vector<IntVector> sorted = A;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = P.ambient_dim();
  const auto betas = jet_multi_indices(n, k);
  for (std::size_t v = 0; v < P.vertices().size(); ++v) {
    const auto dirs = edge_directions_at(P, v);
    for (const Exponent& beta : betas) {
      IntVector x = P.vertices()[v];
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t c = 0; c < n; ++c) x[c] += dirs[j][c] * beta[j];
      if (!std::binary_search(sorted.begin(), sorted.end(), x)) return false;
    }
  }
  return true;
}

inline long expected_dim(const PointConfiguration& A, unsigned k) {
  const int d = affine_span_dim(A);
  const JetMatrix J = build_Ak(A, k);
  return static_cast<long>(A.size()) - 1 + d - static_cast<long>(bareiss_rank(J.matrix));
}

struct TorusDisjointness {
  bool disjoint = false;
  std::optional<std::size_t> index;   // the point where the witness does not vanish
  std::optional<Polynomial> witness;  // degree <= k, vanishing on every other point
};

/// Looks for a unit vector e_i in the rowspan of A^(k).
inline TorusDisjointness torus_disjoint(const PointConfiguration& A, unsigned k) {
  const JetMatrix J = build_Ak(A, k);
  const RationalMatrix T = J.matrix.transpose();
  for (std::size_t i = 0; i < A.size(); ++i) {
    RationalVector e(A.size(), Rational(0));
    e[i] = 1;
    if (auto q = solve(T, e)) return {true, i, jet_polynomial(J, *q)};
  }
  return {};
}

struct CocircuitVector {
  std::vector<std::size_t> support;
  RationalVector vector;  // full length m+1, first nonzero entry 1
  Polynomial witness;     // evaluates to `vector` on the configuration
};

inline std::size_t column_cap_from_env(std::size_t fallback = kDefaultColumnCap) {
  if (const char* s = std::getenv("TORJET_CAP_COLUMNS")) {
    try {
      const long v = std::stol(s);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return fallback;
}

/// Minimal-support vectors of rowspan(A^(k)), one per support. Each comes from
/// a hyperplane flat: the closure of a rank-(r-1) set of columns.
inline std::vector<CocircuitVector> cocircuits(const JetMatrix& J, std::size_t cap = kDefaultColumnCap) {
  const std::size_t cols = J.matrix.cols();
  if (cols > cap)
    throw Error(ErrorCode::CapExceeded, std::to_string(cols) + " columns exceed the cap of " + std::to_string(cap), static_cast<long>(cols));
  const EchelonForm e = rref(J.matrix);
  const std::size_t r = e.rank();
  std::vector<RationalVector> basis;
  for (std::size_t i = 0; i < r; ++i) basis.push_back(e.reduced.row(i));
  const RationalMatrix R = RationalMatrix::from_rows(basis, cols);
  const RationalMatrix T = J.matrix.transpose();

  std::vector<CocircuitVector> out;
  std::vector<std::vector<bool>> flats;  // zero sets of cocircuits found so far
  std::vector<std::size_t> subset(r - 1);
  for (std::size_t i = 0; i + 1 < r; ++i) subset[i] = i;
  while (true) {
    bool covered = false;
    for (const auto& flat : flats) {
      covered = std::all_of(subset.begin(), subset.end(), [&](std::size_t c) { return flat[c]; });
      if (covered) break;
    }
    if (!covered) {
      const RationalMatrix sub = R.select_columns(subset).transpose();
      const auto left = kernel_basis(rref(sub));
      if (left.size() == 1) {
        RationalVector lambda(cols, Rational(0));
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t c = 0; c < cols; ++c) lambda[c] += left[0][i] * R(i, c);
        CocircuitVector cv;
        std::vector<bool> zero(cols, true);
        for (std::size_t c = 0; c < cols; ++c)
          if (lambda[c] != 0) {
            cv.support.push_back(c);
            zero[c] = false;
          }
        const Rational lead = lambda[cv.support.front()];
        for (auto& x : lambda) x /= lead;
        cv.vector = std::move(lambda);
        cv.witness = jet_polynomial(J, *solve(T, cv.vector));
        flats.push_back(std::move(zero));
        out.push_back(std::move(cv));
      }
    }
    // next (r-1)-subset in lexicographic order
    std::size_t i = subset.size();
    while (i > 0 && subset[i - 1] == cols - subset.size() + i - 1) --i;
    if (i == 0) break;
    ++subset[i - 1];
    for (std::size_t j = i; j < subset.size(); ++j) subset[j] = subset[j - 1] + 1;
  }
  std::sort(out.begin(), out.end(), [](const CocircuitVector& a, const CocircuitVector& b) { return a.support < b.support; });
  return out;
}

}  // namespace torjet
