#pragma once

// Exact feasibility of systems <a, x> >= c over Q^n by Fourier-Motzkin
// elimination, with a concrete point recovered by back-substitution.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "torjet/arith.hpp"

namespace torjet::detail {

struct Constraint {
  RationalVector a;  // <a, x> >= c
  Rational c;
};

// Scale so that the first nonzero coefficient has absolute value 1; parallel
// constraints then share the same `a` and only the largest `c` matters.
inline Constraint normalized(Constraint k) {
  for (const Rational& x : k.a) {
    if (x == 0) continue;
    const Rational s = x < 0 ? Rational(-x) : x;
    for (Rational& y : k.a) y /= s;
    k.c /= s;
    break;
  }
  return k;
}

class ConstraintSet {
 public:
  explicit ConstraintSet(std::size_t n) : n_(n) {}

  /// False once an unsatisfiable constant constraint 0 >= c > 0 was added.
  bool add(Constraint k) {
    k = normalized(std::move(k));
    const bool zero = std::all_of(k.a.begin(), k.a.end(), [](const Rational& x) { return x == 0; });
    if (zero) {
      if (k.c > 0) infeasible_ = true;
      return !infeasible_;
    }
    auto [it, inserted] = rows_.emplace(k.a, k.c);
    if (!inserted && k.c > it->second) it->second = k.c;
    return !infeasible_;
  }

  std::size_t dim() const noexcept { return n_; }
  bool infeasible() const noexcept { return infeasible_; }
  const std::map<RationalVector, Rational>& rows() const noexcept { return rows_; }

 private:
  std::size_t n_;
  bool infeasible_ = false;
  std::map<RationalVector, Rational> rows_;
};

/// Eliminates x_{n-1}, ..., x_0 in turn. levels[j] holds the constraints
/// involving only x_0..x_{j-1}; the point is then built upward, each coordinate
/// taken as 0 when allowed and otherwise as the nearest bound.
inline std::optional<RationalVector> feasible_point(const ConstraintSet& system) {
  const std::size_t n = system.dim();
  if (system.infeasible()) return std::nullopt;
  std::vector<ConstraintSet> levels(n + 1, ConstraintSet(n));
  levels[n] = system;
  for (std::size_t j = n; j-- > 0;) {
    ConstraintSet next(n);
    std::vector<Constraint> lower, upper;
    for (const auto& [a, c] : levels[j + 1].rows()) {
      if (a[j] > 0) lower.push_back({a, c});
      else if (a[j] < 0) upper.push_back({a, c});
      else next.add({a, c});
    }
    for (const auto& p : lower)
      for (const auto& q : upper) {
        const Rational sp = -q.a[j], sq = p.a[j];
        Constraint comb{RationalVector(n), sp * p.c + sq * q.c};
        for (std::size_t i = 0; i < n; ++i) comb.a[i] = sp * p.a[i] + sq * q.a[i];
        comb.a[j] = 0;
        next.add(std::move(comb));
      }
    if (next.infeasible()) return std::nullopt;
    levels[j] = std::move(next);
  }
  RationalVector x(n, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    std::optional<Rational> lo, hi;
    for (const auto& [a, c] : levels[j + 1].rows()) {
      if (a[j] == 0) continue;
      Rational rest = c;
      for (std::size_t i = 0; i < j; ++i) rest -= a[i] * x[i];
      const Rational bound = rest / a[j];
      if (a[j] > 0) {
        if (!lo || bound > *lo) lo = bound;
      } else {
        if (!hi || bound < *hi) hi = bound;
      }
    }
    if (lo && hi && *lo > *hi) return std::nullopt;
    Rational v = 0;
    if (lo && v < *lo) v = *lo;
    if (hi && v > *hi) v = *hi;
    x[j] = v;
  }
  return x;
}

}  // namespace torjet::detail
