#ifndef QDOPS_RANDOM_HPP
#define QDOPS_RANDOM_HPP

#include <algorithm>
#include <random>
#include <vector>

#include "qdops/shape.hpp"

namespace qdops::random {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// A nonzero small scalar: +-1..3 times q^e, e in -2..2.
inline Scalar small_scalar(Rng& rng) {
  const int v = uniform(rng, 1, 3) * (uniform(rng, 0, 1) ? 1 : -1);
  return Scalar(static_cast<long>(v)) * Scalar::q(uniform(rng, -2, 2));
}

/// Leaves of the standard generating set on k[x].
inline OperatorExpr random_leaf(Rng& rng, bool with_tau = true) {
  switch (uniform(rng, 0, with_tau ? 4 : 3)) {
    case 0: return ops::x();
    case 1: return ops::s(uniform(rng, 0, 1) ? 1 : -1);
    case 2: return ops::d(uniform(rng, -1, 1));
    case 3: return ops::x();
    default: return ops::tau();
  }
}

/// Product of 1..max_len leaves.
inline OperatorExpr random_word(Rng& rng, int max_len, bool with_tau = true) {
  std::vector<OperatorExpr> factors;
  const int n = uniform(rng, 1, max_len);
  for (int i = 0; i < n; ++i) factors.push_back(random_leaf(rng, with_tau));
  return OperatorExpr::product(std::move(factors));
}

/// Word in x, sigma^{+-1}, d^{beta^a} (a in -1..1) and tau of total degree 0.
inline OperatorExpr random_degree0_word(Rng& rng, int max_pairs = 3) {
  std::vector<OperatorExpr> factors;
  const int pairs = uniform(rng, 0, max_pairs);
  for (int i = 0; i < pairs; ++i) {
    factors.push_back(ops::x());
    factors.push_back(ops::d(uniform(rng, -1, 1)));
  }
  const int extra = uniform(rng, 0, 3);
  for (int i = 0; i < extra; ++i) {
    factors.push_back(uniform(rng, 0, 2) == 0 ? ops::tau() : ops::s(uniform(rng, 0, 1) ? 1 : -1));
  }
  if (factors.empty()) factors.push_back(ops::s(1));
  std::shuffle(factors.begin(), factors.end(), rng);
  return OperatorExpr::product(std::move(factors));
}

/// Random expression tree (sums, scalar multiples, products, powers) with
/// at most max_leaves leaves.
inline OperatorExpr random_expr(Rng& rng, int max_leaves) {
  if (max_leaves <= 1) return random_leaf(rng);
  const int left = uniform(rng, 1, max_leaves - 1);
  const OperatorExpr a = random_expr(rng, left);
  const OperatorExpr b = random_expr(rng, max_leaves - left);
  switch (uniform(rng, 0, 3)) {
    case 0: return OperatorExpr::sum({{Scalar(1L), a}, {small_scalar(rng), b}});
    case 1: return OperatorExpr::scale(small_scalar(rng), a * b);
    case 2: return OperatorExpr::bracket(a, b, uniform(rng, -1, 1));
    default: return a * b;
  }
}

/// Shape form with at most max_terms terms, word length <= max_len, x-degree
/// <= max_xdeg and sigma exponents in [-max_sigma, max_sigma]. Never zero.
inline ShapeForm random_shape_form(Rng& rng, int max_terms = 5, int max_len = 3, int max_xdeg = 4,
                                   int max_sigma = 3) {
  for (;;) {
    ShapeForm f;
    const int n = uniform(rng, 1, max_terms);
    for (int i = 0; i < n; ++i) {
      ShapeWord w(static_cast<std::size_t>(uniform(rng, 0, max_len)));
      for (auto& letter : w) letter = uniform(rng, 0, 1);
      f.add(uniform(rng, -max_sigma, max_sigma), w,
            XPoly::monomial(uniform(rng, 0, max_xdeg), small_scalar(rng)));
    }
    if (!eval(f).is_zero()) return f;
  }
}

}  // namespace qdops::random

#endif  // QDOPS_RANDOM_HPP
