#ifndef QDOPS_TEST_ORACLES_HPP
#define QDOPS_TEST_ORACLES_HPP

// Independent reference implementations used by the tests. They act on
// polynomials directly, term by term, with explicit finite sums, and never
// touch the symbol calculus.

#include <functional>
#include <map>
#include <random>
#include <vector>

#include "qdops/scalar.hpp"

namespace oracle {

using qdops::Scalar;

/// Laurent polynomial in one variable, exponent -> coefficient.
using Poly1 = std::map<int, Scalar>;

inline void add(Poly1& p, int e, const Scalar& c) {
  if (c.is_zero()) return;
  p[e] += c;
  if (p[e].is_zero()) p.erase(e);
}

inline Scalar qp(long k) { return Scalar::q(static_cast<int>(k)); }

/// d^{beta^a}(x^b) = (1 + q^a + ... + q^{a(b-1)}) x^{b-1} for b >= 0;
/// for negative b the identity d(x^b x^{-b}) = 0 with the twisted Leibniz
/// rule forces -(q^{-a} + ... + q^{ab}) x^{b-1}.
inline Scalar dbeta_coeff(int a, int b) {
  Scalar c;
  if (b >= 0) {
    for (int k = 0; k < b; ++k) c += qp(static_cast<long>(a) * k);
  } else {
    for (int k = b; k < 0; ++k) c -= qp(static_cast<long>(a) * k);
  }
  return c;
}

inline Poly1 dbeta(int a, const Poly1& p) {
  Poly1 out;
  for (const auto& [b, c] : p) add(out, b - 1, c * dbeta_coeff(a, b));
  return out;
}

inline Poly1 sigma(int a, const Poly1& p) {
  Poly1 out;
  for (const auto& [b, c] : p) add(out, b, c * qp(static_cast<long>(a) * b));
  return out;
}

inline Poly1 times_x(int k, const Poly1& p) {
  Poly1 out;
  for (const auto& [b, c] : p) add(out, b + k, c);
  return out;
}

inline Poly1 tau(const Poly1& p) {
  Poly1 out;
  for (const auto& [b, c] : p) add(out, b, c * Scalar(static_cast<long>(b)));
  return out;
}

inline Poly1 monomial(int e, const Scalar& c = Scalar(1L)) {
  Poly1 p;
  add(p, e, c);
  return p;
}

}  // namespace oracle

#endif  // QDOPS_TEST_ORACLES_HPP
