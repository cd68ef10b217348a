#include <gtest/gtest.h>

#include <random>

#include "qdops/scalar.hpp"

using namespace qdops;

namespace {

const Scalar q = Scalar::q();

Poly qpoly(std::initializer_list<long> coeffs) {
  Poly p;
  int k = 0;
  for (long c : coeffs) p.add_term(unit_exponents(0, k++), mpq_class(c));
  return p;
}

// Independent oracle: evaluate a one-variable scalar at a rational point.
mpq_class eval_at(const Poly& p, const mpq_class& x) {
  mpq_class acc = 0;
  for (const auto& [e, c] : p.terms()) {
    mpq_class pw = 1;
    for (int i = 0; i < e[0]; ++i) pw *= x;
    acc += c * pw;
  }
  return acc;
}

mpq_class eval_at(const Scalar& s, const mpq_class& x) {
  return eval_at(s.numerator(), x) / eval_at(s.denominator(), x);
}

Scalar random_scalar(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> coef(-3, 3);
  std::uniform_int_distribution<int> deg(0, 3);
  auto rp = [&] {
    Poly p;
    int d = deg(rng);
    for (int k = 0; k <= d; ++k) p.add_term(unit_exponents(0, k), mpq_class(coef(rng)));
    return p;
  };
  Poly den = rp();
  while (den.is_zero()) den = rp();
  return Scalar::fraction(rp(), den) * q.pow(static_cast<long>(deg(rng)) - 1);
}

}  // namespace

TEST(Scalar, NormalizeCancelsCommonFactor) {
  EXPECT_EQ(Scalar::fraction(qpoly({-1, 0, 1}), qpoly({-1, 1})), q + 1);
  EXPECT_EQ(Scalar::fraction(qpoly({-1, 1}), qpoly({-1, 1})), Scalar(1L));
  // q(1 - q^-1)/(q - 1) with the inverse cleared by hand.
  EXPECT_EQ(q * (Scalar(1L) - q.inverse()) / (q - 1), Scalar(1L));
}

TEST(Scalar, ZeroDenominatorThrows) {
  EXPECT_THROW(Scalar::fraction(Poly(1L), Poly()), DivisionByZero);
  EXPECT_THROW(Scalar().inverse(), DivisionByZero);
}

TEST(Scalar, QNumbers) {
  EXPECT_EQ(q_number(3, QKind::Balanced), q.pow(2) + 1 + q.pow(-2));
  EXPECT_EQ(q_number(3, QKind::Gauss), 1 + q + q * q);
  EXPECT_EQ(q_number(0, QKind::Balanced), Scalar());
  EXPECT_EQ(q_factorial(0), Scalar(1L));
  EXPECT_EQ(q_factorial(2), q + q.inverse());
}

TEST(Scalar, Printing) {
  EXPECT_EQ(to_string(1 + q + q * q), "1+q+q^2");
  EXPECT_EQ(to_string(q_number(3, QKind::Balanced)), "q^-2+1+q^2");
  EXPECT_EQ(to_string(Scalar(1L) / (1 - q)), "1/(1-q)");
  EXPECT_EQ(to_string(Scalar(-1L) / (q - 1)), "1/(1-q)");
  EXPECT_EQ(to_string(Scalar::rational(1, 2)), "1/2");
}

TEST(Scalar, Valuation) {
  const Scalar qm1 = q - 1;
  EXPECT_EQ(valuation_at_1(qm1 * qm1 / (q + 1)), 2);
  EXPECT_EQ(valuation_at_1(qm1.inverse()), -1);
  EXPECT_EQ(valuation_at_1(q * q - 1), 1);
  EXPECT_EQ(valuation_at_1(Scalar()), kInfiniteValuation);
}

TEST(Scalar, Truncate) {
  EXPECT_EQ(truncate(q_number(3, QKind::Gauss), 2), TruncatedScalar({3, 3}, 2));
  EXPECT_EQ(truncate(q.inverse(), 3), TruncatedScalar({1, -1, 1}, 3));
  EXPECT_THROW(truncate((q - 1).inverse(), 2), NotIntegralAtOne);
  EXPECT_EQ(to_string(truncate(q.inverse(), 3)), "1-t+t^2");
}

TEST(ScalarProperty, FieldAxioms) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const Scalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a + b, b + a);
    if (!a.is_zero()) {
      EXPECT_EQ(a * a.inverse(), Scalar(1L));
    }
    // Structural equality agrees with an evaluation oracle at rational points.
    const Scalar lhs = a * b + c;
    for (long k : {2L, 3L, 5L}) {
      const mpq_class x(k, 7);
      if (eval_at(a.denominator(), x) == 0 || eval_at(b.denominator(), x) == 0 ||
          eval_at(c.denominator(), x) == 0) {
        continue;
      }
      EXPECT_EQ(eval_at(lhs, x), eval_at(a, x) * eval_at(b, x) + eval_at(c, x));
    }
  }
}

TEST(ScalarProperty, ValuationAdditive) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 100; ++i) {
    Scalar a = random_scalar(rng), b = random_scalar(rng);
    if (a.is_zero() || b.is_zero()) continue;
    a *= (q - 1).pow(i % 3);
    EXPECT_EQ(valuation_at_1(a * b), valuation_at_1(a) + valuation_at_1(b));
  }
}

TEST(ScalarProperty, TruncateIsRingHomomorphism) {
  std::mt19937_64 rng(13);
  int checked = 0;
  while (checked < 100) {
    const Scalar a = random_scalar(rng), b = random_scalar(rng);
    if (valuation_at_1(a) < 0 || valuation_at_1(b) < 0) continue;
    ++checked;
    for (std::size_t n = 1; n <= 4; ++n) {
      EXPECT_EQ(truncate(a * b, n), truncate(a, n) * truncate(b, n));
      EXPECT_EQ(truncate(a + b, n), truncate(a, n) + truncate(b, n));
    }
  }
}

TEST(ScalarProperty, BalancedAtOneIsInteger) {
  for (long m = 0; m <= 8; ++m) {
    EXPECT_EQ(truncate(q_number(m, QKind::Balanced), 1), TruncatedScalar({m}, 1));
  }
}

TEST(Scalar, MultivariateReduction) {
  const Scalar q1 = Scalar::q(1, 0), q2 = Scalar::q(1, 1);
  const Scalar s = (q1 * q1 - q2 * q2) / (q1 - q2);
  EXPECT_EQ(s, q1 + q2);
  EXPECT_EQ(to_string(s), "q1+q2");
  EXPECT_EQ((q1 * q2 - 1) / (q2 * q1 - 1), Scalar(1L));
}
