#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qdops/truncated.hpp"

using namespace qdops;

namespace {

const Scalar q = Scalar::q();
const RingTag X = RingTag::poly_x();

GradedOperator G(const Generator& g, RingTag tag = X) { return generator(g, tag); }
GradedOperator one(RingTag tag = X) { return GradedOperator::identity(tag); }
GradedOperator xop(RingTag tag = X) { return G(gen::x(), tag); }
GradedOperator D(int a, RingTag tag = X) { return G(gen::dbeta(a), tag); }
GradedOperator S(int a, RingTag tag = X) { return G(gen::sigma(a), tag); }

RingElement xpow(int e, RingTag tag = X, const Scalar& c = Scalar(1L)) {
  return RingElement::monomial(unit_exponents(0, e), c, tag);
}

// A random word in x, sigma^{+-1,2}, d^{beta^a} (a in -2..2) and tau,
// carried both as an operator and as a sequence of oracle actions.
struct Word {
  GradedOperator op = one();
  std::vector<std::function<oracle::Poly1(const oracle::Poly1&)>> actions;  // applied last-first
};

Word random_word(std::mt19937_64& rng, int max_len, bool allow_tau = true) {
  std::uniform_int_distribution<int> len(1, max_len), kind(0, allow_tau ? 3 : 2), ex(-2, 2);
  Word w;
  const int n = len(rng);
  for (int i = 0; i < n; ++i) {
    const int k = kind(rng);
    const int a = ex(rng);
    switch (k) {
      case 0:
        w.op = w.op * xop();
        w.actions.push_back([](const oracle::Poly1& p) { return oracle::times_x(1, p); });
        break;
      case 1:
        w.op = w.op * S(a);
        w.actions.push_back([a](const oracle::Poly1& p) { return oracle::sigma(a, p); });
        break;
      case 2:
        w.op = w.op * D(a);
        w.actions.push_back([a](const oracle::Poly1& p) { return oracle::dbeta(a, p); });
        break;
      default:
        w.op = w.op * G(gen::tau());
        w.actions.push_back([](const oracle::Poly1& p) { return oracle::tau(p); });
        break;
    }
  }
  return w;
}

oracle::Poly1 run_oracle(const Word& w, oracle::Poly1 p) {
  for (auto it = w.actions.rbegin(); it != w.actions.rend(); ++it) p = (*it)(p);
  return p;
}

oracle::Poly1 to_poly1(const RingElement& r) {
  oracle::Poly1 p;
  for (const auto& [e, c] : r.terms()) oracle::add(p, e[0], c);
  return p;
}

}  // namespace

// ---------------------------------------------------------------------------
// generator / apply

TEST(Generators, ApplyExamples) {
  EXPECT_EQ(apply(D(1), xpow(3)), xpow(2, X, 1 + q + q * q));
  EXPECT_EQ(to_string(apply(D(1), xpow(3))), "(1+q+q^2)*x^2");
  EXPECT_TRUE(apply(D(0), xpow(0)).is_zero());
  for (int a = -3; a <= 3; ++a) {
    for (int b = 0; b <= 5; ++b) EXPECT_EQ(apply(S(a), xpow(b)), xpow(b, X, q.pow(a * b)));
  }
  const RingTag L = RingTag::laurent();
  EXPECT_EQ(apply(D(1, L), xpow(-1, L)), xpow(-2, L, -q.inverse()));
}

TEST(Generators, DbetaI) {
  const RingTag N2 = RingTag::poly_n(2);
  const Scalar q1 = Scalar::q(1, 0);
  for (int k = -2; k <= 3; ++k) {
    if (k == 0) continue;
    for (int a1 = 0; a1 <= 3; ++a1) {
      for (int a2 = 0; a2 <= 2; ++a2) {
        Exponents e = zero_exponents();
        e[0] = a1;
        e[1] = a2;
        Exponents out = e;
        out[0] -= 1;
        const Scalar c = (Scalar::q(k * a1, 0) - 1) / (q1 - 1);
        const RingElement got = apply(G(gen::dbeta_i(0, k), N2), RingElement::monomial(e, Scalar(1L), N2));
        if (a1 == 0) {
          EXPECT_TRUE(got.is_zero());
        } else {
          EXPECT_EQ(got, RingElement::monomial(out, c, N2));
        }
      }
    }
  }
  // k = 0 is the classical partial derivative.
  Exponents e = zero_exponents();
  e[1] = 3;
  const RingElement got = apply(G(gen::dbeta_i(1, 0), N2), RingElement::monomial(e, Scalar(1L), N2));
  e[1] = 2;
  EXPECT_EQ(got, RingElement::monomial(e, Scalar(3L), N2));
}

TEST(Generators, DomainMismatch) {
  EXPECT_THROW(G(gen::dbeta_i(0, 1), X), DomainMismatch);
  EXPECT_THROW(G(gen::x(), RingTag::poly_y()), DomainMismatch);
  EXPECT_THROW(G(gen::x_inverse(), X), DomainMismatch);
  EXPECT_THROW(G(gen::y(), X), DomainMismatch);
  EXPECT_THROW(G(gen::x_i(2), RingTag::poly_n(2)), DomainMismatch);
  EXPECT_THROW(compose(D(1), D(1, RingTag::laurent())), DomainMismatch);
  EXPECT_THROW(D(1) + D(1, RingTag::poly_y()), DomainMismatch);
}

TEST(Generators, ApplyOutOfSupport) {
  // x^-1 d on k[x]: the symbol does not vanish at m = 0 ... build it on the
  // Laurent ring, then retag to force a violation.
  const RingTag L = RingTag::laurent();
  const GradedOperator bad = G(gen::x_inverse(), L).retagged(X);
  EXPECT_THROW(apply(bad, xpow(0)), OutOfSupport);
  EXPECT_FALSE(preserves_polynomials(bad));
  EXPECT_TRUE(preserves_polynomials(D(1) * D(-1) * D(0)));
}

TEST(Symbols, Display) {
  EXPECT_EQ(to_string(D(1)), "deg=-1: (u-1)/(q-1)");
  EXPECT_EQ(to_string(D(0)), "deg=-1: m");
  EXPECT_EQ(to_string(S(2) * xop()), "deg=1: q^2*u^2");
}

// ---------------------------------------------------------------------------
// compose / linear combinations

TEST(Compose, Examples) {
  EXPECT_EQ(D(1) * xop() - q * (xop() * D(1)), one());
  EXPECT_EQ(S(1) * S(-1), one());
  EXPECT_EQ(xop() * D(0), G(gen::tau()));
  EXPECT_TRUE((D(1) - D(1)).is_zero());
  EXPECT_TRUE((S(1) - one() - (q - 1) * (xop() * D(1))).is_zero());
  EXPECT_TRUE((D(-1) - q * D(1) - (1 - q) * (D(-1) * xop() * D(1))).is_zero());
}

TEST(ComposeProperty, MatchesSequentialApplication) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 60; ++i) {
    const Word w1 = random_word(rng, 3), w2 = random_word(rng, 3);
    Word w;
    w.op = w1.op * w2.op;
    w.actions = w1.actions;
    w.actions.insert(w.actions.end(), w2.actions.begin(), w2.actions.end());
    for (int m = 0; m <= 12; ++m) {
      EXPECT_EQ(to_poly1(apply(w.op, xpow(m))), run_oracle(w, oracle::monomial(m)))
          << "case " << i << " m=" << m;
      EXPECT_EQ(apply(w.op, xpow(m)), apply(w1.op, apply(w2.op, xpow(m))));
    }
  }
}

TEST(ComposeProperty, Associative) {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 40; ++i) {
    const auto a = random_word(rng, 2).op, b = random_word(rng, 2).op, c = random_word(rng, 2).op;
    EXPECT_EQ((a * b) * c, a * (b * c));
  }
}

// ---------------------------------------------------------------------------
// brackets

TEST(Bracket, Examples) {
  for (int a = -3; a <= 3; ++a) {
    EXPECT_EQ(twisted_bracket(D(a), xop(), 0), S(a));
    EXPECT_TRUE(twisted_bracket(S(a), xop(), a).is_zero());
  }
  const GradedOperator x2 = xop() * xop();
  EXPECT_EQ((q - 1) / (q + 1) * twisted_bracket(D(1), x2 * D(1), 2) + one(), S(1));
}

TEST(BracketProperty, ExpansionIdentity) {
  // [[f,g]_a, x] = [[f,x],g]_a + f[g,x] - [s~_a(g), x] f  with s~_a(g) = sum beta(a, deg g_b) g_b
  std::mt19937_64 rng(33);
  for (int i = 0; i < 40; ++i) {
    const auto f = random_word(rng, 3).op;
    const auto g = random_word(rng, 2).op + random_word(rng, 2).op;
    for (int a = -2; a <= 2; ++a) {
      GradedOperator twisted(X);
      for (const auto& [e, s] : g.parts()) twisted.add_part(e, s * q.pow(static_cast<long>(a) * e[0]));
      const auto lhs = bracket(twisted_bracket(f, g, a), xop());
      const auto rhs = twisted_bracket(bracket(f, xop()), g, a) + f * bracket(g, xop()) -
                       bracket(twisted, xop()) * f;
      EXPECT_EQ(lhs, rhs);
    }
  }
}

TEST(BracketProperty, CommutingWithXMeansMultiplication) {
  std::mt19937_64 rng(34);
  for (int i = 0; i < 60; ++i) {
    GradedOperator f = random_word(rng, 3).op;
    if (i % 3 == 0) f = xop() * xop() * q + xop() + one() * 3;  // genuine k[x] elements
    bool multiplication = true;
    for (const auto& [e, s] : f.parts()) multiplication = multiplication && s.constant().has_value();
    EXPECT_EQ(bracket(f, xop()).is_zero(), multiplication);
  }
}

// ---------------------------------------------------------------------------
// equality / faithfulness

TEST(Equality, Examples) {
  const auto tau = G(gen::tau());
  EXPECT_EQ(tau * S(1), S(1) * tau);
  EXPECT_NE(D(0), D(1));
  for (int a = 1; a <= 3; ++a) EXPECT_EQ(D(a), S(a) * D(-a));
}

TEST(EqualityProperty, Faithful) {
  std::mt19937_64 rng(35);
  for (int i = 0; i < 60; ++i) {
    const auto f = random_word(rng, 3).op, g = random_word(rng, 3).op;
    bool same_action = true;
    for (int m = 0; m <= 20; ++m) same_action = same_action && apply(f, xpow(m)) == apply(g, xpow(m));
    EXPECT_EQ(f == g, same_action);
  }
}

TEST(Domain, ProductsOfNonzeroAreNonzero) {
  std::mt19937_64 rng(36);
  for (int i = 0; i < 60; ++i) {
    const auto f = random_word(rng, 3).op + random_word(rng, 3).op;
    const auto g = random_word(rng, 3).op - random_word(rng, 2).op;
    if (f.is_zero() || g.is_zero()) continue;
    EXPECT_FALSE((f * g).is_zero());
  }
}

// ---------------------------------------------------------------------------
// note identities and the immediate formulae

TEST(Identities, Note) {
  for (int a = 1; a <= 5; ++a) {
    GradedOperator sum(X), sum_neg(X);
    for (int k = 0; k < a; ++k) {
      sum += S(k);
      sum_neg += S(-k);
    }
    EXPECT_EQ(D(a), (1 - q) / (1 - q.pow(a)) * (D(1) * sum));
    EXPECT_EQ(D(-a), (1 - q.inverse()) / (1 - q.pow(-a)) * (D(-1) * sum_neg));
    // With the prefactor (1-q)/(1-q^-a) the identity is off by the factor -q.
    EXPECT_EQ((1 - q) / (1 - q.pow(-a)) * (D(-1) * sum_neg), -q * D(-a));
  }
  for (int b = 0; b <= 6; ++b) EXPECT_EQ(apply(D(0), xpow(b)), b == 0 ? RingElement(X) : xpow(b - 1, X, Scalar(static_cast<long>(b))));
  for (int a = -3; a <= 3; ++a) EXPECT_EQ(D(a), S(a) * D(-a));
}

TEST(Identities, Immediate) {
  const auto tau = G(gen::tau());
  // Holds for d d^b - q d^b d, which is the (-1)-twisted bracket here.
  const auto br = twisted_bracket(D(0), D(1), -1);
  EXPECT_EQ(br, D(0) * D(1) - q * D(1) * D(0));
  EXPECT_EQ(xop() * br, D(0) - D(1));
  EXPECT_EQ(br * xop(), D(0) - q * D(1));
  const auto plus_one = twisted_bracket(D(0), D(1), 1);
  EXPECT_NE(xop() * plus_one, D(0) - D(1));
  EXPECT_NE(plus_one * xop(), D(0) - q * D(1));
  for (int k = -2; k <= 2; ++k) {
    for (int a = -2; a <= 2; ++a) {
      EXPECT_EQ((tau + k * one()) * D(a), D(a) * (tau + (k - 1) * one()));
    }
  }
  EXPECT_EQ((tau + one()) * D(1), (q * S(1) - one()) * (q - 1).inverse() * D(0));
}

TEST(Identities, ImmediateMultiIndex) {
  const auto tau = G(gen::tau());
  for (int len = 1; len <= 3; ++len) {
    for (int mask = 0; mask < (1 << len); ++mask) {
      GradedOperator word = one(), lhs = one(), rhs = one();
      for (int j = 1; j <= len; ++j) {
        const bool beta = (mask >> (j - 1)) & 1;
        word = word * D(beta ? 1 : 0);
        if (beta) {
          lhs = lhs * (tau + j * one());
          rhs = rhs * ((q.pow(j) * S(1) - one()) * (q - 1).inverse());
        }
      }
      EXPECT_EQ(lhs * word, rhs * D(0).pow(static_cast<unsigned>(len))) << "len " << len << " mask " << mask;
    }
  }
}

TEST(Identities, SeveralVariables) {
  for (std::size_t n : {2U, 3U}) {
    const RingTag N = RingTag::poly_n(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        for (int k = -1; k <= 2; ++k) {
          const auto di = G(gen::dbeta_i(i, k), N);
          EXPECT_TRUE(bracket(di, G(gen::x_i(j), N)).is_zero());
          for (int m = -1; m <= 1; ++m) EXPECT_TRUE(bracket(di, G(gen::dbeta_i(j, m), N)).is_zero());
          Exponents a = zero_exponents();
          a[j] = k + 2;
          EXPECT_TRUE(bracket(di, G(gen::sigma_vec(a), N)).is_zero());
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Laurent extension, m-freeness

TEST(Laurent, Extension) {
  const RingTag Y = RingTag::poly_y(), L = RingTag::laurent();
  const auto dy = extend_to_laurent(G(gen::dbeta(0), Y));
  EXPECT_EQ(dy, GradedOperator(L, unit_exponents(0), Symbol::m_power(unit_exponents(0), Scalar(-1L))));
  EXPECT_EQ(apply(dy, xpow(1, L)), xpow(2, L, Scalar(-1L)));
  EXPECT_EQ(apply(extend_to_laurent(G(gen::dbeta(1), Y)), xpow(1, L)), xpow(2, L, -q));
  for (int n = -3; n <= 3; ++n) {
    EXPECT_EQ(apply(extend_to_laurent(G(gen::sigma(1), Y)), xpow(n, L)), xpow(n, L, q.pow(n)));
    EXPECT_EQ(apply(extend_to_laurent(G(gen::sigma(-1), Y)), xpow(n, L)), xpow(n, L, q.pow(-n)));
  }
  EXPECT_EQ(extend_to_laurent(D(1)), D(1, L));
  // The y-side generators act on k[y] as expected.
  EXPECT_EQ(apply(G(gen::sigma(1), Y), xpow(2, Y)), xpow(2, Y, q.pow(-2)));
  EXPECT_EQ(apply(G(gen::dbeta(0), Y), xpow(3, Y)), xpow(2, Y, Scalar(3L)));
}

TEST(Laurent, ExtensionIsHomomorphism) {
  const RingTag Y = RingTag::poly_y();
  std::mt19937_64 rng(37);
  std::uniform_int_distribution<int> pick(0, 3), ex(-2, 2);
  auto yword = [&] {
    GradedOperator w = one(Y);
    for (int i = 0; i < 3; ++i) {
      switch (pick(rng)) {
        case 0: w = w * G(gen::y(), Y); break;
        case 1: w = w * G(gen::sigma(ex(rng)), Y); break;
        case 2: w = w * G(gen::dbeta(ex(rng)), Y); break;
        default: w = w * G(gen::tau(), Y); break;
      }
    }
    return w;
  };
  for (int i = 0; i < 30; ++i) {
    const auto a = yword(), b = yword();
    EXPECT_EQ(extend_to_laurent(a * b), extend_to_laurent(a) * extend_to_laurent(b));
    // Agreement with the action on k[y] under y = x^-1.
    for (int n = 0; n <= 5; ++n) {
      const RingElement img = apply(a, xpow(n, Y));
      RingElement expect(RingTag::laurent());
      for (const auto& [e, c] : img.terms()) expect.add_term(-e, c);
      EXPECT_EQ(apply(extend_to_laurent(a), xpow(-n, RingTag::laurent())), expect);
    }
  }
}

TEST(MFree, Examples) {
  EXPECT_FALSE(is_m_free(D(0)));
  EXPECT_TRUE(is_m_free(S(3) * xop() * xop() * D(1)));
  std::mt19937_64 rng(38);
  std::uniform_int_distribution<int> pick(0, 3);
  for (int i = 0; i < 40; ++i) {
    GradedOperator w = one();
    for (int k = 0; k < 5; ++k) {
      const GradedOperator g[] = {xop(), S(1), S(-1), D(1), D(-1)};
      w = w * g[pick(rng)] + (k == 2 ? D(1) : GradedOperator(X));
    }
    EXPECT_TRUE(is_m_free(w));
  }
}

// ---------------------------------------------------------------------------
// truncation

TEST(Truncation, Examples) {
  const TruncatedScalar one1({1}, 1);
  EXPECT_EQ(truncate_operator(D(1), 1), truncated_monomial(-1, 1, one1));
  EXPECT_EQ(truncate_operator(D(-1), 1), truncated_monomial(-1, 1, one1));
  EXPECT_EQ(truncate_operator(D(0), 1), truncated_monomial(-1, 1, one1));
  const auto sigma2 = truncate_operator(S(1), 2);
  EXPECT_EQ(sigma2, truncated_monomial(0, 0, TruncatedScalar({1, 0}, 2)) +
                        truncated_monomial(0, 1, TruncatedScalar({0, 1}, 2)));
  EXPECT_THROW(truncate_operator((q - 1).inverse() * S(1), 2), NotIntegralAtOne);
  EXPECT_EQ(operator_valuation((q - 1).inverse() * S(1)), -1);
  EXPECT_EQ(operator_valuation(S(1) - one()), 1);
  EXPECT_EQ(operator_valuation(D(1)), 0);
}

TEST(Truncation, NilpotenceOrder) {
  EXPECT_EQ(bracket_nilpotence_order(truncate_operator(D(0), 1)), 2);
  EXPECT_EQ(bracket_nilpotence_order(truncate_operator(S(1), 2)), 2);
  EXPECT_EQ(bracket_nilpotence_order(TruncatedOperator(3)), 0);
  // Direct oracle for the sigma case: [[s,x],x] = (q-1)^2 x^2 s, zero mod t^2.
  const auto twice = bracket(bracket(S(1), xop()), xop());
  EXPECT_EQ(twice, (q - 1) * (q - 1) * (xop() * xop() * S(1)));
  EXPECT_TRUE(truncate_operator(twice, 2).is_zero());
}

TEST(TruncationProperty, MultiplicativeAndBounded) {
  std::mt19937_64 rng(39);
  for (int i = 0; i < 40; ++i) {
    const auto f = random_word(rng, 3).op, g = random_word(rng, 3).op;
    for (std::size_t n = 1; n <= 4; ++n) {
      const auto tf = truncate_operator(f, n), tg = truncate_operator(g, n);
      EXPECT_EQ(truncate_operator(f * g, n), compose(tf, tg));
      EXPECT_EQ(truncate_operator(bracket(f, xop()), n), bracket_with_x(tf));
      EXPECT_LE(bracket_nilpotence_order(tf), tf.m_degree() + 1);
    }
  }
}
