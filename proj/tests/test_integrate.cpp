#include <gtest/gtest.h>

#include "qdops/integrate.hpp"
#include "qdops/parser.hpp"
#include "qdops/random.hpp"

using namespace qdops;

namespace {

const Scalar q = Scalar::q();
const RingTag X = RingTag::poly_x();

GradedOperator G(const Generator& g, RingTag tag = X) { return generator(g, tag); }

/// Every word of the given length with entries in [lo, hi].
std::vector<std::vector<int>> all_words(int length, int lo, int hi) {
  std::vector<std::vector<int>> out{{}};
  for (int i = 0; i < length; ++i) {
    std::vector<std::vector<int>> next;
    for (const auto& w : out) {
      for (int a = lo; a <= hi; ++a) {
        next.push_back(w);
        next.back().push_back(a);
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

TEST(Integrate, Examples) {
  EXPECT_EQ(to_string(integrate({{}, 2})), "D[2]");
  EXPECT_TRUE(verify_integral({{}, 2}, integrate({{}, 2})));

  EXPECT_EQ(eval(integrate({{0}, 0}), X), G(gen::dbeta(0)).pow(2) * Scalar::rational(1, 2));

  const OperatorExpr q1 = integrate({{1}, 0});
  EXPECT_EQ(to_string(q1), "(1/(1-q))*(D[0]*D[1]-q*D[1]*D[0])");
  EXPECT_TRUE(verify_integral({{1}, 0}, q1));
  EXPECT_EQ(bracket(eval(q1, X), G(gen::x())), G(gen::dbeta(1)));
}

TEST(Integrate, IntegrandEncoding) {
  // word (a1, a2) means d^{beta^{a2}} d^{beta^{a1}} sigma_b
  EXPECT_EQ(integrand({{1, 2}, -1}), G(gen::dbeta(2)) * G(gen::dbeta(1)) * G(gen::sigma(-1)));
}

TEST(Integrate, SpecialCaseUsesTransposition) {
  for (const auto& w : std::vector<std::vector<int>>{{1}, {2, 0}, {0, -1}, {1, 1}, {0, 0, 2}, {-2, 1, 0}}) {
    int total = 0;
    for (int a : w) total += a;
    const IntegrationProblem p{w, -total};
    EXPECT_TRUE(verify_integral(p, integrate(p))) << w.size();
  }
}

TEST(Integrate, RotationConsistency) {
  // sum_i q^{-(k_1+...+k_{i-1})} [t_i, d_i]_{k_i} = (1 - q^{-sum k_i}) P
  for (int n = 1; n <= 3; ++n) {
    for (const auto& w : all_words(n, -2, 2)) {
      GradedOperator lhs(X);
      int prefix = 0;
      int total_k = 0;
      for (int i = 0; i < n; ++i) {
        GradedOperator t = GradedOperator::identity(X);
        for (int r = 0; r < n - 1; ++r) {
          t = G(gen::dbeta(w[static_cast<std::size_t>((i + 1 + r) % n)])) * t;
        }
        const int k = -n * w[static_cast<std::size_t>(i)];
        lhs += twisted_bracket(t, G(gen::dbeta(w[static_cast<std::size_t>(i)])), k) * Scalar::q(-prefix);
        prefix += k;
        total_k += k;
      }
      const GradedOperator p = integrand({w, 0});
      ASSERT_EQ(lhs, p * (Scalar(1L) - Scalar::q(-total_k)));
    }
  }
}

TEST(Integrate, ExhaustiveUpToLengthThree) {
  for (int n = 0; n <= 3; ++n) {
    for (const auto& w : all_words(n, -2, 2)) {
      for (int b = -3; b <= 3; ++b) {
        const IntegrationProblem p{w, b};
        ASSERT_TRUE(verify_integral(p, integrate(p))) << "n=" << n << " b=" << b;
      }
    }
  }
}

TEST(Integrate, RandomLengthFour) {
  random::Rng rng(17);
  for (int i = 0; i < 20; ++i) {
    std::vector<int> w(4);
    for (auto& a : w) a = random::uniform(rng, -2, 2);
    const IntegrationProblem p{w, random::uniform(rng, -3, 3)};
    ASSERT_TRUE(verify_integral(p, integrate(p)));
  }
}

// ---------------------------------------------------------------------------

namespace {

const RingTag N2 = RingTag::poly_n(2);
const RingTag N3 = RingTag::poly_n(3);

TermSum T(const std::string& text, const RingTag& tag) {
  return to_terms(parse_operator(text, tag), tag.nvars);
}

}  // namespace

TEST(TermForm, MultiplicationMatchesOperators) {
  for (const char* text : {"D[1,1]*x[1]", "D[1,0]*x[1]^2*D[2,1]", "s[1,0]*x[1]*D[1,2]", "D[1,-1]*s[0,2]*x[2]*x[1]",
                           "bracket(D[2,1]*x[2], x[2]^2, 1)"}) {
    const OperatorExpr e = parse_operator(text, N2);
    EXPECT_EQ(eval(to_terms(e, 2), N2), eval(e, N2)) << text;
  }
}

TEST(TermForm, AdMatchesBracket) {
  random::Rng rng(2);
  for (int i = 0; i < 40; ++i) {
    TermSum s(3);
    for (int t = 0; t < 3; ++t) {
      TermKey k;
      for (std::size_t v = 0; v < 3; ++v) {
        k.f[v] = random::uniform(rng, 0, 2);
        k.sigma[v] = random::uniform(rng, -2, 2);
      }
      const int len = random::uniform(rng, 0, 3);
      for (int r = 0; r < len; ++r) {
        k.word.push_back({static_cast<std::size_t>(random::uniform(rng, 0, 2)), random::uniform(rng, -2, 2)});
      }
      s.add(k, random::small_scalar(rng));
    }
    for (std::size_t j = 0; j < 3; ++j) {
      ASSERT_EQ(eval(ad_x(s, j), N3), bracket(eval(s, N3), G(gen::x_i(j), N3)));
    }
  }
}

TEST(IntegrateNd, Examples) {
  {
    const std::vector<TermSum> fam{T("s[0,0]", N2), T("0", N2)};
    const TermSum q2 = integrate_nd(fam, N2);
    EXPECT_EQ(eval(q2, N2), G(gen::dbeta_i(0, 0), N2));
    EXPECT_TRUE(verify_integral_nd(fam, q2, N2));
  }
  {
    const std::vector<TermSum> fam{T("x[2]*s[0,0]", N2), T("x[1]*s[0,0]", N2)};
    const TermSum q2 = integrate_nd(fam, N2);
    EXPECT_TRUE(verify_integral_nd(fam, q2, N2));
  }
  EXPECT_THROW(integrate_nd({T("D[2,0]", N2), T("0", N2)}, N2), CompatibilityViolation);
  EXPECT_THROW(integrate_nd({T("1", N2)}, N2), DomainMismatch);
}

TEST(IntegrateNd, ExactFamiliesFromPotentials) {
  // F_i = [G, x_i] for random term sums G is always compatible.
  for (std::size_t n : {2u, 3u}) {
    const RingTag tag = RingTag::poly_n(n);
    random::Rng rng(100 + n);
    for (int i = 0; i < 15; ++i) {
      TermSum g(n);
      for (int t = 0; t < 3; ++t) {
        TermKey k;
        for (std::size_t v = 0; v < n; ++v) {
          k.f[v] = random::uniform(rng, 0, 2);
          k.sigma[v] = random::uniform(rng, -1, 1);
        }
        const int len = random::uniform(rng, 0, 3);
        for (int r = 0; r < len; ++r) {
          k.word.push_back({static_cast<std::size_t>(random::uniform(rng, 0, static_cast<int>(n) - 1)),
                            random::uniform(rng, -2, 2)});
        }
        g.add(k, random::small_scalar(rng));
      }
      std::vector<TermSum> fam;
      for (std::size_t j = 0; j < n; ++j) fam.push_back(ad_x(g, j));
      const TermSum qn = integrate_nd(fam, tag);
      ASSERT_TRUE(verify_integral_nd(fam, qn, tag)) << "n=" << n << " case " << i;
    }
  }
}
