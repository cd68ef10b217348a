#ifndef QDOPS_SUITES_HPP
#define QDOPS_SUITES_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qdops/integrate.hpp"
#include "qdops/random.hpp"
#include "qdops/simplicity.hpp"
#include "qdops/uq.hpp"

namespace qdops {

/// Knobs shared by the verification suites. Unset values fall back to the
/// defaults of each suite.
struct SuiteParams {
  std::optional<int> max_degree;
  std::optional<int> cases;
  std::uint64_t seed = 1;

  int degree_or(int d) const { return max_degree.value_or(d); }
  int cases_or(int c) const { return cases.value_or(c); }
};

namespace suites {

namespace detail {

inline const RingTag& X() {
  static const RingTag tag = RingTag::poly_x();
  return tag;
}
inline const RingTag& Y() {
  static const RingTag tag = RingTag::poly_y();
  return tag;
}
inline GradedOperator G(const Generator& g, const RingTag& tag = X()) { return generator(g, tag); }
inline GradedOperator D(int a) { return G(gen::dbeta(a)); }
inline GradedOperator S(int a) { return G(gen::sigma(a)); }
inline GradedOperator x() { return G(gen::x()); }
inline GradedOperator one() { return GradedOperator::identity(X()); }
inline Scalar q() { return Scalar::q(); }

/// Runs `check` for every case and records one aggregated result.
inline void each(Report& r, const std::string& name, long cases, const std::function<bool(long)>& check) {
  long failures = 0;
  long first = -1;
  for (long i = 0; i < cases; ++i) {
    if (!check(i)) {
      if (first < 0) first = i;
      ++failures;
    }
  }
  r.add(name, failures == 0, cases,
        std::to_string(failures) + " failing case(s), first at index " + std::to_string(first));
}

inline std::vector<UqExpr> uq_generators() { return {uq::E(), uq::F(), uq::K(), uq::Kinv()}; }

inline std::vector<std::pair<std::string, std::pair<UqExpr, UqExpr>>> defining_relations() {
  using namespace uq;
  const Scalar qq = q() - q().inverse();
  return {
      {"K*Kinv = 1", {K() * Kinv(), UqExpr::one()}},
      {"Kinv*K = 1", {Kinv() * K(), UqExpr::one()}},
      {"K*E*Kinv = q^2*E", {K() * E() * Kinv(), UqExpr::scale(q() * q(), E())}},
      {"K*F*Kinv = q^-2*F", {K() * F() * Kinv(), UqExpr::scale(q().pow(-2), F())}},
      {"E*F-F*E = (K-Kinv)/(q-q^-1)", {E() * F() - F() * E(), UqExpr::scale(qq.inverse(), K() - Kinv())}},
  };
}

/// Random product of generators of U_q with 1..max_len factors.
inline UqExpr random_uq_word(random::Rng& rng, int max_len) {
  const auto gens = uq_generators();
  std::vector<UqExpr> factors;
  const int n = random::uniform(rng, 1, max_len);
  for (int i = 0; i < n; ++i) factors.push_back(gens[static_cast<std::size_t>(random::uniform(rng, 0, 3))]);
  return UqExpr::product(std::move(factors));
}

inline std::vector<std::vector<int>> all_words(int length, int lo, int hi) {
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

/// Random term sum on n variables: three terms with small exponents.
inline TermSum random_term_sum(random::Rng& rng, std::size_t n) {
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
  return g;
}

}  // namespace detail

/// Expressions of d^{beta^a} through d^beta and sigma, the classical
/// derivative, and d^{beta^a} = sigma_a d^{beta^-a}.
inline Report note_identities(const SuiteParams& p) {
  using namespace detail;
  Report r{"note-identities", {}};
  const int amax = p.degree_or(5);
  bool item1 = true, item3 = true, swapped3 = true, item4 = true;
  for (int a = 1; a <= amax; ++a) {
    GradedOperator sum(X()), sum_neg(X());
    for (int k = 0; k < a; ++k) {
      sum += S(k);
      sum_neg += S(-k);
    }
    item1 = item1 && D(a) == (D(1) * sum) * ((1 - q()) / (1 - q().pow(a)));
    item3 = item3 && D(-a) == (D(-1) * sum_neg) * ((1 - q().inverse()) / (1 - q().pow(-a)));
    swapped3 = swapped3 && (D(-1) * sum_neg) * ((1 - q()) / (1 - q().pow(-a))) == D(-a) * -q();
  }
  r.add("D[a] = ((1-q)/(1-q^a))*D[1]*(1+s[1]+...+s[a-1]), a = 1.." + std::to_string(amax), item1, amax);
  bool item2 = true;
  for (int b = 0; b <= 2 * amax; ++b) {
    const RingElement xb = RingElement::monomial(unit_exponents(0, b), Scalar(1L), X());
    const RingElement expected = b == 0 ? RingElement(X())
                                        : RingElement::monomial(unit_exponents(0, b - 1), Scalar(static_cast<long>(b)), X());
    item2 = item2 && apply(D(0), xb) == expected;
  }
  r.add("D[0](x^b) = b*x^(b-1)", item2, 2L * amax + 1);
  r.add("D[-a] = ((1-q^-1)/(1-q^-a))*D[-1]*(1+s[-1]+...+s[1-a])", item3, amax);
  r.add("the prefactor (1-q)/(1-q^-a) gives -q*D[-a] instead", swapped3, amax);
  for (int a = -amax; a <= amax; ++a) item4 = item4 && D(a) == S(a) * D(-a);
  r.add("D[a] = s[a]*D[-a]", item4, 2L * amax + 1);
  return r;
}

/// The defining relations of D_q and the degree-0 completeness probe.
inline Report intrinsic_relations(const SuiteParams& p) {
  using namespace detail;
  Report r{"intrinsic-relations", {}};
  bool commutation = true, exchange = true;
  for (int a = -1; a <= 1; ++a) {
    commutation = commutation && D(a) * x() - x() * D(a) * q().pow(a) == one();
    for (int b = -1; b <= 1; ++b) exchange = exchange && D(a) * x() * D(b) == D(b) * x() * D(a);
  }
  r.add("D[a]*x - q^a*x*D[a] = 1, a in {-1,0,1}", commutation, 3);
  bool sigma = true;
  for (int a = -3; a <= 3; ++a) sigma = sigma && bracket(D(a), x()) == S(a);
  r.add("bracket(D[a], x) = s[a], a in -3..3", sigma, 7);
  r.add("D[a]*x*D[b] = D[b]*x*D[a], a,b in {-1,0,1}", exchange, 9);
  r.add("D[-1] - q*D[1] = (1-q)*D[-1]*x*D[1]", D(-1) - D(1) * q() == D(-1) * x() * D(1) * (1 - q()));

  random::Rng rng(p.seed);
  each(r, "shape_normalize + decompose_degree0 = direct decomposition", p.cases_or(500), [&](long) {
    const OperatorExpr w = random::random_degree0_word(rng);
    const GradedOperator direct = eval(w, X());
    const OperatorExpr via_shape = decompose_degree0(eval(shape_normalize(w)));
    return to_string(via_shape) == to_string(decompose_degree0(direct)) && eval(via_shape, X()) == direct;
  });
  return r;
}

/// Degree-0 operators commute and decompose into k[sigma, sigma^-1, tau].
inline Report d0_commutative(const SuiteParams& p) {
  using namespace detail;
  Report r{"d0-commutative", {}};
  random::Rng rng(p.seed);
  const long n = p.cases_or(200);
  each(r, "random degree-0 words commute", n, [&](long) {
    const GradedOperator a = eval(random::random_degree0_word(rng), X());
    const GradedOperator b = eval(random::random_degree0_word(rng), X());
    return a * b == b * a;
  });
  each(r, "eval(decompose_degree0(phi)) = phi", n, [&](long) {
    const GradedOperator a = eval(random::random_degree0_word(rng), X());
    return eval(decompose_degree0(a), X()) == a;
  });
  r.add("s[1]*tau = tau*s[1]", S(1) * G(gen::tau()) == G(gen::tau()) * S(1));
  return r;
}

/// D_q has no zero divisors, sampled.
inline Report domain_sample(const SuiteParams& p) {
  using namespace detail;
  Report r{"domain-sample", {}};
  random::Rng rng(p.seed);
  each(r, "nonzero * nonzero != 0", p.cases_or(200), [&](long) {
    GradedOperator f(X()), g(X());
    while (f.is_zero()) f = eval(random::random_word(rng, 4), X()) + eval(random::random_word(rng, 3), X()) * random::small_scalar(rng);
    while (g.is_zero()) g = eval(random::random_word(rng, 4), X()) + eval(random::random_word(rng, 3), X()) * random::small_scalar(rng);
    return !(f * g).is_zero();
  });
  return r;
}

/// The q-centre: sigma_a x^r twisted-commutes with x, and an operator
/// commuting with x is a multiplication operator.
inline Report qcenter(const SuiteParams& p) {
  using namespace detail;
  Report r{"qcenter", {}};
  const int rmax = p.degree_or(3);
  bool central = true;
  for (int a = -3; a <= 3; ++a) {
    for (int k = 0; k <= rmax; ++k) {
      central = central && twisted_bracket(S(a) * x().pow(static_cast<unsigned>(k)), x(), a).is_zero();
    }
  }
  r.add("bracket(s[a]*x^r, x, a) = 0", central, 7L * (rmax + 1));
  random::Rng rng(p.seed);
  each(r, "s~_a(phi)*s[a] = s[a]*phi", p.cases_or(100), [&](long) {
    const GradedOperator phi = eval(random::random_word(rng, 4), X());
    const int a = random::uniform(rng, -2, 2);
    GradedOperator twisted(X());
    for (const auto& [e, s] : phi.parts()) twisted.add_part(e, s * Scalar::q(a * e[0]));
    return twisted * S(a) == S(a) * phi;
  });
  each(r, "bracket(phi, x) = 0 iff phi is in k[x]", p.cases_or(100), [&](long i) {
    GradedOperator phi = eval(random::random_word(rng, 3), X());
    if (i % 3 == 0) {
      phi = GradedOperator(X());
      for (int k = 0; k <= rmax; ++k) phi += x().pow(static_cast<unsigned>(k)) * random::small_scalar(rng);
    }
    bool multiplication = true;
    for (const auto& [e, s] : phi.parts()) multiplication = multiplication && s.constant().has_value();
    return bracket(phi, x()).is_zero() == multiplication;
  });
  return r;
}

/// Identities read off the relations: the (-1)-twisted commutator of d and
/// d^beta, tau shifts, and the multi-index formula.
inline Report immediate_formulae(const SuiteParams& p) {
  using namespace detail;
  Report r{"immediate-formulae", {}};
  const GradedOperator tau = G(gen::tau());
  const GradedOperator br = twisted_bracket(D(0), D(1), -1);
  r.add("x*bracket(D[0],D[1],-1) = D[0]-D[1]", x() * br == D(0) - D(1));
  r.add("bracket(D[0],D[1],-1)*x = D[0]-q*D[1]", br * x() == D(0) - D(1) * q());
  const GradedOperator plus = twisted_bracket(D(0), D(1), 1);
  r.add("with the +1 twist both formulae fail", x() * plus != D(0) - D(1) && plus * x() != D(0) - D(1) * q());
  bool shift = true;
  for (int k = -2; k <= 2; ++k) {
    for (int a = -2; a <= 2; ++a) {
      shift = shift && (tau + one() * k) * D(a) == D(a) * (tau + one() * (k - 1));
    }
  }
  r.add("(tau+k)*D[a] = D[a]*(tau+k-1), k,a in -2..2", shift, 25);
  r.add("(tau+1)*D[1] = ((q*s[1]-1)/(q-1))*D[0]",
        (tau + one()) * D(1) == (S(1) * q() - one()) * (q() - 1).inverse() * D(0));
  const int lmax = p.degree_or(3);
  bool multi = true;
  long count = 0;
  for (int len = 1; len <= lmax; ++len) {
    for (int mask = 0; mask < (1 << len); ++mask) {
      GradedOperator word = one(), lhs = one(), rhs = one();
      for (int j = 1; j <= len; ++j) {
        const bool beta = (mask >> (j - 1)) & 1;
        word = word * D(beta ? 1 : 0);
        if (beta) {
          lhs = lhs * (tau + one() * j);
          rhs = rhs * ((S(1) * q().pow(j) - one()) * (q() - 1).inverse());
        }
      }
      multi = multi && lhs * word == rhs * D(0).pow(static_cast<unsigned>(len));
      ++count;
    }
  }
  r.add("multi-index formula, |I| <= " + std::to_string(lmax), multi, count);
  return r;
}

/// Several variables: the commutation notes and integrate_nd.
inline Report nvariables(const SuiteParams& p) {
  using namespace detail;
  Report r{"nvariables", {}};
  for (std::size_t n : {2U, 3U}) {
    const RingTag N = RingTag::poly_n(n);
    bool with_x = true, with_d = true, with_s = true;
    long count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        for (int k = -2; k <= 2; ++k) {
          const GradedOperator di = G(gen::dbeta_i(i, k), N);
          with_x = with_x && bracket(di, G(gen::x_i(j), N)).is_zero();
          for (int m = -2; m <= 2; ++m) with_d = with_d && bracket(di, G(gen::dbeta_i(j, m), N)).is_zero();
          for (int a = -2; a <= 2; ++a) {
            Exponents e = zero_exponents();
            for (std::size_t v = 0; v < n; ++v) e[v] = v == i ? 0 : a + static_cast<int>(v);
            with_s = with_s && bracket(di, G(gen::sigma_vec(e), N)).is_zero();
          }
          ++count;
        }
      }
    }
    const std::string tag = " (n=" + std::to_string(n) + ")";
    r.add("bracket(D[i,k], x[j]) = 0, i != j" + tag, with_x, count);
    r.add("bracket(D[i,k], D[j,m]) = 0, i != j" + tag, with_d, count * 5);
    r.add("bracket(D[i,k], s[a]) = 0 when a_i = 0" + tag, with_s, count * 5);
  }

  const RingTag N2 = RingTag::poly_n(2);
  auto T = [&](const std::string& text) { return to_terms(parse_operator(text, N2), 2); };
  {
    const std::vector<TermSum> fam{T("s[0,0]"), T("0")};
    const TermSum q2 = integrate_nd(fam, N2);
    r.add("integrate_nd(1, 0) = D[1,0]", eval(q2, N2) == G(gen::dbeta_i(0, 0), N2) && verify_integral_nd(fam, q2, N2));
  }
  {
    const std::vector<TermSum> fam{T("x[2]*s[0,0]"), T("x[1]*s[0,0]")};
    r.add("integrate_nd(x[2], x[1]) verifies", verify_integral_nd(fam, integrate_nd(fam, N2), N2));
  }
  bool threw = false;
  try {
    integrate_nd({T("D[2,0]"), T("0")}, N2);
  } catch (const CompatibilityViolation&) {
    threw = true;
  }
  r.add("incompatible family (D[2,0], 0) is rejected", threw);

  random::Rng rng(p.seed);
  for (std::size_t n : {2U, 3U}) {
    const RingTag N = RingTag::poly_n(n);
    each(r, "[integrate_nd(F), x[i]] = F_i for F_i = [G, x[i]] (n=" + std::to_string(n) + ")", p.cases_or(25),
         [&](long) {
           const TermSum g = random_term_sum(rng, n);
           std::vector<TermSum> fam;
           for (std::size_t j = 0; j < n; ++j) fam.push_back(ad_x(g, j));
           return verify_integral_nd(fam, integrate_nd(fam, N), N);
         });
  }
  return r;
}

/// [Q, x] = P s[b] for every short word.
inline Report integrate_exhaustive(const SuiteParams& p) {
  Report r{"integrate-exhaustive", {}};
  const int lmax = p.degree_or(3);
  long count = 0, failures = 0;
  for (int n = 0; n <= lmax; ++n) {
    for (const auto& w : detail::all_words(n, -2, 2)) {
      for (int b = -3; b <= 3; ++b) {
        const IntegrationProblem prob{w, b};
        ++count;
        if (!verify_integral(prob, integrate(prob))) ++failures;
      }
    }
  }
  r.add("all words of length <= " + std::to_string(lmax) + ", entries -2..2, b in -3..3", failures == 0, count,
        std::to_string(failures) + " failing problem(s)");
  random::Rng rng(p.seed);
  detail::each(r, "random words of length " + std::to_string(lmax + 1), p.cases_or(100), [&](long) {
    std::vector<int> w(static_cast<std::size_t>(lmax + 1));
    for (auto& a : w) a = random::uniform(rng, -2, 2);
    const IntegrationProblem prob{w, random::uniform(rng, -3, 3)};
    return verify_integral(prob, integrate(prob));
  });
  bool rotation = true;
  for (int n = 1; n <= lmax; ++n) {
    for (const auto& w : detail::all_words(n, -2, 2)) {
      GradedOperator lhs(detail::X());
      int prefix = 0;
      for (int i = 0; i < n; ++i) {
        GradedOperator t = detail::one();
        for (int k = 0; k < n - 1; ++k) t = detail::D(w[static_cast<std::size_t>((i + 1 + k) % n)]) * t;
        const int k = -n * w[static_cast<std::size_t>(i)];
        lhs += twisted_bracket(t, detail::D(w[static_cast<std::size_t>(i)]), k) * Scalar::q(-prefix);
        prefix += k;
      }
      rotation = rotation && lhs == integrand({w, 0}) * (Scalar(1L) - Scalar::q(-prefix));
    }
  }
  r.add("telescoping over rotations = (1 - q^-(k_1+...+k_n))*P", rotation);
  return r;
}

/// Witnesses for random shape forms replay to the identity.
inline Report simplicity_random(const SuiteParams& p) {
  Report r{"simplicity-random", {}};
  random::Rng rng(p.seed);
  long replays = 0, measured = 0;
  const long n = p.cases_or(200);
  for (long i = 0; i < n; ++i) {
    const ShapeForm f = random::random_shape_form(rng);
    const SimplicityWitness w = simplicity_witness(f);
    replays += replay(w, eval(f)) == GradedOperator::identity(RingTag::poly_x());
    measured += measure_decreases(w);
  }
  r.add("replay reaches the identity", replays == n, n, std::to_string(n - replays) + " failing");
  r.add("measure (d, #top, x-degree) strictly decreases", measured == n, n, std::to_string(n - measured) + " failing");
  return r;
}

inline Report gamma_generators(const SuiteParams&) { return gamma_generators_check(); }

/// The defining relations of U_q under alpha, gamma and on the plane.
inline Report uq_relations(const SuiteParams& p) {
  using namespace detail;
  Report r{"uq-relations", {}};
  const int bound = p.degree_or(6);
  for (const auto& [name, rel] : defining_relations()) {
    const auto& [lhs, rhs] = rel;
    r.add("alpha: " + name, alpha(lhs) == alpha(rhs));
    r.add("gamma: " + name, gamma(lhs) == gamma(rhs));
    bool plane = true;
    for (int a = 0; a <= bound; ++a) {
      for (int b = -bound; b <= bound; ++b) {
        const PlaneElement m = PlaneElement::monomial(a, b);
        plane = plane && act_on_plane(lhs, m) == act_on_plane(rhs, m);
      }
    }
    r.add("plane u^a v^b, 0 <= a <= " + std::to_string(bound) + ", |b| <= " + std::to_string(bound) + ": " + name,
          plane, (bound + 1L) * (2L * bound + 1));
  }
  const PlaneElement u = PlaneElement::u(), v = PlaneElement::v();
  for (UqGen g : {UqGen::E, UqGen::F, UqGen::K, UqGen::Kinv}) {
    const std::string name = to_string(UqLeaf{g});
    r.add(name + "(uv - q*vu) = 0 via the coproduct",
          (coproduct_action(g, u, v) - coproduct_action(g, v, u) * q()).is_zero());
  }
  return r;
}

/// On powers of x = u v^-1, the plane action agrees with alpha.
inline Report uq_plane_consistency(const SuiteParams& p) {
  using namespace detail;
  Report r{"uq-plane-consistency", {}};
  const int lmax = p.degree_or(4);
  std::vector<UqExpr> words{UqExpr::one()};
  std::vector<std::vector<UqExpr>> frontier{{}};
  for (int len = 1; len <= lmax; ++len) {
    std::vector<std::vector<UqExpr>> next;
    for (const auto& w : frontier) {
      for (const auto& g : uq_generators()) {
        next.push_back(w);
        next.back().push_back(g);
        words.push_back(UqExpr::product(next.back()));
      }
    }
    frontier = std::move(next);
  }
  bool in_x = true, agrees = true;
  for (const auto& w : words) {
    const GradedOperator a = alpha(w);
    for (int m = 0; m <= 6; ++m) {
      const auto image = plane_to_x(act_on_plane(w, x_power_in_plane(m)));
      in_x = in_x && image.has_value();
      agrees = agrees && image && *image == apply(a, RingElement::monomial(unit_exponents(0, m), Scalar(1L), X()));
    }
  }
  r.add("w(x^m) stays in k[x], words of length <= " + std::to_string(lmax) + ", m <= 6", in_x,
        static_cast<long>(words.size()) * 7);
  r.add("w(x^m) = alpha(w)(x^m)", agrees, static_cast<long>(words.size()) * 7);
  return r;
}

/// alpha(U_q) consists of m-free operators while d is not m-free, so
/// (d, -y^2 d_y) is in Gamma_q but not in eta(U_q).
inline Report nonsurjectivity(const SuiteParams& p) {
  using namespace detail;
  Report r{"nonsurjectivity", {}};
  random::Rng rng(p.seed);
  each(r, "alpha(random word) is m-free", p.cases_or(100),
       [&](long) { return is_m_free(alpha(random_uq_word(rng, p.degree_or(6)))); });
  r.add("D[0] is not m-free", !is_m_free(D(0)));
  const GammaPair pair{D(0), G(gen::y(), Y()).pow(2) * G(gen::dbeta(0), Y()) * Scalar(-1L)};
  r.add("(D[0], -y^2*D_y[0]) lies in Gamma_q", gamma_q_member(pair));
  r.add("so (D[0], -y^2*D_y[0]) has no eta-preimage", gamma_q_member(pair) && !is_m_free(pair.dx));
  return r;
}

/// Reduction modulo (q-1)^n.
inline Report truncation(const SuiteParams& p) {
  using namespace detail;
  Report r{"truncation", {}};
  const TruncatedScalar one1({1}, 1);
  const TruncatedOperator classical_d = truncated_monomial(-1, 1, one1);
  r.add("D[1] truncates to D[0] at n = 1", truncate_operator(D(1), 1) == classical_d);
  r.add("D[-1] truncates to D[0] at n = 1", truncate_operator(D(-1), 1) == classical_d);
  r.add("s[1] truncates to 1 + m*t at n = 2",
        truncate_operator(S(1), 2) == truncated_monomial(0, 0, TruncatedScalar({1, 0}, 2)) +
                                          truncated_monomial(0, 1, TruncatedScalar({0, 1}, 2)));
  random::Rng rng(p.seed);
  const long n = p.cases_or(100);
  each(r, "truncate(f*g) = truncate(f)*truncate(g), n = 1..4", n, [&](long) {
    const GradedOperator f = eval(random::random_word(rng, 4), X());
    const GradedOperator g = eval(random::random_word(rng, 4), X());
    for (std::size_t level = 1; level <= 4; ++level) {
      if (truncate_operator(f * g, level) != compose(truncate_operator(f, level), truncate_operator(g, level))) {
        return false;
      }
    }
    return true;
  });
  each(r, "bracket nilpotence order <= m-degree + 1, n = 1..4", n, [&](long) {
    const GradedOperator f = eval(random::random_word(rng, 4), X());
    for (std::size_t level = 1; level <= 4; ++level) {
      const TruncatedOperator t = truncate_operator(f, level);
      if (bracket_nilpotence_order(t) > t.m_degree() + 1) return false;
      if (truncate_operator(bracket(f, x()), level) != bracket_with_x(t)) return false;
    }
    return true;
  });
  return r;
}

/// eta_1 hits the two generators of Gamma_{q,1}; divided powers are integral.
inline Report eta1_surjectivity(const SuiteParams& p) {
  using namespace detail;
  Report r{"eta1-surjectivity", {}};
  const GradedOperator y2dy = G(gen::y(), Y()).pow(2) * G(gen::dbeta(0), Y()) * Scalar(-1L);
  const GradedOperator x2d = x().pow(2) * D(0) * Scalar(-1L);
  const auto [fx, fy] = eta_truncated(uq::F(), 1);
  r.add("eta_1(F) = (D[0], -y^2*D_y[0])", fx == truncate_operator(D(0), 1) && fy == truncate_operator(y2dy, 1));
  const auto [ex, ey] = eta_truncated(uq::E(), 1);
  r.add("eta_1(E) = (-x^2*D[0], D_y[0])",
        ex == truncate_operator(x2d, 1) && ey == truncate_operator(G(gen::dbeta(0), Y()), 1));
  const auto [kx, ky] = eta_truncated(uq::K(), 1);
  r.add("eta_1(K) = (1, 1)", kx == truncate_operator(one(), 1) &&
                                 ky == truncate_operator(GradedOperator::identity(Y()), 1));
  const int mmax = p.degree_or(5);
  bool integral = true;
  for (int m = 0; m <= mmax; ++m) {
    for (const UqExpr& e : {uq::Ediv(m), uq::Fdiv(m)}) {
      integral = integral && operator_valuation(alpha(e)) >= 0 && operator_valuation(gamma(e)) >= 0;
    }
  }
  r.add("alpha, gamma of Ediv[m], Fdiv[m] integral at q = 1, m <= " + std::to_string(mmax), integral,
        2L * (mmax + 1));
  return r;
}

}  // namespace suites

struct SuiteEntry {
  std::string name;
  std::function<Report(const SuiteParams&)> run;
};

inline const std::vector<SuiteEntry>& suite_registry() {
  static const std::vector<SuiteEntry> registry{
      {"note-identities", suites::note_identities},
      {"intrinsic-relations", suites::intrinsic_relations},
      {"d0-commutative", suites::d0_commutative},
      {"domain-sample", suites::domain_sample},
      {"qcenter", suites::qcenter},
      {"immediate-formulae", suites::immediate_formulae},
      {"nvariables", suites::nvariables},
      {"integrate-exhaustive", suites::integrate_exhaustive},
      {"simplicity-random", suites::simplicity_random},
      {"gamma-generators", suites::gamma_generators},
      {"uq-relations", suites::uq_relations},
      {"uq-plane-consistency", suites::uq_plane_consistency},
      {"nonsurjectivity", suites::nonsurjectivity},
      {"truncation", suites::truncation},
      {"eta1-surjectivity", suites::eta1_surjectivity},
  };
  return registry;
}

inline Report verify_suite(const std::string& name, const SuiteParams& params = {}) {
  for (const auto& entry : suite_registry()) {
    if (entry.name == name) {
      Report r = entry.run(params);
      r.title = name;
      return r;
    }
  }
  throw UnknownSuite("unknown suite '" + name + "'");
}

}  // namespace qdops

#endif  // QDOPS_SUITES_HPP
