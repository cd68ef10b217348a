#ifndef QDOPS_INTEGRATE_HPP
#define QDOPS_INTEGRATE_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "qdops/expr.hpp"

namespace qdops {

/// Bracket-antiderivative problem: find Q with [Q, x] = P sigma_b where
/// P = d^{beta^{a_n}} ... d^{beta^{a_1}} for word = (a_1, ..., a_n).
struct IntegrationProblem {
  std::vector<int> word;
  int b = 0;
};

/// The operator P sigma_b of a problem, on k[x].
inline GradedOperator integrand(const IntegrationProblem& p, const RingTag& tag = RingTag::poly_x()) {
  GradedOperator out = generator(gen::sigma(p.b), tag);
  for (int a : p.word) out = compose(generator(gen::dbeta(a), tag), out);
  return out;
}

namespace detail {

inline OperatorExpr integrate_rec(const std::vector<int>& word, int b) {
  const int n = static_cast<int>(word.size());
  if (n == 0) return ops::d(b);
  const int total = std::accumulate(word.begin(), word.end(), 0);
  const bool all_zero = std::all_of(word.begin(), word.end(), [](int a) { return a == 0; });

  if (b == -total) {
    if (all_zero) {
      // P = d^n, so Q = d^{n+1}/(n+1).
      return OperatorExpr::scale(Scalar::rational(1, n + 1), OperatorExpr::power(ops::d(0), n + 1));
    }
    // d^{beta^a} = sigma_a d^{beta^-a}, then move sigma_a to the right end
    // past j factors of degree -1: P sigma_b = q^{-j a_j} P' sigma_{b+a_j}.
    std::size_t j = word.size() - 1;
    if (word[j] == 0) {
      j = 0;
      while (word[j] == 0) ++j;
    }
    std::vector<int> flipped = word;
    flipped[j] = -word[j];
    const int position = static_cast<int>(j) + 1;
    return OperatorExpr::scale(Scalar::q(-position * word[j]),
                               integrate_rec(flipped, b + word[j]));
  }

  // Telescoping over the cyclic rotations t_i of P, with k_i = -n a_i:
  //   Q~ = sum_i q^{(i-1)b - (k_1+...+k_{i-1})} [T_i, d_i]_{k_i},  Q = Q~ / c.
  // The factor q^{(i-1)b} compensates for sigma_b d_i = q^{-b} d_i sigma_b.
  std::vector<std::pair<Scalar, OperatorExpr>> terms;
  int prefix = 0;
  for (int i = 0; i < n; ++i) {
    std::vector<int> rotation;
    for (int r = i + 1; r < n; ++r) rotation.push_back(word[static_cast<std::size_t>(r)]);
    for (int r = 0; r < i; ++r) rotation.push_back(word[static_cast<std::size_t>(r)]);
    const OperatorExpr t = integrate_rec(rotation, b);
    const int a = word[static_cast<std::size_t>(i)];
    const int k = -n * a;
    const Scalar weight = Scalar::q(-prefix);
    const OperatorExpr d = ops::d(a);
    // [T, d]_k = T d - beta(k, -1) d T
    terms.emplace_back(weight, t * d);
    terms.emplace_back(-weight * Scalar::q(-k), d * t);
    prefix += k - b;
  }
  const Scalar c = Scalar::q(-b) * (Scalar(1L) - Scalar::q(n * (b + total)));
  return OperatorExpr::scale(c.inverse(), OperatorExpr::sum(std::move(terms)));
}

}  // namespace detail

/// Q with [Q, x] = P sigma_b, built from the d^{beta^a} only.
inline OperatorExpr integrate(const IntegrationProblem& p) {
  return detail::integrate_rec(p.word, p.b);
}

/// Checks [eval(Q), x] == P sigma_b exactly.
inline bool verify_integral(const IntegrationProblem& p, const OperatorExpr& q_expr) {
  const RingTag tag = RingTag::poly_x();
  return bracket(eval(q_expr, tag), generator(gen::x(), tag)) == integrand(p, tag);
}

// ---------------------------------------------------------------------------
// Several variables

/// One letter of a derivative word: d_{coord}^{beta^k}, with symbol
/// (u^k - 1)/(q - 1), or the classical d_coord when k = 0.
struct Letter {
  std::size_t coord = 0;
  int k = 0;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// f * P * sigma_a with f a monomial in x_1..x_n and P a derivative word
/// whose letters are stably sorted by coordinate (letters in different
/// coordinates commute).
struct TermKey {
  Exponents f{};
  std::vector<Letter> word;
  Exponents sigma{};
  friend auto operator<=>(const TermKey&, const TermKey&) = default;
};

class TermSum {
 public:
  using Terms = std::map<TermKey, Scalar>;

  explicit TermSum(std::size_t nvars = 1) : nvars_(nvars) {}

  static TermSum term(std::size_t nvars, TermKey key, const Scalar& c = Scalar(1L)) {
    TermSum s(nvars);
    s.add(std::move(key), c);
    return s;
  }

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(TermKey key, const Scalar& c) {
    if (c.is_zero()) return;
    std::stable_sort(key.word.begin(), key.word.end(),
                     [](const Letter& x, const Letter& y) { return x.coord < y.coord; });
    auto [it, inserted] = terms_.emplace(std::move(key), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  TermSum& operator+=(const TermSum& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }
  friend TermSum operator+(TermSum a, const TermSum& b) { return a += b; }
  friend TermSum operator*(TermSum a, const Scalar& c) {
    TermSum out(a.nvars_);
    for (const auto& [k, v] : a.terms_) out.add(k, v * c);
    return out;
  }
  friend TermSum operator-(const TermSum& a, const TermSum& b) { return a + b * Scalar(-1L); }

 private:
  std::size_t nvars_;
  Terms terms_;
};

namespace detail {

/// g_k = (q_i^k - 1)/(q_i - 1), with g_0 = 1.
inline Scalar letter_scale(std::size_t coord, int k) {
  if (k == 0) return Scalar(1L);
  return (Scalar::q(k, coord) - 1) / (Scalar::q(1, coord) - 1);
}

/// The letter's action on x_coord^e: coefficient of x_coord^{e-1}.
inline Scalar letter_on_power(const Letter& l, int e) {
  if (l.k == 0) return Scalar(static_cast<long>(e));
  return (Scalar::q(l.k * e, l.coord) - 1) / (Scalar::q(1, l.coord) - 1);
}

inline Exponents word_degree(const std::vector<Letter>& word) {
  Exponents d = zero_exponents();
  for (const auto& l : word) d[l.coord] -= 1;
  return d;
}

}  // namespace detail

/// Normal-ordered product of term sums.
inline TermSum operator*(const TermSum& a, const TermSum& b) {
  TermSum out(a.nvars());
  for (const auto& [k1, c1] : a.terms()) {
    for (const auto& [k2, c2] : b.terms()) {
      // sigma_a g P' = beta(a, deg g + deg P') g P' sigma_a
      const Scalar twist = bicharacter(k1.sigma, k2.f + detail::word_degree(k2.word));
      // Push the letters of P past the monomial g, rightmost letter first.
      std::vector<std::pair<Scalar, std::pair<Exponents, std::vector<Letter>>>> cur{
          {c1 * c2 * twist, {k2.f, {}}}};
      for (auto it = k1.word.rbegin(); it != k1.word.rend(); ++it) {
        decltype(cur) next;
        for (const auto& [c, state] : cur) {
          const auto& [g, suffix] = state;
          const int e = g[it->coord];
          std::vector<Letter> longer{*it};
          longer.insert(longer.end(), suffix.begin(), suffix.end());
          next.push_back({c * Scalar::q(it->k * e, it->coord), {g, longer}});
          if (e > 0) {
            Exponents lower = g;
            lower[it->coord] -= 1;
            next.push_back({c * detail::letter_on_power(*it, e), {lower, suffix}});
          }
        }
        cur = std::move(next);
      }
      for (const auto& [c, state] : cur) {
        TermKey key;
        key.f = k1.f + state.first;
        key.word = state.second;
        key.word.insert(key.word.end(), k2.word.begin(), k2.word.end());
        key.sigma = k1.sigma + k2.sigma;
        out.add(std::move(key), c);
      }
    }
  }
  return out;
}

/// Semantic value on k[x_1..x_n].
inline GradedOperator eval(const TermSum& s, const RingTag& tag) {
  GradedOperator out(tag);
  for (const auto& [k, c] : s.terms()) {
    GradedOperator t = GradedOperator(tag, k.f, Symbol(c));
    for (const auto& l : k.word) t = compose(t, generator(gen::dbeta_i(l.coord, l.k), tag));
    t = compose(t, generator(gen::sigma_vec(k.sigma), tag));
    out += t;
  }
  return out;
}

inline OperatorExpr to_expr(const TermSum& s) {
  std::vector<std::pair<Scalar, OperatorExpr>> terms;
  for (const auto& [k, c] : s.terms()) {
    std::vector<OperatorExpr> factors;
    for (std::size_t v = 0; v < s.nvars(); ++v) {
      if (k.f[v] != 0) factors.push_back(OperatorExpr::power(ops::g(gen::x_i(v)), k.f[v]));
    }
    for (const auto& l : k.word) factors.push_back(ops::g(gen::dbeta_i(l.coord, l.k)));
    if (!qdops::is_zero(k.sigma)) factors.push_back(ops::g(gen::sigma_vec(k.sigma)));
    terms.emplace_back(c, OperatorExpr::product(std::move(factors)));
  }
  return OperatorExpr::sum(std::move(terms));
}

namespace detail {

struct TermAlgebra {
  std::size_t nvars;
  TermSum leaf(const Generator& g) const {
    TermKey key;
    switch (g.kind) {
      case Gen::XI:
        key.f = unit_exponents(g.index);
        break;
      case Gen::DBetaI:
        key.word = {Letter{g.index, g.a}};
        break;
      case Gen::SigmaVec:
        key.sigma = g.vec;
        break;
      default:
        throw UnsupportedGenerator(to_string(g) + " is not an x_i, D[i,k] or s[..] leaf");
    }
    return TermSum::term(nvars, key);
  }
  TermSum constant(const Scalar& c) const { return TermSum::term(nvars, TermKey{}, c); }
  TermSum add(const TermSum& a, const TermSum& b) const { return a + b; }
  TermSum scale(const Scalar& c, const TermSum& a) const { return a * c; }
  TermSum multiply(const TermSum& a, const TermSum& b) const { return a * b; }
  TermSum inverse(const TermSum& a) const {
    if (a.terms().size() == 1) {
      const auto& [k, c] = *a.terms().begin();
      if (qdops::is_zero(k.f) && k.word.empty()) {
        TermKey inv;
        inv.sigma = -k.sigma;
        return TermSum::term(nvars, inv, c.inverse());
      }
    }
    throw UnsupportedGenerator("only sigma terms can be inverted");
  }
  TermSum bracket(const TermSum& a, const TermSum& b, const Exponents& twist) const {
    TermSum out = a * b;
    for (const auto& [k, c] : b.terms()) {
      const TermSum part = TermSum::term(nvars, k, c);
      out = out - (part * a) * bicharacter(twist, k.f + word_degree(k.word));
    }
    return out;
  }
};

}  // namespace detail

/// Term form of an expression over x[i], D[i,k], s[..] and scalars.
inline TermSum to_terms(const OperatorExpr& e, std::size_t nvars) {
  detail::TermAlgebra alg{nvars};
  return fold(e, alg);
}

/// [F, x_j] computed on the term form:
///   [f P s_a, x_j] = (q_j^{a_j} - 1) x_j f P s_a
///                    + q_j^{a_j} sum_p g_{k_p} q_j^{-k_p s_p} f (P without p) s_{a + k_p e_j}
/// where p runs over the letters of coordinate j and s_p counts the
/// coordinate-j letters to the right of p.
inline TermSum ad_x(const TermSum& s, std::size_t j) {
  TermSum out(s.nvars());
  for (const auto& [k, c] : s.terms()) {
    const Scalar qa = Scalar::q(k.sigma[j], j);
    TermKey shifted = k;
    shifted.f[j] += 1;
    out.add(shifted, c * (qa - 1));
    for (std::size_t p = 0; p < k.word.size(); ++p) {
      if (k.word[p].coord != j) continue;
      int after = 0;
      for (std::size_t r = p + 1; r < k.word.size(); ++r) after += k.word[r].coord == j;
      const int kp = k.word[p].k;
      TermKey rest = k;
      rest.word.erase(rest.word.begin() + static_cast<long>(p));
      rest.sigma[j] += kp;
      out.add(rest, c * qa * detail::letter_scale(j, kp) * Scalar::q(-kp * after, j));
    }
  }
  return out;
}

namespace detail {

/// Expands an expression over D[a] leaves into a sum of words (letters
/// left to right).
struct WordAlgebra {
  using Words = std::map<std::vector<int>, Scalar>;
  static void add_to(Words& w, const std::vector<int>& key, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = w.emplace(key, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) w.erase(it);
    }
  }
  Words leaf(const Generator& g) const {
    if (g.kind != Gen::DBeta) throw UnsupportedGenerator("expected D[a] leaves");
    return {{{g.a}, Scalar(1L)}};
  }
  Words constant(const Scalar& c) const {
    Words w;
    add_to(w, {}, c);
    return w;
  }
  Words add(const Words& a, const Words& b) const {
    Words out = a;
    for (const auto& [k, c] : b) add_to(out, k, c);
    return out;
  }
  Words scale(const Scalar& c, const Words& a) const {
    Words out;
    for (const auto& [k, v] : a) add_to(out, k, v * c);
    return out;
  }
  Words multiply(const Words& a, const Words& b) const {
    Words out;
    for (const auto& [k1, c1] : a) {
      for (const auto& [k2, c2] : b) {
        std::vector<int> k = k1;
        k.insert(k.end(), k2.begin(), k2.end());
        add_to(out, k, c1 * c2);
      }
    }
    return out;
  }
  Words inverse(const Words&) const { throw UnsupportedGenerator("words cannot be inverted"); }
  Words bracket(const Words& a, const Words& b, const Exponents& twist) const {
    Words out = multiply(a, b);
    for (const auto& [k, c] : b) {
      const Words part{{k, c}};
      const Scalar beta = Scalar::q(-twist[0] * static_cast<int>(k.size()));
      for (const auto& [k2, c2] : multiply(part, a)) add_to(out, k2, -c2 * beta);
    }
    return out;
  }
};

/// Integral in coordinate i of a single term f P s_a: with P_i the
/// coordinate-i letters and a' = a without its i-th entry,
///   Q = f P_other s_{a'} Q_i,  [Q_i, x_i] = P_i s_{a_i}.
inline TermSum integrate_term(const TermKey& k, const Scalar& c, std::size_t i, std::size_t nvars) {
  std::vector<int> p_i;
  std::vector<Letter> other;
  Scalar scale = c;
  for (const auto& l : k.word) {
    if (l.coord == i) {
      p_i.push_back(l.k);
      scale *= letter_scale(i, l.k);
    } else {
      other.push_back(l);
    }
  }
  std::vector<int> word(p_i.rbegin(), p_i.rend());
  const OperatorExpr q1 = integrate(IntegrationProblem{word, k.sigma[i]});
  WordAlgebra alg;
  TermSum out(nvars);
  for (const auto& [letters, coeff] : fold(q1, alg)) {
    TermKey key;
    key.f = k.f;
    key.sigma = k.sigma;
    key.sigma[i] = 0;
    key.word = other;
    Scalar cc = coeff.renamed(0, i) * scale;
    for (int a : letters) {
      key.word.push_back(Letter{i, a});
      cc /= letter_scale(i, a);
    }
    out.add(std::move(key), cc);
  }
  return out;
}

/// Groups terms by their content outside coordinates [0, done), checks
/// that each group's restriction to those coordinates is a multiplication
/// operator, and replaces it by the monomials read off its symbols.
inline TermSum collapse(const TermSum& s, std::size_t done, const RingTag& tag) {
  if (done == 0) return s;
  std::map<TermKey, TermSum> groups;
  for (const auto& [k, c] : s.terms()) {
    TermKey outer, inner;
    for (std::size_t v = 0; v < kMaxVars; ++v) {
      (v < done ? inner : outer).f[v] = k.f[v];
      (v < done ? inner : outer).sigma[v] = k.sigma[v];
    }
    for (const auto& l : k.word) (l.coord < done ? inner : outer).word.push_back(l);
    auto [it, inserted] = groups.try_emplace(outer, TermSum(s.nvars()));
    it->second.add(inner, c);
  }
  TermSum out(s.nvars());
  for (const auto& [outer, inner] : groups) {
    const GradedOperator op = eval(inner, tag);
    bool multiplication = true;
    for (const auto& [e, sym] : op.parts()) multiplication = multiplication && sym.constant().has_value();
    if (!multiplication) {
      // Keep the syntactic terms; the final check decides.
      for (const auto& [k, c] : inner.terms()) {
        TermKey merged = outer;
        merged.f = merged.f + k.f;
        merged.sigma = merged.sigma + k.sigma;
        merged.word.insert(merged.word.begin(), k.word.begin(), k.word.end());
        out.add(merged, c);
      }
      continue;
    }
    for (const auto& [e, sym] : op.parts()) {
      TermKey merged = outer;
      merged.f = merged.f + e;
      out.add(merged, *sym.constant());
    }
  }
  return out;
}

}  // namespace detail

/// Q with [Q, x_i] = F_i for every i, for a compatible family
/// ([F_i, x_j] = [F_j, x_i]). Throws CompatibilityViolation otherwise.
inline TermSum integrate_nd(const std::vector<TermSum>& family, const RingTag& tag) {
  if (tag.kind != RingKind::PolyN || family.size() != tag.nvars) {
    throw DomainMismatch("integrate_nd needs one operator per variable of a ring n=k");
  }
  const std::size_t n = tag.nvars;
  std::vector<GradedOperator> ops_f;
  for (const auto& f : family) ops_f.push_back(eval(f, tag));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const GradedOperator xi = generator(gen::x_i(i), tag), xj = generator(gen::x_i(j), tag);
      if (bracket(ops_f[i], xj) != bracket(ops_f[j], xi)) {
        throw CompatibilityViolation("[F" + std::to_string(i + 1) + ", x" + std::to_string(j + 1) +
                                     "] != [F" + std::to_string(j + 1) + ", x" +
                                     std::to_string(i + 1) + "]");
      }
    }
  }
  TermSum q(n);
  for (std::size_t i = 0; i < n; ++i) {
    const TermSum residual = detail::collapse(family[i] - ad_x(q, i), i, tag);
    for (const auto& [k, c] : residual.terms()) q += detail::integrate_term(k, c, i, n);
  }
  return q;
}

inline std::vector<TermSum> to_terms(const std::vector<OperatorExpr>& family, std::size_t nvars) {
  std::vector<TermSum> out;
  for (const auto& e : family) out.push_back(to_terms(e, nvars));
  return out;
}

/// Checks [Q, x_i] == F_i for all i on symbols.
inline bool verify_integral_nd(const std::vector<TermSum>& family, const TermSum& q,
                               const RingTag& tag) {
  const GradedOperator qop = eval(q, tag);
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (bracket(qop, generator(gen::x_i(i), tag)) != eval(family[i], tag)) return false;
  }
  return true;
}

}  // namespace qdops

#endif  // QDOPS_INTEGRATE_HPP
