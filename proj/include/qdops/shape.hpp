#ifndef QDOPS_SHAPE_HPP
#define QDOPS_SHAPE_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qdops/expr.hpp"

namespace qdops {

/// Polynomial in x with scalar coefficients, keyed by exponent.
class XPoly {
 public:
  using Terms = std::map<int, Scalar>;

  XPoly() = default;
  static XPoly monomial(int k, const Scalar& c = Scalar(1L)) {
    XPoly p;
    p.add_term(k, c);
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }

  void add_term(int k, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  XPoly& operator+=(const XPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  friend XPoly operator+(XPoly a, const XPoly& b) { return a += b; }
  friend XPoly operator*(XPoly a, const Scalar& c) {
    if (c.is_zero()) return XPoly();
    for (auto& [k, v] : a.terms_) v *= c;
    return a;
  }
  friend XPoly operator*(const XPoly& a, const XPoly& b) {
    XPoly out;
    for (const auto& [k1, c1] : a.terms_) {
      for (const auto& [k2, c2] : b.terms_) out.add_term(k1 + k2, c1 * c2);
    }
    return out;
  }

  /// p(q^c x).
  XPoly dilated(int c) const {
    XPoly out;
    for (const auto& [k, v] : terms_) out.add_term(k, v * Scalar::q(c * k));
    return out;
  }

  /// d^{beta^c} p: x^k -> [k]_{q^c} x^{k-1}.
  XPoly q_derivative(int c) const {
    XPoly out;
    for (const auto& [k, v] : terms_) {
      if (k == 0) continue;
      const Scalar factor = c == 0 ? Scalar(static_cast<long>(k))
                                   : (Scalar::q(c * k) - 1) / (Scalar::q(c) - 1);
      out.add_term(k - 1, v * factor);
    }
    return out;
  }

  friend bool operator==(const XPoly&, const XPoly&) = default;

 private:
  Terms terms_;
};

/// Word over {0, 1}: entry 0 is d, entry 1 is d^beta, leftmost factor first.
using ShapeWord = std::vector<int>;

/// sum over groups (a, I) of sigma^a p(x) d^{beta^I}. Not canonical: the
/// same operator can have several shape forms.
class ShapeForm {
 public:
  using Key = std::pair<int, ShapeWord>;
  using Terms = std::map<Key, XPoly>;

  ShapeForm() = default;

  static ShapeForm term(int a, const XPoly& p, const ShapeWord& word) {
    ShapeForm f;
    f.add(a, word, p);
    return f;
  }
  static ShapeForm constant(const Scalar& c) { return term(0, XPoly::monomial(0, c), {}); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(int a, const ShapeWord& word, const XPoly& p) {
    if (p.is_zero()) return;
    auto [it, inserted] = terms_.emplace(Key{a, word}, p);
    if (!inserted) {
      it->second += p;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  ShapeForm& operator+=(const ShapeForm& o) {
    for (const auto& [k, p] : o.terms_) add(k.first, k.second, p);
    return *this;
  }
  friend ShapeForm operator+(ShapeForm a, const ShapeForm& b) { return a += b; }
  friend ShapeForm operator*(ShapeForm a, const Scalar& c) {
    ShapeForm out;
    for (const auto& [k, p] : a.terms_) out.add(k.first, k.second, p * c);
    return out;
  }
  friend ShapeForm operator-(const ShapeForm& a, const ShapeForm& b) { return a + b * Scalar(-1L); }

  /// Longest word length among the terms (-1 for zero).
  int top_length() const {
    int d = -1;
    for (const auto& [k, p] : terms_) d = std::max(d, static_cast<int>(k.second.size()));
    return d;
  }

  int x_degree() const {
    int d = -1;
    for (const auto& [k, p] : terms_) d = std::max(d, p.degree());
    return d;
  }

 private:
  Terms terms_;
};

namespace detail {

/// d^{beta^I} r(x) rewritten as sum_K r_K(x) d^{beta^K}, using
/// d^{beta^c} s(x) = s(q^c x) d^{beta^c} + (d^{beta^c} s)(x).
inline std::vector<std::pair<XPoly, ShapeWord>> push_word_past(const ShapeWord& word, const XPoly& r) {
  std::map<ShapeWord, XPoly> cur{{ShapeWord{}, r}};
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    const int c = *it;
    std::map<ShapeWord, XPoly> next;
    for (const auto& [k, s] : cur) {
      ShapeWord longer{c};
      longer.insert(longer.end(), k.begin(), k.end());
      next[longer] += s.dilated(c);
      const XPoly ds = s.q_derivative(c);
      if (!ds.is_zero()) next[k] += ds;
    }
    cur.clear();
    for (auto& [k, s] : next) {
      if (!s.is_zero()) cur.emplace(k, std::move(s));
    }
  }
  std::vector<std::pair<XPoly, ShapeWord>> out;
  for (auto& [k, s] : cur) out.emplace_back(std::move(s), k);
  return out;
}

}  // namespace detail

/// (sigma^a p d^I)(sigma^b r d^J) = q^{b|I|} sigma^{a+b} p(q^{-b} x) (d^I r) d^J.
inline ShapeForm operator*(const ShapeForm& f, const ShapeForm& g) {
  ShapeForm out;
  for (const auto& [k1, p] : f.terms()) {
    const auto& [a, word_i] = k1;
    for (const auto& [k2, r] : g.terms()) {
      const auto& [b, word_j] = k2;
      const XPoly left = p.dilated(-b) * Scalar::q(b * static_cast<int>(word_i.size()));
      for (const auto& [rk, wk] : detail::push_word_past(word_i, r)) {
        ShapeWord w = wk;
        w.insert(w.end(), word_j.begin(), word_j.end());
        out.add(a + b, w, left * rk);
      }
    }
  }
  return out;
}

/// Grading degree of every term: x-exponent minus word length.
inline std::map<int, ShapeForm> split_by_degree(const ShapeForm& f) {
  std::map<int, ShapeForm> out;
  for (const auto& [k, p] : f.terms()) {
    for (const auto& [e, c] : p.terms()) {
      out[e - static_cast<int>(k.second.size())].add(k.first, k.second, XPoly::monomial(e, c));
    }
  }
  return out;
}

inline ShapeForm twisted_bracket(const ShapeForm& f, const ShapeForm& g, int twist) {
  ShapeForm out = f * g;
  for (const auto& [deg, part] : split_by_degree(g)) {
    out = out - (part * f) * Scalar::q(twist * deg);
  }
  return out;
}

/// Semantic value on k[x].
inline GradedOperator eval(const ShapeForm& f, const RingTag& tag = RingTag::poly_x()) {
  GradedOperator out(tag);
  for (const auto& [k, p] : f.terms()) {
    GradedOperator t = generator(gen::sigma(k.first), tag);
    GradedOperator poly(tag);
    for (const auto& [e, c] : p.terms()) poly += generator(gen::x(), tag).pow(static_cast<unsigned>(e)) * c;
    t = compose(t, poly);
    for (int letter : k.second) t = compose(t, generator(gen::dbeta(letter), tag));
    out += t;
  }
  return out;
}

namespace detail {

struct ShapeAlgebra {
  ShapeForm leaf(const Generator& g) const {
    switch (g.kind) {
      case Gen::X: return ShapeForm::term(0, XPoly::monomial(1), {});
      case Gen::Sigma: return ShapeForm::term(g.a, XPoly::monomial(0), {});
      case Gen::Tau: return ShapeForm::term(0, XPoly::monomial(1), {0});
      case Gen::DBeta:
        if (g.a == 0 || g.a == 1) return ShapeForm::term(0, XPoly::monomial(0), {g.a});
        // d^{beta^-1} = sigma^{-1} d^beta
        if (g.a == -1) return ShapeForm::term(-1, XPoly::monomial(0), {1});
        break;
      default:
        break;
    }
    throw UnsupportedGenerator(to_string(g) + " has no shape form");
  }
  ShapeForm constant(const Scalar& c) const { return ShapeForm::constant(c); }
  ShapeForm add(const ShapeForm& a, const ShapeForm& b) const { return a + b; }
  ShapeForm scale(const Scalar& c, const ShapeForm& a) const { return a * c; }
  ShapeForm multiply(const ShapeForm& a, const ShapeForm& b) const { return a * b; }
  ShapeForm inverse(const ShapeForm& a) const {
    if (a.terms().size() == 1) {
      const auto& [k, p] = *a.terms().begin();
      if (k.second.empty() && p.terms().size() == 1 && p.terms().begin()->first == 0) {
        return ShapeForm::term(-k.first, XPoly::monomial(0, p.terms().begin()->second.inverse()), {});
      }
    }
    throw UnsupportedGenerator("only powers of sigma can be inverted in a shape form");
  }
  ShapeForm bracket(const ShapeForm& a, const ShapeForm& b, const Exponents& twist) const {
    return twisted_bracket(a, b, twist[0]);
  }
};

}  // namespace detail

/// Rewrites an expression over x, sigma^{+-1}, d, d^beta, d^{beta^-1}, tau
/// into a shape form; any other leaf raises UnsupportedGenerator.
inline ShapeForm shape_normalize(const OperatorExpr& e) {
  detail::ShapeAlgebra alg;
  return fold(e, alg);
}

inline OperatorExpr to_expr(const XPoly& p) {
  std::vector<std::pair<Scalar, OperatorExpr>> terms;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    terms.emplace_back(it->second, it->first == 0 ? OperatorExpr::one()
                                                  : OperatorExpr::power(ops::x(), it->first));
  }
  return OperatorExpr::sum(std::move(terms));
}

inline OperatorExpr to_expr(const ShapeForm& f) {
  std::vector<std::pair<Scalar, OperatorExpr>> terms;
  for (const auto& [k, p] : f.terms()) {
    std::vector<OperatorExpr> factors;
    if (k.first != 0) factors.push_back(ops::s(k.first));
    // A single-term polynomial contributes its coefficient to the sum.
    Scalar coeff(1L);
    if (p.terms().size() == 1) {
      coeff = p.terms().begin()->second;
      const int e = p.terms().begin()->first;
      if (e != 0) factors.push_back(OperatorExpr::power(ops::x(), e));
    } else {
      factors.push_back(to_expr(p));
    }
    for (int letter : k.second) factors.push_back(ops::d(letter));
    terms.emplace_back(coeff, OperatorExpr::product(std::move(factors)));
  }
  return OperatorExpr::sum(std::move(terms));
}

inline std::string to_string(const ShapeForm& f) { return to_string(to_expr(f)); }

/// Reads a degree-0 operator as a polynomial in sigma, sigma^-1 and tau:
/// u^i m^j becomes s[i]*tau^j.
inline OperatorExpr decompose_degree0(const GradedOperator& phi) {
  if (phi.domain().nvars != 1) throw DomainMismatch("degree-0 decomposition needs one variable");
  std::vector<std::pair<Scalar, OperatorExpr>> terms;
  for (const auto& [e, s] : phi.parts()) {
    if (!qdops::is_zero(e)) {
      throw NotDegreeZero("operator has a part of degree " + std::to_string(e[0]));
    }
    for (auto it = s.terms().rbegin(); it != s.terms().rend(); ++it) {
      const int i = it->first.first[0];
      const int j = it->first.second[0];
      std::vector<OperatorExpr> factors;
      if (i != 0) factors.push_back(ops::s(i));
      if (j != 0) factors.push_back(OperatorExpr::power(ops::tau(), j));
      terms.emplace_back(it->second, OperatorExpr::product(std::move(factors)));
    }
  }
  return OperatorExpr::sum(std::move(terms));
}

}  // namespace qdops

#endif  // QDOPS_SHAPE_HPP
