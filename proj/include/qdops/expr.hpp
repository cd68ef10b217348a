#ifndef QDOPS_EXPR_HPP
#define QDOPS_EXPR_HPP

#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qdops/operator.hpp"

namespace qdops {

/// Immutable expression tree over a leaf type. Children are shared, so
/// copies are cheap and subtrees can be reused freely.
template <class L>
class Expr {
 public:
  enum class Kind { Leaf, Constant, Sum, Product, Scale, Power, Bracket };

  struct Node {
    Kind kind = Kind::Constant;
    L leaf{};
    Scalar scalar;                                 // Constant value, Scale factor
    std::vector<std::pair<Scalar, Expr>> terms;    // Sum
    std::vector<Expr> factors;                     // Product (left to right), Scale/Power/Bracket operands
    int exponent = 0;                              // Power
    Exponents twist{};                             // Bracket
  };

  Expr() : node_(std::make_shared<Node>()) {}  // the constant 0

  static Expr leaf(const L& l) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Leaf;
    n->leaf = l;
    return Expr(std::move(n));
  }

  static Expr constant(const Scalar& c) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Constant;
    n->scalar = c;
    return Expr(std::move(n));
  }

  static Expr one() { return constant(Scalar(1L)); }

  /// sum_i c_i e_i; nested sums and scalar multiples are absorbed into the
  /// coefficients, zero terms are dropped, and a single unit term collapses
  /// to the term itself.
  static Expr sum(std::vector<std::pair<Scalar, Expr>> input) {
    std::vector<std::pair<Scalar, Expr>> terms;
    for (auto& [c, e] : input) {
      if (e.kind() == Kind::Scale) {
        terms.emplace_back(c * e.scalar(), e.factors().front());
      } else if (e.kind() == Kind::Sum) {
        for (const auto& [d, t] : e.terms()) terms.emplace_back(c * d, t);
      } else {
        terms.emplace_back(std::move(c), std::move(e));
      }
    }
    std::erase_if(terms, [](const auto& t) { return t.first.is_zero() || t.second.is_zero(); });
    if (terms.empty()) return constant(Scalar());
    if (terms.size() == 1 && terms.front().first.is_one()) return terms.front().second;
    auto n = std::make_shared<Node>();
    n->kind = Kind::Sum;
    n->terms = std::move(terms);
    return Expr(std::move(n));
  }

  static Expr product(std::vector<Expr> factors) {
    std::vector<Expr> flat;
    for (auto& f : factors) {
      if (f.is_zero()) return constant(Scalar());
      if (f.is_one()) continue;
      if (f.kind() == Kind::Product) {
        flat.insert(flat.end(), f.factors().begin(), f.factors().end());
      } else {
        flat.push_back(std::move(f));
      }
    }
    if (flat.empty()) return one();
    if (flat.size() == 1) return flat.front();
    auto n = std::make_shared<Node>();
    n->kind = Kind::Product;
    n->factors = std::move(flat);
    return Expr(std::move(n));
  }

  static Expr scale(const Scalar& c, const Expr& e) {
    if (c.is_zero() || e.is_zero()) return constant(Scalar());
    if (c.is_one()) return e;
    if (e.kind() == Kind::Constant) return constant(c * e.scalar());
    if (e.kind() == Kind::Scale) return scale(c * e.scalar(), e.factors().front());
    auto n = std::make_shared<Node>();
    n->kind = Kind::Scale;
    n->scalar = c;
    n->factors = {e};
    return Expr(std::move(n));
  }

  static Expr power(const Expr& base, int k) {
    if (k == 1) return base;
    auto n = std::make_shared<Node>();
    n->kind = Kind::Power;
    n->factors = {base};
    n->exponent = k;
    return Expr(std::move(n));
  }

  static Expr bracket(const Expr& a, const Expr& b, const Exponents& twist = zero_exponents()) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Bracket;
    n->factors = {a, b};
    n->twist = twist;
    return Expr(std::move(n));
  }
  static Expr bracket(const Expr& a, const Expr& b, int twist) {
    return bracket(a, b, unit_exponents(0, twist));
  }

  Kind kind() const { return node_->kind; }
  const L& leaf_value() const { return node_->leaf; }
  const Scalar& scalar() const { return node_->scalar; }
  const std::vector<std::pair<Scalar, Expr>>& terms() const { return node_->terms; }
  const std::vector<Expr>& factors() const { return node_->factors; }
  int exponent() const { return node_->exponent; }
  const Exponents& twist() const { return node_->twist; }

  bool is_zero() const { return kind() == Kind::Constant && scalar().is_zero(); }
  bool is_one() const { return kind() == Kind::Constant && scalar().is_one(); }
  /// Identity of the underlying node, stable across copies.
  const void* id() const { return node_.get(); }

  friend Expr operator+(const Expr& a, const Expr& b) {
    return sum({{Scalar(1L), a}, {Scalar(1L), b}});
  }
  friend Expr operator-(const Expr& a, const Expr& b) {
    return sum({{Scalar(1L), a}, {Scalar(-1L), b}});
  }
  friend Expr operator*(const Expr& a, const Expr& b) { return product({a, b}); }
  friend Expr operator*(const Scalar& c, const Expr& e) { return scale(c, e); }

 private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

namespace detail {

template <class Leaf, class Algebra, class Value>
Value fold_cached(const Expr<Leaf>& e, Algebra& alg,
                  std::unordered_map<const void*, Value>& cache) {
  using K = typename Expr<Leaf>::Kind;
  if (auto it = cache.find(e.id()); it != cache.end()) return it->second;
  auto rec = [&](const Expr<Leaf>& sub) { return fold_cached<Leaf, Algebra, Value>(sub, alg, cache); };
  Value out = alg.constant(Scalar());
  switch (e.kind()) {
    case K::Leaf:
      out = alg.leaf(e.leaf_value());
      break;
    case K::Constant:
      out = alg.constant(e.scalar());
      break;
    case K::Sum:
      for (const auto& [c, t] : e.terms()) out = alg.add(out, alg.scale(c, rec(t)));
      break;
    case K::Product:
      out = rec(e.factors().front());
      for (std::size_t i = 1; i < e.factors().size(); ++i) out = alg.multiply(out, rec(e.factors()[i]));
      break;
    case K::Scale:
      out = alg.scale(e.scalar(), rec(e.factors().front()));
      break;
    case K::Power: {
      Value base = rec(e.factors().front());
      int k = e.exponent();
      if (k < 0) {
        base = alg.inverse(base);
        k = -k;
      }
      out = alg.constant(Scalar(1L));
      for (int i = 0; i < k; ++i) out = alg.multiply(out, base);
      break;
    }
    case K::Bracket:
      out = alg.bracket(rec(e.factors()[0]), rec(e.factors()[1]), e.twist());
      break;
  }
  cache.emplace(e.id(), out);
  return out;
}

}  // namespace detail

/// Evaluates an expression into an algebra. The algebra supplies
/// leaf(l), constant(c), add(a, b), scale(c, a), multiply(a, b),
/// inverse(a) and bracket(a, b, twist). Shared subtrees are evaluated once.
template <class Leaf, class Algebra>
auto fold(const Expr<Leaf>& e, Algebra& alg) -> decltype(alg.constant(Scalar())) {
  using Value = decltype(alg.constant(Scalar()));
  std::unordered_map<const void*, Value> cache;
  return detail::fold_cached<Leaf, Algebra, Value>(e, alg, cache);
}

// ---------------------------------------------------------------------------
// Printing

namespace detail {

enum class Prec { Sum = 0, Product = 1, Atom = 2 };

inline std::string scalar_factor(const Scalar& c) {
  return is_atomic_scalar(c) ? to_string(c) : "(" + to_string(c) + ")";
}

template <class Leaf, class LeafPrinter>
std::string print(const Expr<Leaf>& e, const LeafPrinter& pl, Prec ctx);

/// "c*e" with c pulled into a sign where possible; `e` printed at product
/// precedence.
template <class Leaf, class LeafPrinter>
std::string coefficient_expr(const Scalar& c, const Expr<Leaf>& e, const LeafPrinter& pl) {
  if (c.is_one()) return print(e, pl, Prec::Product);
  if (c == Scalar(-1L)) return "-" + print(e, pl, Prec::Product);
  const Scalar neg = -c;
  if (!is_atomic_scalar(c) && is_atomic_scalar(neg)) {
    return "-" + scalar_factor(neg) + "*" + print(e, pl, Prec::Product);
  }
  return scalar_factor(c) + "*" + print(e, pl, Prec::Product);
}

template <class Leaf, class LeafPrinter>
std::string print(const Expr<Leaf>& e, const LeafPrinter& pl, Prec ctx) {
  using K = typename Expr<Leaf>::Kind;
  auto wrap = [&](std::string s, Prec own) { return own < ctx ? "(" + s + ")" : s; };
  switch (e.kind()) {
    case K::Leaf:
      return pl(e.leaf_value());
    case K::Constant: {
      const Scalar& c = e.scalar();
      if (is_atomic_scalar(c)) {
        const std::string s = to_string(c);
        return (s.front() == '-' && ctx > Prec::Sum) ? "(" + s + ")" : s;
      }
      return wrap(to_string(c), Prec::Sum);
    }
    case K::Sum: {
      std::string out;
      for (const auto& [c, t] : e.terms()) {
        std::string piece = coefficient_expr(c, t, pl);
        if (!out.empty() && piece.front() != '-') out += "+";
        out += piece;
      }
      return wrap(out, Prec::Sum);
    }
    case K::Product: {
      std::string out;
      for (const auto& f : e.factors()) {
        if (!out.empty()) out += "*";
        out += print(f, pl, Prec::Product);
      }
      return wrap(out, Prec::Product);
    }
    case K::Scale: {
      const auto& inner = e.factors().front();
      std::string body = coefficient_expr(e.scalar(), inner, pl);
      if (inner.kind() == K::Sum) {
        body = scalar_factor(e.scalar()) + "*" + print(inner, pl, Prec::Atom);
      }
      return wrap(body, body.front() == '-' ? Prec::Sum : Prec::Product);
    }
    case K::Power:
      return wrap(print(e.factors().front(), pl, Prec::Atom) + "^" + std::to_string(e.exponent()),
                  Prec::Atom);
    case K::Bracket: {
      std::string out = "bracket(" + print(e.factors()[0], pl, Prec::Sum) + "," +
                        print(e.factors()[1], pl, Prec::Sum);
      if (!qdops::is_zero(e.twist())) out += "," + std::to_string(e.twist()[0]);
      return out + ")";
    }
  }
  return "?";
}

}  // namespace detail

template <class Leaf, class LeafPrinter>
std::string to_string(const Expr<Leaf>& e, const LeafPrinter& pl) {
  return detail::print(e, pl, detail::Prec::Sum);
}

// ---------------------------------------------------------------------------
// Operator expressions

using OperatorExpr = Expr<Generator>;

namespace ops {

inline OperatorExpr g(const Generator& l) { return OperatorExpr::leaf(l); }
inline OperatorExpr x() { return g(gen::x()); }
inline OperatorExpr s(int a) { return g(gen::sigma(a)); }
inline OperatorExpr d(int a) { return g(gen::dbeta(a)); }
inline OperatorExpr tau() { return g(gen::tau()); }
inline OperatorExpr c(const Scalar& v) { return OperatorExpr::constant(v); }

}  // namespace ops

/// Inverse of an operator that is a single invertible monomial c*u^i at
/// shift e (for instance sigma^a, or x on k[x, x^-1]).
inline GradedOperator monomial_inverse(const GradedOperator& phi) {
  if (phi.parts().size() == 1) {
    const auto& [e, s] = *phi.parts().begin();
    if (s.terms().size() == 1) {
      const auto& [key, c] = *s.terms().begin();
      const bool shift_ok = qdops::is_zero(e) || phi.domain().kind == RingKind::LaurentX;
      if (qdops::is_zero(key.second) && shift_ok) {
        // x^m -> c q^{i.m} x^{m+e}  inverts to  x^m -> c^-1 q^{i.e} q^{-i.m} x^{m-e}
        Scalar coeff = c.inverse();
        for (std::size_t v = 0; v < kMaxVars; ++v) {
          const long p = static_cast<long>(key.first[v]) * e[v];
          if (p != 0) coeff *= Scalar::q(static_cast<int>(p), v);
        }
        return GradedOperator(phi.domain(), -e, Symbol::u_power(-key.first, coeff));
      }
    }
  }
  throw DomainMismatch("operator is not invertible on ring " + to_string(phi.domain()));
}

/// Algebra used to evaluate operator expressions on a ring.
struct OperatorAlgebra {
  RingTag tag;
  GradedOperator leaf(const Generator& g) const { return generator(g, tag); }
  GradedOperator constant(const Scalar& c) const { return GradedOperator::scalar(c, tag); }
  GradedOperator add(const GradedOperator& a, const GradedOperator& b) const { return a + b; }
  GradedOperator scale(const Scalar& c, const GradedOperator& a) const { return a * c; }
  GradedOperator multiply(const GradedOperator& a, const GradedOperator& b) const {
    return compose(a, b);
  }
  GradedOperator inverse(const GradedOperator& a) const { return monomial_inverse(a); }
  GradedOperator bracket(const GradedOperator& a, const GradedOperator& b,
                         const Exponents& twist) const {
    return twisted_bracket(a, b, twist);
  }
};

inline GradedOperator eval(const OperatorExpr& e, const RingTag& tag) {
  OperatorAlgebra alg{tag};
  return fold(e, alg);
}

inline std::string to_string(const OperatorExpr& e, const RingTag& tag = RingTag::poly_x()) {
  return to_string(e, [&](const Generator& g) { return to_string(g, tag); });
}

}  // namespace qdops

#endif  // QDOPS_EXPR_HPP
