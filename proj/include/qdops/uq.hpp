#ifndef QDOPS_UQ_HPP
#define QDOPS_UQ_HPP

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qdops/parser.hpp"
#include "qdops/report.hpp"
#include "qdops/truncated.hpp"

namespace qdops {

enum class UqGen { E, F, K, Kinv, Ediv, Fdiv };

struct UqLeaf {
  UqGen kind = UqGen::E;
  int m = 0;  // Ediv, Fdiv
  friend auto operator<=>(const UqLeaf&, const UqLeaf&) = default;
};

using UqExpr = Expr<UqLeaf>;

namespace uq {

inline UqExpr E() { return UqExpr::leaf({UqGen::E}); }
inline UqExpr F() { return UqExpr::leaf({UqGen::F}); }
inline UqExpr K() { return UqExpr::leaf({UqGen::K}); }
inline UqExpr Kinv() { return UqExpr::leaf({UqGen::Kinv}); }
inline UqExpr Ediv(int m) { return UqExpr::leaf({UqGen::Ediv, m}); }
inline UqExpr Fdiv(int m) { return UqExpr::leaf({UqGen::Fdiv, m}); }

}  // namespace uq

inline std::string to_string(const UqLeaf& l) {
  switch (l.kind) {
    case UqGen::E: return "E";
    case UqGen::F: return "F";
    case UqGen::K: return "K";
    case UqGen::Kinv: return "Kinv";
    case UqGen::Ediv: return "Ediv[" + std::to_string(l.m) + "]";
    case UqGen::Fdiv: return "Fdiv[" + std::to_string(l.m) + "]";
  }
  return "?";
}

inline std::string to_string(const UqExpr& e) {
  return to_string(e, [](const UqLeaf& l) { return to_string(l); });
}

/// Weight grading: E has degree 1, F degree -1, K and K^-1 degree 0.
inline int uq_degree(const UqLeaf& l) {
  switch (l.kind) {
    case UqGen::E: return 1;
    case UqGen::F: return -1;
    case UqGen::Ediv: return l.m;
    case UqGen::Fdiv: return -l.m;
    default: return 0;
  }
}

namespace detail {

struct UqDegreeAlgebra {
  using V = std::optional<std::optional<int>>;  // nullopt: inhomogeneous; inner nullopt: zero
  V leaf(const UqLeaf& l) const { return std::optional<int>(uq_degree(l)); }
  V constant(const Scalar& c) const { return c.is_zero() ? std::optional<int>() : std::optional<int>(0); }
  V add(const V& a, const V& b) const {
    if (!a || !b) return std::nullopt;
    if (!*a) return b;
    if (!*b) return a;
    return **a == **b ? a : V();
  }
  V scale(const Scalar& c, const V& a) const { return c.is_zero() ? V(std::optional<int>()) : a; }
  V multiply(const V& a, const V& b) const {
    if (!a || !b) return std::nullopt;
    if (!*a || !*b) return std::optional<int>();
    return std::optional<int>(**a + **b);
  }
  V inverse(const V& a) const {
    if (!a || !*a) return std::nullopt;
    return std::optional<int>(-**a);
  }
  V bracket(const V& a, const V& b, const Exponents&) const { return multiply(a, b); }
};

/// Degree of a homogeneous expression (0 for the zero expression).
inline int homogeneous_uq_degree(const UqExpr& e) {
  UqDegreeAlgebra alg;
  const auto d = fold(e, alg);
  if (!d) throw DomainMismatch("twisted bracket of an inhomogeneous U_q expression");
  return d->value_or(0);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Quantum plane action

namespace detail {

/// E, F, K, K^-1 on u^a v^b (a >= 0), via the coproduct
/// E(st) = E(s)t + K(s)E(t), F(st) = sF(t) + F(s)K^-1(t), peeling off the
/// leftmost letter.
inline PlaneElement base_action(UqGen g, int a, int b) {
  static thread_local std::map<std::tuple<UqGen, int, int>, PlaneElement> cache;
  if (a < 0) throw OutOfSupport("negative power of u in the quantum plane");
  switch (g) {
    case UqGen::K: return PlaneElement::monomial(a, b, Scalar::q(a - b));
    case UqGen::Kinv: return PlaneElement::monomial(a, b, Scalar::q(b - a));
    default: break;
  }
  if (a == 0 && b == 0) return PlaneElement();
  const auto key = std::make_tuple(g, a, b);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  PlaneElement out;
  const PlaneElement u = PlaneElement::u(), v = PlaneElement::v(), vinv = PlaneElement::v_inverse();
  if (g == UqGen::E) {
    if (a > 0) {
      // E(u) = 0, K(u) = q u
      out = u * base_action(g, a - 1, b) * Scalar::q();
    } else if (b > 0) {
      // E(v) = u, K(v) = q^-1 v
      out = u * PlaneElement::monomial(0, b - 1) + v * base_action(g, 0, b - 1) * Scalar::q(-1);
    } else {
      // E(v^-1) = -q v^-1 u v^-1, K(v^-1) = q v^-1
      const PlaneElement ev = vinv * u * vinv * Scalar(-1L) * Scalar::q();
      out = ev * PlaneElement::monomial(0, b + 1) + vinv * base_action(g, 0, b + 1) * Scalar::q();
    }
  } else {
    if (a > 0) {
      // F(u) = v
      out = u * base_action(g, a - 1, b) + v * base_action(UqGen::Kinv, a - 1, b);
    } else if (b > 0) {
      out = v * base_action(g, 0, b - 1);  // F(v) = 0
    } else {
      out = vinv * base_action(g, 0, b + 1);  // F(v^-1) = 0
    }
  }
  cache.emplace(key, out);
  return out;
}

inline PlaneElement act_linear(UqGen g, const PlaneElement& s) {
  PlaneElement out;
  for (const auto& [k, c] : s.terms()) out += base_action(g, k.first, k.second) * c;
  return out;
}

inline PlaneElement act_leaf(const UqLeaf& l, const PlaneElement& s) {
  switch (l.kind) {
    case UqGen::Ediv:
    case UqGen::Fdiv: {
      if (l.m < 0) throw DomainMismatch("divided powers need m >= 0");
      const UqGen g = l.kind == UqGen::Ediv ? UqGen::E : UqGen::F;
      PlaneElement cur = s;
      for (int i = 0; i < l.m; ++i) cur = act_linear(g, cur);
      return cur * q_factorial(l.m).inverse();
    }
    default:
      return act_linear(l.kind, s);
  }
}

inline PlaneElement act(const UqExpr& e, const PlaneElement& s) {
  using K = UqExpr::Kind;
  switch (e.kind()) {
    case K::Leaf: return act_leaf(e.leaf_value(), s);
    case K::Constant: return s * e.scalar();
    case K::Sum: {
      PlaneElement out;
      for (const auto& [c, t] : e.terms()) out += act(t, s) * c;
      return out;
    }
    case K::Product: {
      PlaneElement cur = s;
      for (auto it = e.factors().rbegin(); it != e.factors().rend(); ++it) cur = act(*it, cur);
      return cur;
    }
    case K::Scale: return act(e.factors().front(), s) * e.scalar();
    case K::Power: {
      UqExpr base = e.factors().front();
      int k = e.exponent();
      if (k < 0) {
        if (base.kind() != K::Leaf || (base.leaf_value().kind != UqGen::K && base.leaf_value().kind != UqGen::Kinv)) {
          throw UnsupportedGenerator("only K and Kinv can be inverted");
        }
        base = base.leaf_value().kind == UqGen::K ? uq::Kinv() : uq::K();
        k = -k;
      }
      PlaneElement cur = s;
      for (int i = 0; i < k; ++i) cur = act(base, cur);
      return cur;
    }
    case K::Bracket: {
      const UqExpr& a = e.factors()[0];
      const UqExpr& b = e.factors()[1];
      const Scalar beta = Scalar::q(e.twist()[0] * homogeneous_uq_degree(b));
      return act(a, act(b, s)) - act(b, act(a, s)) * beta;
    }
  }
  return PlaneElement();
}

}  // namespace detail

/// Action of a U_q expression on the localized quantum plane k<u, v, v^-1>.
inline PlaneElement act_on_plane(const UqExpr& w, const PlaneElement& s) { return detail::act(w, s); }

/// g(s t) computed from g(s), g(t) through the coproduct; for g in
/// {E, F, K, Kinv}.
inline PlaneElement coproduct_action(UqGen g, const PlaneElement& s, const PlaneElement& t) {
  auto on = [](UqGen h, const PlaneElement& p) { return detail::act_linear(h, p); };
  switch (g) {
    case UqGen::E: return on(UqGen::E, s) * t + on(UqGen::K, s) * on(UqGen::E, t);
    case UqGen::F: return s * on(UqGen::F, t) + on(UqGen::F, s) * on(UqGen::Kinv, t);
    case UqGen::K:
    case UqGen::Kinv: return on(g, s) * on(g, t);
    default: break;
  }
  throw UnsupportedGenerator("coproduct is given for E, F, K, Kinv");
}

/// Reads a plane element in the span of the powers of x = u v^-1 as a
/// polynomial in x; nullopt if some term is not of the form u^a v^-a.
inline std::optional<RingElement> plane_to_x(const PlaneElement& s) {
  RingElement out(RingTag::poly_x());
  for (const auto& [k, c] : s.terms()) {
    if (k.second != -k.first) return std::nullopt;
    // x^a = mu_a u^a v^-a
    const PlaneElement xa = plane_power(x_of_plane(), k.first);
    const Scalar mu = xa.terms().begin()->second;
    out += RingElement::monomial(unit_exponents(0, k.first), c / mu, RingTag::poly_x());
  }
  return out;
}

inline PlaneElement x_power_in_plane(int m) { return plane_power(x_of_plane(), m); }

// ---------------------------------------------------------------------------
// alpha, gamma, eta

enum class UqSide { X, Y };

namespace detail {

struct UqOperatorAlgebra {
  UqSide side;

  RingTag tag() const { return side == UqSide::X ? RingTag::poly_x() : RingTag::poly_y(); }
  GradedOperator g(const Generator& gen) const { return generator(gen, tag()); }

  GradedOperator image_E() const {
    const Scalar q = Scalar::q();
    if (side == UqSide::X) return g(gen::x()).pow(2) * g(gen::dbeta(2)) * (-q * q);
    return g(gen::dbeta(2));
  }
  GradedOperator image_F() const {
    if (side == UqSide::X) return g(gen::sigma(-2)) * g(gen::dbeta(2)) * Scalar::q(-1);
    return g(gen::sigma(-2)) * g(gen::y()).pow(2) * g(gen::dbeta(2)) * -Scalar::q(-3);
  }

  GradedOperator leaf(const UqLeaf& l) const {
    switch (l.kind) {
      case UqGen::E: return image_E();
      case UqGen::F: return image_F();
      case UqGen::K: return g(gen::sigma(2));
      case UqGen::Kinv: return g(gen::sigma(-2));
      case UqGen::Ediv:
      case UqGen::Fdiv: {
        if (l.m < 0) throw DomainMismatch("divided powers need m >= 0");
        const GradedOperator base = l.kind == UqGen::Ediv ? image_E() : image_F();
        return base.pow(static_cast<unsigned>(l.m)) * q_factorial(l.m).inverse();
      }
    }
    return GradedOperator(tag());
  }
  GradedOperator constant(const Scalar& c) const { return GradedOperator::scalar(c, tag()); }
  GradedOperator add(const GradedOperator& a, const GradedOperator& b) const { return a + b; }
  GradedOperator scale(const Scalar& c, const GradedOperator& a) const { return a * c; }
  GradedOperator multiply(const GradedOperator& a, const GradedOperator& b) const { return compose(a, b); }
  GradedOperator inverse(const GradedOperator& a) const { return monomial_inverse(a); }
  GradedOperator bracket(const GradedOperator& a, const GradedOperator& b, const Exponents& twist) const {
    return twisted_bracket(a, b, twist);
  }
};

}  // namespace detail

/// alpha: U_q -> D_q(k[x]); E -> -q^2 x^2 d^{beta^2}, F -> q^-1 sigma^-2 d^{beta^2}, K -> sigma^2.
inline GradedOperator alpha(const UqExpr& w) {
  detail::UqOperatorAlgebra alg{UqSide::X};
  return fold(w, alg);
}

/// gamma: U_q -> D_q(k[y]); E -> d_y^{beta^2}, F -> -q^-3 sigma_y^-2 y^2 d_y^{beta^2}, K -> sigma_y^2.
inline GradedOperator gamma(const UqExpr& w) {
  detail::UqOperatorAlgebra alg{UqSide::Y};
  return fold(w, alg);
}

struct GammaPair {
  GradedOperator dx{RingTag::poly_x()};
  GradedOperator dy{RingTag::poly_y()};
};

/// Both components agree on k[x, x^-1].
inline bool gamma_q_member(const GammaPair& p) {
  if (p.dx.domain().kind != RingKind::PolyX || p.dy.domain().kind != RingKind::PolyY) {
    throw DomainMismatch("a Gamma_q pair is (operator on k[x], operator on k[y])");
  }
  return extend_to_laurent(p.dx) == extend_to_laurent(p.dy);
}

inline GammaPair eta(const UqExpr& w) {
  GammaPair p{alpha(w), gamma(w)};
  if (!gamma_q_member(p)) {
    throw GlueFailure("alpha and gamma images of " + to_string(w) + " disagree on k[x,x^-1]");
  }
  return p;
}

/// The six generating pairs of Gamma_q, named.
inline std::vector<std::pair<std::string, GammaPair>> gamma_generators() {
  const RingTag X = RingTag::poly_x(), Y = RingTag::poly_y();
  const Scalar q = Scalar::q();
  auto dx = [&](int a) { return generator(gen::dbeta(a), X); };
  auto dy = [&](int a) { return generator(gen::dbeta(a), Y); };
  const GradedOperator x2 = generator(gen::x(), X).pow(2);
  const GradedOperator y2 = generator(gen::y(), Y).pow(2);
  return {
      {"(D[0], -y^2*D_y[0])", {dx(0), y2 * dy(0) * Scalar(-1L)}},
      {"(-x^2*D[0], D_y[0])", {x2 * dx(0) * Scalar(-1L), dy(0)}},
      {"(D[1], -q^-1*y^2*D_y[1])", {dx(1), y2 * dy(1) * -q.inverse()}},
      {"(-q*x^2*D[1], D_y[1])", {x2 * dx(1) * -q, dy(1)}},
      {"(D[-1], -q*y^2*D_y[-1])", {dx(-1), y2 * dy(-1) * -q}},
      {"(-q^-1*x^2*D[-1], D_y[-1])", {x2 * dx(-1) * -q.inverse(), dy(-1)}},
  };
}

/// Membership of the six generators and the bracket formulas expressing
/// sigma, sigma^-1 and tau through them.
inline Report gamma_generators_check() {
  Report r{"gamma-generators", {}};
  for (const auto& [name, pair] : gamma_generators()) r.add("member " + name, gamma_q_member(pair));
  const RingTag X = RingTag::poly_x();
  const Scalar q = Scalar::q();
  const GradedOperator one = GradedOperator::identity(X);
  const GradedOperator x2 = generator(gen::x(), X).pow(2);
  auto d = [&](int a) { return generator(gen::dbeta(a), X); };
  const GradedOperator sigma = twisted_bracket(d(1), x2 * d(1), 2) * ((q - 1) / (q + 1)) + one;
  r.add("s[1] = ((q-1)/(q+1))*bracket(D[1], x^2*D[1], 2) + 1", sigma == generator(gen::sigma(1), X));
  const Scalar qi = q.inverse();
  const GradedOperator sigma_inv = twisted_bracket(d(-1), x2 * d(-1), -2) * ((qi - 1) / (qi + 1)) + one;
  r.add("s[-1] = ((q^-1-1)/(q^-1+1))*bracket(D[-1], x^2*D[-1], -2) + 1",
        sigma_inv == generator(gen::sigma(-1), X));
  const GradedOperator tau = bracket(d(0), x2 * d(0)) * Scalar::rational(1, 2);
  r.add("tau = (1/2)*bracket(D[0], x^2*D[0])", tau == generator(gen::tau(), X));
  return r;
}

/// Truncations of alpha(w) and gamma(w) modulo (q-1)^n.
inline std::pair<TruncatedOperator, TruncatedOperator> eta_truncated(const UqExpr& w, std::size_t n) {
  const GammaPair p = eta(w);
  return {truncate_operator(p.dx, n), truncate_operator(p.dy, n)};
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

struct UqExprAlgebra {
  UqExpr constant(const Scalar& c) { return UqExpr::constant(c); }
  UqExpr name(const Ast& a) {
    if (auto v = q_variable(a.name); v && *v == 0 && !a.indexed) return constant(Scalar::q());
    if (!a.indexed) {
      if (a.name == "E") return uq::E();
      if (a.name == "F") return uq::F();
      if (a.name == "K") return uq::K();
      if (a.name == "Kinv") return uq::Kinv();
    } else if (a.indices.size() == 1 && (a.name == "Ediv" || a.name == "Fdiv")) {
      const int m = narrow(a.indices[0], a);
      if (m < 0) throw ParseError("divided powers need m >= 0", a.position);
      return a.name == "Ediv" ? uq::Ediv(m) : uq::Fdiv(m);
    }
    unknown(a, "a U_q expression");
  }
  UqExpr add(const UqExpr& x, const UqExpr& y) { return x + y; }
  UqExpr scale(const Scalar& c, const UqExpr& x) { return UqExpr::scale(c, x); }
  UqExpr multiply(const UqExpr& x, const UqExpr& y) {
    if (x.kind() == UqExpr::Kind::Constant) return UqExpr::scale(x.scalar(), y);
    return x * y;
  }
  std::optional<Scalar> as_scalar(const UqExpr& x) {
    if (x.kind() == UqExpr::Kind::Constant) return x.scalar();
    return std::nullopt;
  }
  UqExpr power(const UqExpr& x, int k, const Ast&) {
    if (x.kind() == UqExpr::Kind::Constant) return constant(x.scalar().pow(k));
    return UqExpr::power(x, k);
  }
  UqExpr call(const Ast& a) {
    const UqExpr lhs = interpret<UqExpr>(*a.args[0], *this);
    const UqExpr rhs = interpret<UqExpr>(*a.args[1], *this);
    const int twist = a.indices.empty() ? 0 : narrow(a.indices[0], a);
    return UqExpr::bracket(lhs, rhs, twist);
  }
};

}  // namespace detail

inline UqExpr parse_uq(std::string_view text) {
  detail::UqExprAlgebra alg;
  return detail::interpret<UqExpr>(*parse_ast(text), alg);
}

}  // namespace qdops

#endif  // QDOPS_UQ_HPP
