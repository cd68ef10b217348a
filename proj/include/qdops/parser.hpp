#ifndef QDOPS_PARSER_HPP
#define QDOPS_PARSER_HPP

#include <cctype>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "qdops/expr.hpp"

namespace qdops {

/// Untyped syntax tree shared by all the expression grammars. Each
/// interpreter below gives it a meaning (scalar, ring element, plane
/// element, operator expression, U_q expression).
struct Ast {
  enum class Kind { Number, Name, Add, Sub, Mul, Div, Neg, Pow, Call };
  Kind kind = Kind::Number;
  std::size_t position = 0;
  mpz_class number;             // Number
  std::string name;             // Name, Call
  std::vector<long> indices;    // Name with [..]
  bool indexed = false;
  long exponent = 0;            // Pow
  std::vector<std::shared_ptr<const Ast>> args;
};

using AstPtr = std::shared_ptr<const Ast>;

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  AstPtr parse() {
    AstPtr e = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) {
      fail(pos_ < text_.size() ? "expected '" + std::string(1, c) + "'"
                               : "expected '" + std::string(1, c) + "' at end of input");
    }
  }

  static AstPtr node(Ast::Kind k, std::size_t at, std::vector<AstPtr> args = {}) {
    auto n = std::make_shared<Ast>();
    n->kind = k;
    n->position = at;
    n->args = std::move(args);
    return n;
  }

  long signed_integer() {
    skip_space();
    const std::size_t start = pos_;
    bool negative = false;
    if (accept('-')) negative = true;
    skip_space();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      pos_ = start;
      fail("expected an integer");
    }
    long v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (v > 100000000L) fail("integer too large");
      v = v * 10 + (text_[pos_] - '0');
      ++pos_;
    }
    return negative ? -v : v;
  }

  AstPtr expr() {
    skip_space();
    const std::size_t at = pos_;
    AstPtr lhs;
    if (accept('-')) {
      lhs = node(Ast::Kind::Neg, at, {term()});
    } else {
      accept('+');
      lhs = term();
    }
    for (;;) {
      skip_space();
      const std::size_t op_at = pos_;
      if (accept('+')) {
        lhs = node(Ast::Kind::Add, op_at, {lhs, term()});
      } else if (accept('-')) {
        lhs = node(Ast::Kind::Sub, op_at, {lhs, term()});
      } else {
        return lhs;
      }
    }
  }

  AstPtr term() {
    AstPtr lhs = factor();
    for (;;) {
      skip_space();
      const std::size_t op_at = pos_;
      if (accept('*')) {
        lhs = node(Ast::Kind::Mul, op_at, {lhs, factor()});
      } else if (accept('/')) {
        lhs = node(Ast::Kind::Div, op_at, {lhs, factor()});
      } else {
        return lhs;
      }
    }
  }

  AstPtr factor() {
    skip_space();
    const std::size_t at = pos_;
    if (accept('-')) return node(Ast::Kind::Neg, at, {factor()});
    AstPtr base = atom();
    skip_space();
    const std::size_t op_at = pos_;
    if (accept('^')) {
      long k = 0;
      if (accept('(')) {
        k = signed_integer();
        expect(')');
      } else {
        k = signed_integer();
      }
      auto n = std::make_shared<Ast>(*node(Ast::Kind::Pow, op_at, {base}));
      n->exponent = k;
      return n;
    }
    return base;
  }

  AstPtr atom() {
    skip_space();
    const std::size_t at = pos_;
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      AstPtr inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      auto n = std::make_shared<Ast>();
      n->kind = Ast::Kind::Number;
      n->position = at;
      std::string digits;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        digits += text_[pos_++];
      }
      n->number = mpz_class(digits);
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string name;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                     text_[pos_] == '_')) {
        name += text_[pos_++];
      }
      if (name == "bracket") {
        expect('(');
        AstPtr a = expr();
        expect(',');
        AstPtr b = expr();
        auto n = std::make_shared<Ast>(*node(Ast::Kind::Call, at, {a, b}));
        n->name = name;
        if (accept(',')) n->indices.push_back(signed_integer());
        expect(')');
        return n;
      }
      auto n = std::make_shared<Ast>();
      n->kind = Ast::Kind::Name;
      n->position = at;
      n->name = name;
      if (accept('[')) {
        n->indexed = true;
        n->indices.push_back(signed_integer());
        while (accept(',')) n->indices.push_back(signed_integer());
        expect(']');
      }
      return n;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

[[noreturn]] inline void unknown(const Ast& a, const std::string& context) {
  throw ParseError("unknown name '" + a.name + "' in " + context, a.position);
}

/// Index of a q-variable name: q -> 0, q1 -> 0, q2 -> 1, ...
inline std::optional<std::size_t> q_variable(const std::string& name) {
  if (name == "q") return 0;
  if (name.size() == 2 && name[0] == 'q' && name[1] >= '1' &&
      static_cast<std::size_t>(name[1] - '1') < kMaxVars) {
    return static_cast<std::size_t>(name[1] - '1');
  }
  return std::nullopt;
}

inline int narrow(long v, const Ast& a) {
  if (v > 1000000 || v < -1000000) throw ParseError("exponent out of range", a.position);
  return static_cast<int>(v);
}

/// Generic interpreter over an algebra with constant/add/multiply/inverse
/// and a name resolver. Division is allowed only by scalars.
template <class T, class Algebra>
T interpret(const Ast& a, Algebra& alg) {
  switch (a.kind) {
    case Ast::Kind::Number:
      return alg.constant(Scalar(mpq_class(a.number)));
    case Ast::Kind::Name:
      return alg.name(a);
    case Ast::Kind::Add:
      return alg.add(interpret<T>(*a.args[0], alg), interpret<T>(*a.args[1], alg));
    case Ast::Kind::Sub:
      return alg.add(interpret<T>(*a.args[0], alg),
                     alg.scale(Scalar(-1L), interpret<T>(*a.args[1], alg)));
    case Ast::Kind::Neg:
      return alg.scale(Scalar(-1L), interpret<T>(*a.args[0], alg));
    case Ast::Kind::Mul:
      return alg.multiply(interpret<T>(*a.args[0], alg), interpret<T>(*a.args[1], alg));
    case Ast::Kind::Div: {
      const T lhs = interpret<T>(*a.args[0], alg);
      const std::optional<Scalar> d = alg.as_scalar(interpret<T>(*a.args[1], alg));
      if (!d) throw ParseError("division is only defined by scalars", a.position);
      if (d->is_zero()) throw DivisionByZero("division by zero");
      return alg.scale(d->inverse(), lhs);
    }
    case Ast::Kind::Pow:
      return alg.power(interpret<T>(*a.args[0], alg), narrow(a.exponent, a), a);
    case Ast::Kind::Call:
      return alg.call(a);
  }
  throw ParseError("bad syntax tree", a.position);
}

// --- Scalar interpretation ----------------------------------------------------

struct ScalarAlgebra {
  Scalar constant(const Scalar& c) { return c; }
  Scalar name(const Ast& a) {
    if (auto v = q_variable(a.name); v && !a.indexed) return Scalar::q(1, *v);
    unknown(a, "a scalar");
  }
  Scalar add(const Scalar& x, const Scalar& y) { return x + y; }
  Scalar scale(const Scalar& c, const Scalar& x) { return c * x; }
  Scalar multiply(const Scalar& x, const Scalar& y) { return x * y; }
  std::optional<Scalar> as_scalar(const Scalar& x) { return x; }
  Scalar power(const Scalar& x, int k, const Ast&) { return x.pow(k); }
  Scalar call(const Ast& a) { throw ParseError("bracket in a scalar", a.position); }
};

// --- Ring elements ------------------------------------------------------------

struct RingAlgebra {
  RingTag tag;
  RingElement constant(const Scalar& c) { return RingElement::constant(c, tag); }
  RingElement name(const Ast& a) {
    if (auto v = q_variable(a.name); v && !a.indexed) return constant(Scalar::q(1, *v));
    if (tag.kind == RingKind::PolyN && a.name == "x" && a.indexed && a.indices.size() == 1) {
      const long i = a.indices[0];
      if (i < 1 || static_cast<std::size_t>(i) > tag.nvars) {
        throw ParseError("variable index out of range", a.position);
      }
      return RingElement::variable(tag, static_cast<std::size_t>(i - 1));
    }
    if (!a.indexed && ((a.name == "x" && (tag.kind == RingKind::PolyX || tag.kind == RingKind::LaurentX)) ||
                       (a.name == "y" && tag.kind == RingKind::PolyY))) {
      return RingElement::variable(tag);
    }
    if (!a.indexed && a.name == "y" && tag.kind == RingKind::LaurentX) {
      return RingElement::monomial(unit_exponents(0, -1), Scalar(1L), tag);
    }
    unknown(a, "ring " + to_string(tag));
  }
  RingElement add(const RingElement& x, const RingElement& y) { return x + y; }
  RingElement scale(const Scalar& c, const RingElement& x) { return x * c; }
  RingElement multiply(const RingElement& x, const RingElement& y) { return x * y; }
  std::optional<Scalar> as_scalar(const RingElement& x) {
    if (x.is_zero()) return Scalar();
    if (x.terms().size() == 1 && qdops::is_zero(x.terms().begin()->first)) {
      return x.terms().begin()->second;
    }
    return std::nullopt;
  }
  RingElement power(const RingElement& x, int k, const Ast&) { return x.pow(k); }
  RingElement call(const Ast& a) { throw ParseError("bracket in a ring element", a.position); }
};

// --- Quantum plane --------------------------------------------------------------

struct PlaneAlgebra {
  PlaneElement constant(const Scalar& c) { return PlaneElement::constant(c); }
  PlaneElement name(const Ast& a) {
    if (auto v = q_variable(a.name); v && *v == 0 && !a.indexed) return constant(Scalar::q());
    if (a.name == "u" && !a.indexed) return PlaneElement::u();
    if (a.name == "v" && !a.indexed) return PlaneElement::v();
    if (a.name == "x" && !a.indexed) return x_of_plane();
    unknown(a, "the quantum plane");
  }
  PlaneElement add(const PlaneElement& x, const PlaneElement& y) { return x + y; }
  PlaneElement scale(const Scalar& c, const PlaneElement& x) { return x * c; }
  PlaneElement multiply(const PlaneElement& x, const PlaneElement& y) { return x * y; }
  std::optional<Scalar> as_scalar(const PlaneElement& x) {
    if (x.is_zero()) return Scalar();
    if (x.terms().size() == 1 && x.terms().begin()->first == PlaneElement::Key{0, 0}) {
      return x.terms().begin()->second;
    }
    return std::nullopt;
  }
  PlaneElement power(const PlaneElement& x, int k, const Ast& a) {
    if (k >= 0) return plane_power(x, k);
    if (x.terms().size() == 1 && x.terms().begin()->first.first == 0) {
      const auto& [key, c] = *x.terms().begin();
      return plane_power(PlaneElement::monomial(0, -key.second, c.inverse()), -k);
    }
    throw ParseError("only powers of v can be inverted", a.position);
  }
  PlaneElement call(const Ast& a) { throw ParseError("bracket in a plane element", a.position); }
};

// --- Operator expressions -------------------------------------------------------

struct OperatorExprAlgebra {
  RingTag tag;

  OperatorExpr constant(const Scalar& c) { return OperatorExpr::constant(c); }

  OperatorExpr name(const Ast& a) {
    if (auto v = q_variable(a.name); v && !a.indexed) return constant(Scalar::q(1, *v));
    const bool n_ring = tag.kind == RingKind::PolyN;
    auto index = [&](long i) {
      if (i < 1 || static_cast<std::size_t>(i) > tag.nvars) {
        throw ParseError("variable index out of range", a.position);
      }
      return static_cast<std::size_t>(i - 1);
    };
    if (a.name == "x" && !a.indexed) return ops::g(gen::x());
    if (a.name == "y" && !a.indexed) return ops::g(gen::y());
    if (a.name == "tau" && !a.indexed) return ops::g(gen::tau());
    if (a.name == "x" && a.indexed && a.indices.size() == 1) return ops::g(gen::x_i(index(a.indices[0])));
    if (a.name == "s" && a.indexed) {
      if (n_ring) {
        if (a.indices.size() != tag.nvars) {
          throw ParseError("s[...] needs " + std::to_string(tag.nvars) + " exponents", a.position);
        }
        Exponents e = zero_exponents();
        for (std::size_t i = 0; i < a.indices.size(); ++i) e[i] = narrow(a.indices[i], a);
        return ops::g(gen::sigma_vec(e));
      }
      if (a.indices.size() == 1) return ops::g(gen::sigma(narrow(a.indices[0], a)));
    }
    if (a.name == "D" && a.indexed) {
      if (a.indices.size() == 1 && !n_ring) return ops::g(gen::dbeta(narrow(a.indices[0], a)));
      if (a.indices.size() == 2) {
        return ops::g(gen::dbeta_i(index(a.indices[0]), narrow(a.indices[1], a)));
      }
      if (a.indices.size() == 1 && n_ring) {
        throw ParseError("use D[i,k] on a ring with several variables", a.position);
      }
    }
    unknown(a, "an operator expression");
  }

  OperatorExpr add(const OperatorExpr& x, const OperatorExpr& y) { return x + y; }
  OperatorExpr scale(const Scalar& c, const OperatorExpr& x) { return OperatorExpr::scale(c, x); }
  OperatorExpr multiply(const OperatorExpr& x, const OperatorExpr& y) {
    if (x.kind() == OperatorExpr::Kind::Constant) return OperatorExpr::scale(x.scalar(), y);
    return x * y;
  }
  std::optional<Scalar> as_scalar(const OperatorExpr& x) {
    if (x.kind() == OperatorExpr::Kind::Constant) return x.scalar();
    return std::nullopt;
  }
  OperatorExpr power(const OperatorExpr& x, int k, const Ast&) {
    if (x.kind() == OperatorExpr::Kind::Constant) return constant(x.scalar().pow(k));
    return OperatorExpr::power(x, k);
  }
  OperatorExpr call(const Ast& a) {
    const OperatorExpr lhs = interpret<OperatorExpr>(*a.args[0], *this);
    const OperatorExpr rhs = interpret<OperatorExpr>(*a.args[1], *this);
    const int twist = a.indices.empty() ? 0 : narrow(a.indices[0], a);
    return OperatorExpr::bracket(lhs, rhs, twist);
  }
};

}  // namespace detail

inline AstPtr parse_ast(std::string_view text) { return detail::Parser(text).parse(); }

inline Scalar parse_scalar(std::string_view text) {
  detail::ScalarAlgebra alg;
  return detail::interpret<Scalar>(*parse_ast(text), alg);
}

inline RingElement parse_ring_element(std::string_view text, const RingTag& tag) {
  detail::RingAlgebra alg{tag};
  return detail::interpret<RingElement>(*parse_ast(text), alg);
}

inline PlaneElement parse_plane_element(std::string_view text) {
  detail::PlaneAlgebra alg;
  return detail::interpret<PlaneElement>(*parse_ast(text), alg);
}

/// Operator expression; ring-specific names (D[i,k], s[a,b]) need the tag.
inline OperatorExpr parse_operator(std::string_view text, const RingTag& tag = RingTag::poly_x()) {
  detail::OperatorExprAlgebra alg{tag};
  return detail::interpret<OperatorExpr>(*parse_ast(text), alg);
}

/// Parses the ring selector used by the command line: x, y, laurent, n=<k>.
inline RingTag parse_ring_tag(std::string_view text) {
  if (text == "x") return RingTag::poly_x();
  if (text == "y") return RingTag::poly_y();
  if (text == "laurent") return RingTag::laurent();
  if (text.size() > 2 && text.substr(0, 2) == "n=") {
    const std::string digits(text.substr(2));
    if (digits.find_first_not_of("0123456789") == std::string::npos) {
      return RingTag::poly_n(static_cast<std::size_t>(std::stoul(digits)));
    }
  }
  throw ParseError("unknown ring '" + std::string(text) + "'", 0);
}

}  // namespace qdops

#endif  // QDOPS_PARSER_HPP
