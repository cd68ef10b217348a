#ifndef QDOPS_OPERATOR_HPP
#define QDOPS_OPERATOR_HPP

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "qdops/symbol.hpp"

namespace qdops {

/// Faithful representation of a graded operator on a monomial ring: the
/// basis monomial of exponent m goes to sum_e s_e(q^m, m) * monomial(m+e).
/// Parts are keyed by the exponent shift e. For PolyY the shift is in
/// y-exponents, so the grading degree of a part is -e.
class GradedOperator {
 public:
  using Parts = std::map<Exponents, Symbol>;

  explicit GradedOperator(RingTag domain = RingTag::poly_x()) : domain_(domain) {}

  GradedOperator(RingTag domain, const Exponents& shift, Symbol symbol) : domain_(domain) {
    add_part(shift, symbol);
  }

  static GradedOperator identity(RingTag domain) { return scalar(Scalar(1L), domain); }

  static GradedOperator scalar(const Scalar& c, RingTag domain) {
    return GradedOperator(domain, zero_exponents(), Symbol(c));
  }

  const RingTag& domain() const { return domain_; }
  const Parts& parts() const { return parts_; }
  bool is_zero() const { return parts_.empty(); }

  const Symbol& part(const Exponents& shift) const {
    static const Symbol zero;
    auto it = parts_.find(shift);
    return it == parts_.end() ? zero : it->second;
  }

  void add_part(const Exponents& shift, const Symbol& s) {
    if (s.is_zero()) return;
    auto [it, inserted] = parts_.emplace(shift, s);
    if (!inserted) {
      it->second += s;
      if (it->second.is_zero()) parts_.erase(it);
    }
  }

  /// c if the operator is multiplication by the constant c.
  std::optional<Scalar> as_scalar() const {
    if (parts_.empty()) return Scalar();
    if (parts_.size() != 1 || !qdops::is_zero(parts_.begin()->first)) return std::nullopt;
    return parts_.begin()->second.constant();
  }

  bool is_m_free() const {
    for (const auto& [e, s] : parts_) {
      if (!s.is_m_free()) return false;
    }
    return true;
  }

  int m_degree() const {
    int d = 0;
    for (const auto& [e, s] : parts_) d = std::max(d, s.m_degree());
    return d;
  }

  GradedOperator& operator+=(const GradedOperator& o) {
    require_same_domain(domain_, o.domain_);
    for (const auto& [e, s] : o.parts_) add_part(e, s);
    return *this;
  }
  GradedOperator& operator-=(const GradedOperator& o) { return *this += o * Scalar(-1L); }
  friend GradedOperator operator+(GradedOperator a, const GradedOperator& b) { return a += b; }
  friend GradedOperator operator-(GradedOperator a, const GradedOperator& b) { return a -= b; }
  GradedOperator operator-() const { return *this * Scalar(-1L); }

  friend GradedOperator operator*(GradedOperator a, const Scalar& c) {
    if (c.is_zero()) return GradedOperator(a.domain_);
    for (auto& [e, s] : a.parts_) s = s * c;
    return a;
  }
  friend GradedOperator operator*(const Scalar& c, GradedOperator a) { return std::move(a) * c; }

  /// Operator product: `inner` acts first.
  friend GradedOperator compose(const GradedOperator& outer, const GradedOperator& inner) {
    require_same_domain(outer.domain_, inner.domain_);
    GradedOperator out(outer.domain_);
    for (const auto& [e2, s2] : inner.parts_) {
      for (const auto& [e1, s1] : outer.parts_) {
        out.add_part(checked_add(e1, e2), s2 * s1.shifted(e2));
      }
    }
    return out;
  }
  friend GradedOperator operator*(const GradedOperator& a, const GradedOperator& b) {
    return compose(a, b);
  }

  GradedOperator pow(unsigned k) const {
    GradedOperator r = identity(domain_);
    for (unsigned i = 0; i < k; ++i) r = compose(r, *this);
    return r;
  }

  friend bool operator==(const GradedOperator& a, const GradedOperator& b) {
    require_same_domain(a.domain_, b.domain_);
    return a.parts_ == b.parts_;
  }

  /// The same operator with a different domain tag. Symbols are unchanged.
  GradedOperator retagged(RingTag domain) const {
    GradedOperator r = *this;
    r.domain_ = domain;
    return r;
  }

 private:
  RingTag domain_;
  Parts parts_;
};

inline bool equals(const GradedOperator& a, const GradedOperator& b) { return a == b; }

/// beta(a, d) = prod_k q_k^{a_k d_k}.
inline Scalar bicharacter(const Exponents& a, const Exponents& d) {
  Scalar r(1L);
  for (std::size_t k = 0; k < kMaxVars; ++k) {
    const long p = static_cast<long>(a[k]) * d[k];
    if (p != 0) r *= Scalar::q(static_cast<int>(p), k);
  }
  return r;
}

/// [phi, psi]_a = phi psi - sum_b beta(a, deg psi_b) psi_b phi.
inline GradedOperator twisted_bracket(const GradedOperator& phi, const GradedOperator& psi,
                                      const Exponents& twist) {
  require_same_domain(phi.domain(), psi.domain());
  GradedOperator out = compose(phi, psi);
  for (const auto& [e, s] : psi.parts()) {
    const GradedOperator part(psi.domain(), e, s);
    const Scalar b = bicharacter(twist, grading_degree(e, psi.domain()));
    out -= compose(part, phi) * b;
  }
  return out;
}

inline GradedOperator twisted_bracket(const GradedOperator& phi, const GradedOperator& psi,
                                      int twist) {
  return twisted_bracket(phi, psi, unit_exponents(0, twist));
}

inline GradedOperator bracket(const GradedOperator& phi, const GradedOperator& psi) {
  return compose(phi, psi) - compose(psi, phi);
}

/// Action on a ring element. Throws OutOfSupport if a nonzero coefficient
/// lands outside the ring (for example a negative power of x in k[x]).
inline RingElement apply(const GradedOperator& phi, const RingElement& p) {
  require_same_domain(phi.domain(), p.tag());
  RingElement out(p.tag());
  for (const auto& [m, c] : p.terms()) {
    for (const auto& [e, s] : phi.parts()) {
      const Scalar v = s.evaluate(m) * c;
      if (v.is_zero()) continue;
      out.add_term(checked_add(m, e), v);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Generators

enum class Gen { X, XInv, Y, Sigma, DBeta, Tau, XI, SigmaVec, DBetaI };

/// A generator leaf. `a` is the exponent for Sigma/DBeta and the k of
/// DBetaI; `index` is the zero-based coordinate for XI/DBetaI; `vec` the
/// exponent vector of SigmaVec.
struct Generator {
  Gen kind = Gen::X;
  int a = 0;
  std::size_t index = 0;
  Exponents vec{};

  friend bool operator==(const Generator&, const Generator&) = default;
  friend auto operator<=>(const Generator&, const Generator&) = default;
};

namespace gen {

inline Generator x() { return {Gen::X}; }
inline Generator x_inverse() { return {Gen::XInv}; }
inline Generator y() { return {Gen::Y}; }
inline Generator sigma(int a) { return {Gen::Sigma, a}; }
inline Generator dbeta(int a) { return {Gen::DBeta, a}; }
inline Generator tau() { return {Gen::Tau}; }
inline Generator x_i(std::size_t i) { return {Gen::XI, 0, i}; }
inline Generator sigma_vec(const Exponents& a) { return {Gen::SigmaVec, 0, 0, a}; }
inline Generator dbeta_i(std::size_t i, int k) { return {Gen::DBetaI, k, i}; }

}  // namespace gen

namespace detail {

const Exponents e0 = unit_exponents(0);

/// (u^a - 1)/(q^a - 1) in coordinate v, or m_v when a = 0.
inline Symbol beta_quotient(int a, std::size_t v) {
  if (a == 0) return Symbol::m_power(unit_exponents(v));
  const Scalar inv = (Scalar::q(a, v) - Scalar(1L)).inverse();
  Symbol s = Symbol::u_power(unit_exponents(v, a), inv);
  s.add_term(zero_exponents(), zero_exponents(), -inv);
  return s;
}

[[noreturn]] inline void mismatch(const std::string& what, const RingTag& tag) {
  throw DomainMismatch(what + " is not an operator on ring " + to_string(tag));
}

inline bool x_side(const RingTag& tag) {
  return tag.kind == RingKind::PolyX || tag.kind == RingKind::LaurentX;
}

}  // namespace detail

inline std::string to_string(const Generator& g) {
  switch (g.kind) {
    case Gen::X: return "x";
    case Gen::XInv: return "x^-1";
    case Gen::Y: return "y";
    case Gen::Sigma: return "s[" + std::to_string(g.a) + "]";
    case Gen::DBeta: return "D[" + std::to_string(g.a) + "]";
    case Gen::Tau: return "tau";
    case Gen::XI: return "x[" + std::to_string(g.index + 1) + "]";
    case Gen::SigmaVec: {
      std::string s = "s[";
      for (std::size_t i = 0; i < kMaxVars; ++i) {
        if (i > 0) s += ",";
        s += std::to_string(g.vec[i]);
      }
      return s + "]";
    }
    case Gen::DBetaI:
      return "D[" + std::to_string(g.index + 1) + "," + std::to_string(g.a) + "]";
  }
  return "?";
}

/// Printable form of a SigmaVec generator restricted to the ring's variables.
inline std::string to_string(const Generator& g, const RingTag& tag) {
  if (g.kind != Gen::SigmaVec) return to_string(g);
  std::string s = "s[";
  for (std::size_t i = 0; i < tag.nvars; ++i) {
    if (i > 0) s += ",";
    s += std::to_string(g.vec[i]);
  }
  return s + "]";
}

/// Operator of a generator on the given ring. On k[y] the names refer to
/// the y-side generators (y, sigma_y, the y-derivations); on k[x,x^-1],
/// y means x^-1.
inline GradedOperator generator(const Generator& g, const RingTag& tag) {
  using detail::e0;
  const bool xs = detail::x_side(tag);
  const bool ys = tag.kind == RingKind::PolyY;
  const bool ns = tag.kind == RingKind::PolyN;
  switch (g.kind) {
    case Gen::X:
      if (!xs) detail::mismatch("x", tag);
      return GradedOperator(tag, e0, Symbol(Scalar(1L)));
    case Gen::XInv:
      if (tag.kind != RingKind::LaurentX) detail::mismatch("x^-1", tag);
      return GradedOperator(tag, -e0, Symbol(Scalar(1L)));
    case Gen::Y:
      if (ys) return GradedOperator(tag, e0, Symbol(Scalar(1L)));
      if (tag.kind == RingKind::LaurentX) return GradedOperator(tag, -e0, Symbol(Scalar(1L)));
      detail::mismatch("y", tag);
    case Gen::Sigma:
      if (xs) return GradedOperator(tag, zero_exponents(), Symbol::u_power(unit_exponents(0, g.a)));
      // sigma_y(y^n) = q^{-n} y^n
      if (ys) return GradedOperator(tag, zero_exponents(), Symbol::u_power(unit_exponents(0, -g.a)));
      detail::mismatch(to_string(g), tag);
    case Gen::DBeta:
      if (xs) return GradedOperator(tag, -e0, detail::beta_quotient(g.a, 0));
      if (ys) {
        // y-derivation twisted by sigma_y^a: y^n -> ((q^{-an}-1)/(q^{-a}-1)) y^{n-1}
        if (g.a == 0) return GradedOperator(tag, -e0, Symbol::m_power(e0));
        const Scalar inv = (Scalar::q(-g.a) - Scalar(1L)).inverse();
        Symbol s = Symbol::u_power(unit_exponents(0, -g.a), inv);
        s.add_term(zero_exponents(), zero_exponents(), -inv);
        return GradedOperator(tag, -e0, s);
      }
      detail::mismatch(to_string(g), tag);
    case Gen::Tau:
      if (xs || ys) return GradedOperator(tag, zero_exponents(), Symbol::m_power(e0));
      detail::mismatch("tau", tag);
    case Gen::XI:
      if (!ns || g.index >= tag.nvars) detail::mismatch(to_string(g), tag);
      return GradedOperator(tag, unit_exponents(g.index), Symbol(Scalar(1L)));
    case Gen::SigmaVec:
      if (!ns) detail::mismatch(to_string(g), tag);
      for (std::size_t i = tag.nvars; i < kMaxVars; ++i) {
        if (g.vec[i] != 0) detail::mismatch(to_string(g), tag);
      }
      return GradedOperator(tag, zero_exponents(), Symbol::u_power(g.vec));
    case Gen::DBetaI: {
      if (!ns || g.index >= tag.nvars) detail::mismatch(to_string(g), tag);
      const std::size_t i = g.index;
      if (g.a == 0) return GradedOperator(tag, -unit_exponents(i), Symbol::m_power(unit_exponents(i)));
      // (u_i^k - 1)/(q_i - 1)
      const Scalar inv = (Scalar::q(1, i) - Scalar(1L)).inverse();
      Symbol s = Symbol::u_power(unit_exponents(i, g.a), inv);
      s.add_term(zero_exponents(), zero_exponents(), -inv);
      return GradedOperator(tag, -unit_exponents(i), s);
    }
  }
  detail::mismatch("unknown generator", tag);
}

/// Maps an operator on k[x] or k[y] to k[x, x^-1], where y = x^-1.
inline GradedOperator extend_to_laurent(const GradedOperator& phi) {
  const RingTag target = RingTag::laurent();
  switch (phi.domain().kind) {
    case RingKind::PolyX:
    case RingKind::LaurentX:
      return phi.retagged(target);
    case RingKind::PolyY: {
      GradedOperator out(target);
      for (const auto& [d, t] : phi.parts()) out.add_part(-d, t.inverted());
      return out;
    }
    case RingKind::PolyN:
      break;
  }
  throw DomainMismatch("only one-variable operators extend to k[x,x^-1]");
}

inline bool is_m_free(const GradedOperator& phi) { return phi.is_m_free(); }

/// Necessary condition for preserving k[x] (or k[y], k[x_1..x_n]): every
/// part of negative shift vanishes on the basis monomials it would push
/// below exponent zero.
inline bool preserves_polynomials(const GradedOperator& phi) {
  if (phi.domain().kind == RingKind::LaurentX) return true;
  for (const auto& [e, s] : phi.parts()) {
    for (std::size_t v = 0; v < phi.domain().nvars; ++v) {
      if (e[v] >= 0) continue;
      // Basis exponents with coordinate v in [0, -e_v) and other
      // coordinates small are sampled; the symbol must vanish on all.
      for (int j = 0; j < -e[v]; ++j) {
        Exponents m = zero_exponents();
        m[v] = j;
        for (int other = 0; other <= 2; ++other) {
          for (std::size_t w = 0; w < phi.domain().nvars; ++w) {
            if (w != v) m[w] = other;
          }
          if (!s.evaluate(m).is_zero()) return false;
        }
      }
    }
  }
  return true;
}

/// One "deg=e: symbol" line per part.
inline std::string to_string(const GradedOperator& phi) {
  if (phi.is_zero()) return "0";
  std::string out;
  const std::size_t n = phi.domain().nvars;
  for (const auto& [e, s] : phi.parts()) {
    if (!out.empty()) out += "\n";
    out += "deg=";
    if (n == 1) {
      out += std::to_string(e[0]);
    } else {
      out += "(";
      for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) out += ",";
        out += std::to_string(e[i]);
      }
      out += ")";
    }
    out += ": " + to_string(s, n);
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const GradedOperator& phi) {
  return os << to_string(phi);
}

}  // namespace qdops

#endif  // QDOPS_OPERATOR_HPP
