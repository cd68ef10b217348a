#ifndef QDOPS_RING_HPP
#define QDOPS_RING_HPP

#include <limits>
#include <map>
#include <ostream>
#include <string>
#include <utility>

#include "qdops/scalar.hpp"

namespace qdops {

enum class RingKind { PolyX, PolyY, LaurentX, PolyN };

/// Which monomial ring an element or operator lives on. PolyN carries the
/// number of variables; every other kind has exactly one.
struct RingTag {
  RingKind kind = RingKind::PolyX;
  std::size_t nvars = 1;

  static RingTag poly_x() { return {RingKind::PolyX, 1}; }
  static RingTag poly_y() { return {RingKind::PolyY, 1}; }
  static RingTag laurent() { return {RingKind::LaurentX, 1}; }
  static RingTag poly_n(std::size_t n) {
    if (n < 1 || n > kMaxVars) {
      throw DomainMismatch("number of variables must be in 1.." + std::to_string(kMaxVars));
    }
    return {RingKind::PolyN, n};
  }

  bool allows_negative_exponents() const { return kind == RingKind::LaurentX; }

  friend bool operator==(const RingTag&, const RingTag&) = default;
};

inline std::string to_string(const RingTag& tag) {
  switch (tag.kind) {
    case RingKind::PolyX: return "x";
    case RingKind::PolyY: return "y";
    case RingKind::LaurentX: return "laurent";
    case RingKind::PolyN: return "n=" + std::to_string(tag.nvars);
  }
  return "?";
}

/// Grading degree of a basis exponent: y has degree -1, everything else
/// is graded by its exponent vector.
inline Exponents grading_degree(const Exponents& exponent, const RingTag& tag) {
  return tag.kind == RingKind::PolyY ? -exponent : exponent;
}

inline int checked_add(int a, int b) {
  int r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow("exponent overflow");
  return r;
}

inline Exponents checked_add(const Exponents& a, const Exponents& b) {
  Exponents r{};
  for (std::size_t i = 0; i < kMaxVars; ++i) r[i] = checked_add(a[i], b[i]);
  return r;
}

inline void require_same_domain(const RingTag& a, const RingTag& b) {
  if (!(a == b)) {
    throw DomainMismatch("ring " + to_string(a) + " vs ring " + to_string(b));
  }
}

/// Finite Scalar-combination of monomials of one ring.
class RingElement {
 public:
  using Terms = std::map<Exponents, Scalar>;

  explicit RingElement(RingTag tag = RingTag::poly_x()) : tag_(tag) {}

  static RingElement constant(const Scalar& c, RingTag tag) {
    RingElement r(tag);
    r.add_term(zero_exponents(), c);
    return r;
  }

  static RingElement monomial(const Exponents& e, const Scalar& c, RingTag tag) {
    RingElement r(tag);
    r.add_term(e, c);
    return r;
  }

  /// Variable `var` (x, y or x_{var+1} depending on the tag).
  static RingElement variable(RingTag tag, std::size_t var = 0) {
    if (var >= tag.nvars) throw DomainMismatch("variable index out of range");
    return monomial(unit_exponents(var), Scalar(1L), tag);
  }

  const RingTag& tag() const { return tag_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Exponents& e, const Scalar& c) {
    check_support(e);
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  void check_support(const Exponents& e) const {
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      if (i >= tag_.nvars && e[i] != 0) throw OutOfSupport("exponent in unused variable");
      if (e[i] < 0 && !tag_.allows_negative_exponents()) {
        throw OutOfSupport("negative exponent in ring " + to_string(tag_));
      }
    }
  }

  RingElement& operator+=(const RingElement& o) {
    require_same_domain(tag_, o.tag_);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  RingElement& operator-=(const RingElement& o) { return *this += o * Scalar(-1L); }

  friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
  friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
  friend RingElement operator*(RingElement a, const Scalar& c) {
    if (c.is_zero()) return RingElement(a.tag_);
    for (auto& [e, v] : a.terms_) v *= c;
    return a;
  }
  friend RingElement operator*(const RingElement& a, const RingElement& b) {
    return ring_multiply(a, b, a.tag_);
  }

  friend RingElement ring_multiply(const RingElement& p, const RingElement& r,
                                   const RingTag& tag) {
    require_same_domain(p.tag_, tag);
    require_same_domain(r.tag_, tag);
    RingElement out(tag);
    for (const auto& [e1, c1] : p.terms_) {
      for (const auto& [e2, c2] : r.terms_) out.add_term(checked_add(e1, e2), c1 * c2);
    }
    return out;
  }

  RingElement pow(long k) const {
    if (k < 0) {
      if (terms_.size() != 1) throw OutOfSupport("only monomials have inverses");
      const auto& [e, c] = *terms_.begin();
      RingElement inv(tag_);
      inv.add_term(-e, c.inverse());
      return inv.pow(-k);
    }
    RingElement r = constant(Scalar(1L), tag_);
    for (long i = 0; i < k; ++i) r = r * *this;
    return r;
  }

  /// Homogeneous degree if every term has the same grading degree.
  std::optional<Exponents> homogeneous_degree() const {
    std::optional<Exponents> d;
    for (const auto& [e, c] : terms_) {
      const Exponents g = grading_degree(e, tag_);
      if (d && *d != g) return std::nullopt;
      d = g;
    }
    return d;
  }

  friend bool operator==(const RingElement& a, const RingElement& b) {
    return a.tag_ == b.tag_ && a.terms_ == b.terms_;
  }

 private:
  RingTag tag_;
  Terms terms_;
};

namespace detail {

/// "c*m", "m", "-m", "(c)*m" with the sign pulled out front where possible.
inline std::string coefficient_times(const Scalar& c, const std::string& mono) {
  if (mono.empty()) return to_string(c);
  if (c.is_one()) return mono;
  if (c == Scalar(-1L)) return "-" + mono;
  if (is_atomic_scalar(c)) return to_string(c) + "*" + mono;
  const Scalar neg = -c;
  if (is_atomic_scalar(neg)) return "-" + to_string(neg) + "*" + mono;
  return "(" + to_string(c) + ")*" + mono;
}

inline std::string join_terms(const std::vector<std::string>& parts) {
  if (parts.empty()) return "0";
  std::string out;
  for (const auto& s : parts) {
    if (!out.empty() && s.front() != '-') out += "+";
    out += s;
  }
  return out;
}

inline std::string power_string(const std::string& base, int e) {
  if (e == 0) return "";
  if (e == 1) return base;
  return base + "^" + std::to_string(e);
}

}  // namespace detail

inline std::string monomial_string(const Exponents& e, const RingTag& tag) {
  std::string out;
  for (std::size_t i = 0; i < tag.nvars; ++i) {
    std::string name;
    switch (tag.kind) {
      case RingKind::PolyY: name = "y"; break;
      case RingKind::PolyN: name = "x[" + std::to_string(i + 1) + "]"; break;
      default: name = "x"; break;
    }
    const std::string piece = detail::power_string(name, e[i]);
    if (piece.empty()) continue;
    if (!out.empty()) out += "*";
    out += piece;
  }
  return out;
}

/// Terms in ascending exponent order, e.g. "1-x^2" or "(1+q+q^2)*x^2".
inline std::string to_string(const RingElement& r) {
  std::vector<std::string> parts;
  for (const auto& [e, c] : r.terms()) {
    parts.push_back(detail::coefficient_times(c, monomial_string(e, r.tag())));
  }
  return detail::join_terms(parts);
}

inline std::ostream& operator<<(std::ostream& os, const RingElement& r) {
  return os << to_string(r);
}

// ---------------------------------------------------------------------------
// Quantum plane u v = q v u, localized at powers of v.

/// Normal-form element sum c_{ab} u^a v^b with a >= 0 and b in Z.
class PlaneElement {
 public:
  using Key = std::pair<int, int>;
  using Terms = std::map<Key, Scalar>;

  PlaneElement() = default;

  static PlaneElement monomial(int a, int b, const Scalar& c = Scalar(1L)) {
    PlaneElement p;
    p.add_term(a, b, c);
    return p;
  }
  static PlaneElement constant(const Scalar& c) { return monomial(0, 0, c); }
  static PlaneElement u() { return monomial(1, 0); }
  static PlaneElement v() { return monomial(0, 1); }
  static PlaneElement v_inverse() { return monomial(0, -1); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(int a, int b, const Scalar& c) {
    if (a < 0) throw OutOfSupport("negative u-exponent in the quantum plane");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(Key{a, b}, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  PlaneElement& operator+=(const PlaneElement& o) {
    for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
    return *this;
  }
  PlaneElement& operator-=(const PlaneElement& o) { return *this += o * Scalar(-1L); }
  friend PlaneElement operator+(PlaneElement a, const PlaneElement& b) { return a += b; }
  friend PlaneElement operator-(PlaneElement a, const PlaneElement& b) { return a -= b; }
  friend PlaneElement operator*(PlaneElement a, const Scalar& c) {
    if (c.is_zero()) return PlaneElement();
    for (auto& [k, v] : a.terms_) v *= c;
    return a;
  }

  friend bool operator==(const PlaneElement&, const PlaneElement&) = default;

 private:
  Terms terms_;
};

/// Product in normal form: u^a v^b * u^c v^d = q^{-bc} u^{a+c} v^{b+d}.
inline PlaneElement plane_multiply(const PlaneElement& s, const PlaneElement& t) {
  PlaneElement out;
  for (const auto& [k1, c1] : s.terms()) {
    for (const auto& [k2, c2] : t.terms()) {
      const long twist = -static_cast<long>(k1.second) * k2.first;
      if (twist > std::numeric_limits<int>::max() || twist < std::numeric_limits<int>::min()) {
        throw Overflow("q-exponent overflow in the quantum plane");
      }
      out.add_term(checked_add(k1.first, k2.first), checked_add(k1.second, k2.second),
                   c1 * c2 * Scalar::q(static_cast<int>(twist)));
    }
  }
  return out;
}

inline PlaneElement operator*(const PlaneElement& s, const PlaneElement& t) {
  return plane_multiply(s, t);
}

/// x = u v^{-1}.
inline PlaneElement x_of_plane() { return PlaneElement::monomial(1, -1); }

inline PlaneElement plane_power(const PlaneElement& s, int k) {
  if (k < 0) throw OutOfSupport("negative power of a plane element");
  PlaneElement r = PlaneElement::constant(Scalar(1L));
  for (int i = 0; i < k; ++i) r = plane_multiply(r, s);
  return r;
}

inline std::string to_string(const PlaneElement& p) {
  std::vector<std::string> parts;
  for (const auto& [k, c] : p.terms()) {
    std::string mono = detail::power_string("u", k.first);
    const std::string vpart = detail::power_string("v", k.second);
    if (!vpart.empty()) mono += (mono.empty() ? "" : "*") + vpart;
    parts.push_back(detail::coefficient_times(c, mono));
  }
  return detail::join_terms(parts);
}

inline std::ostream& operator<<(std::ostream& os, const PlaneElement& p) {
  return os << to_string(p);
}

}  // namespace qdops

#endif  // QDOPS_RING_HPP
