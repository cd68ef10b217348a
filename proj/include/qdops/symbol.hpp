#ifndef QDOPS_SYMBOL_HPP
#define QDOPS_SYMBOL_HPP

#include <algorithm>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "qdops/ring.hpp"

namespace qdops {

/// Coefficient function of a homogeneous operator: a finite sum
/// c * u^i * m^j where u_k stands for q_k^{m_k}. The u-exponents range over
/// Z^n, the m-exponents over N^n.
class Symbol {
 public:
  using Key = std::pair<Exponents, Exponents>;  // (u-exponents, m-exponents)
  using Terms = std::map<Key, Scalar>;

  Symbol() = default;
  explicit Symbol(const Scalar& c) { add_term(zero_exponents(), zero_exponents(), c); }

  static Symbol u_power(const Exponents& i, const Scalar& c = Scalar(1L)) {
    Symbol s;
    s.add_term(i, zero_exponents(), c);
    return s;
  }
  static Symbol m_power(const Exponents& j, const Scalar& c = Scalar(1L)) {
    Symbol s;
    s.add_term(zero_exponents(), j, c);
    return s;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Exponents& i, const Exponents& j, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(Key{i, j}, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Symbol& operator+=(const Symbol& o) {
    for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
    return *this;
  }
  Symbol& operator-=(const Symbol& o) {
    for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, -c);
    return *this;
  }
  friend Symbol operator+(Symbol a, const Symbol& b) { return a += b; }
  friend Symbol operator-(Symbol a, const Symbol& b) { return a -= b; }
  Symbol operator-() const { return *this * Scalar(-1L); }

  friend Symbol operator*(Symbol a, const Scalar& c) {
    if (c.is_zero()) return Symbol();
    for (auto& [k, v] : a.terms_) v *= c;
    return a;
  }

  friend Symbol operator*(const Symbol& a, const Symbol& b) {
    Symbol out;
    for (const auto& [k1, c1] : a.terms_) {
      for (const auto& [k2, c2] : b.terms_) {
        out.add_term(checked_add(k1.first, k2.first), checked_add(k1.second, k2.second), c1 * c2);
      }
    }
    return out;
  }

  friend bool operator==(const Symbol&, const Symbol&) = default;

  /// s(q^e u, m + e): the symbol seen from a basis exponent shifted by e.
  Symbol shifted(const Exponents& e) const {
    if (qdops::is_zero(e)) return *this;
    Symbol out;
    for (const auto& [k, c] : terms_) {
      const auto& [i, j] = k;
      Scalar coeff = c;
      for (std::size_t v = 0; v < kMaxVars; ++v) {
        const long p = static_cast<long>(i[v]) * e[v];
        if (p != 0) coeff *= Scalar::q(static_cast<int>(p), v);
      }
      // Expand prod_v (m_v + e_v)^{j_v} binomially.
      Symbol expansion = Symbol::u_power(i, coeff);
      for (std::size_t v = 0; v < kMaxVars; ++v) {
        if (j[v] == 0) continue;
        Symbol factor;
        mpz_class binom = 1;
        mpz_class epow = 1;
        // (m + e)^J = sum_r C(J, r) e^{J-r} m^r
        std::vector<mpz_class> epows(static_cast<std::size_t>(j[v]) + 1);
        for (int r = 0; r <= j[v]; ++r) {
          epows[static_cast<std::size_t>(r)] = epow;
          epow *= e[v];
        }
        for (int r = j[v]; r >= 0; --r) {
          factor.add_term(zero_exponents(), unit_exponents(v, r),
                          Scalar(mpq_class(binom * epows[static_cast<std::size_t>(j[v] - r)])));
          binom = binom * r / (j[v] - r + 1);
        }
        expansion = expansion * factor;
      }
      out += expansion;
    }
    return out;
  }

  /// Coefficient function at the basis exponent m.
  Scalar evaluate(const Exponents& m) const {
    Scalar total;
    for (const auto& [k, c] : terms_) {
      const auto& [i, j] = k;
      Scalar term = c;
      for (std::size_t v = 0; v < kMaxVars; ++v) {
        const long p = static_cast<long>(i[v]) * m[v];
        if (p != 0) term *= Scalar::q(static_cast<int>(p), v);
        if (j[v] != 0) {
          mpz_class mp;
          mpz_pow_ui(mp.get_mpz_t(), mpz_class(m[v]).get_mpz_t(), static_cast<unsigned long>(j[v]));
          term *= Scalar(mpq_class(mp));
        }
      }
      total += term;
    }
    return total;
  }

  bool is_m_free() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const auto& t) { return qdops::is_zero(t.first.second); });
  }

  int m_degree() const {
    int d = 0;
    for (const auto& [k, c] : terms_) {
      int s = 0;
      for (int v : k.second) s += v;
      d = std::max(d, s);
    }
    return d;
  }

  /// Constant symbol c (no u, no m) if it is one.
  std::optional<Scalar> constant() const {
    if (terms_.empty()) return Scalar();
    if (terms_.size() != 1) return std::nullopt;
    const auto& [k, c] = *terms_.begin();
    if (!qdops::is_zero(k.first) || !qdops::is_zero(k.second)) return std::nullopt;
    return c;
  }

  /// t(u^{-1}, -m).
  Symbol inverted() const {
    Symbol out;
    for (const auto& [k, c] : terms_) {
      int jt = 0;
      for (int v : k.second) jt += v;
      out.add_term(-k.first, k.second, (jt % 2 == 0) ? c : -c);
    }
    return out;
  }

  unsigned variable_mask() const {
    unsigned mask = 0;
    for (const auto& [k, c] : terms_) {
      mask |= c.variable_mask();
      for (std::size_t v = 0; v < kMaxVars; ++v) {
        if (k.first[v] != 0 || k.second[v] != 0) mask |= 1U << v;
      }
    }
    return mask;
  }

 private:
  Terms terms_;
};

namespace detail {

inline Poly lcm(const Poly& a, const Poly& b) {
  return *divide_exact(a * b, gcd(a, b));
}

inline std::string symbol_monomial(const Exponents& i, const Exponents& j, std::size_t nvars) {
  std::string out;
  auto append = [&](const std::string& piece) {
    if (piece.empty()) return;
    if (!out.empty()) out += "*";
    out += piece;
  };
  for (std::size_t v = 0; v < nvars; ++v) {
    append(power_string(nvars == 1 ? "u" : "u" + std::to_string(v + 1), i[v]));
  }
  for (std::size_t v = 0; v < nvars; ++v) {
    append(power_string(nvars == 1 ? "m" : "m" + std::to_string(v + 1), j[v]));
  }
  return out;
}

}  // namespace detail

/// Symbol over a common denominator, e.g. "(u-1)/(q-1)". `nvars` selects
/// between the one-variable names (u, m, q) and indexed ones.
inline std::string to_string(const Symbol& s, std::size_t nvars = 1) {
  if (s.is_zero()) return "0";
  Poly den(1L);
  for (const auto& [k, c] : s.terms()) den = detail::lcm(den, c.denominator());
  den = den.normalized();
  // A monomial denominator is folded into the coefficients as negative powers.
  const bool fold = den.terms().size() == 1;
  const Scalar scale = fold ? Scalar(1L) : Scalar(den);
  std::vector<std::pair<Symbol::Key, Scalar>> ordered(s.terms().begin(), s.terms().end());
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    return a.first > b.first;
  });
  const std::size_t qvars = nvars == 1 ? 1 : kMaxVars;
  std::vector<std::string> parts;
  for (const auto& [k, c] : ordered) {
    const Scalar coeff = c * scale;
    const std::string mono = detail::symbol_monomial(k.first, k.second, nvars);
    if (mono.empty()) {
      parts.push_back(to_string(coeff, qvars, true));
      continue;
    }
    if (coeff.is_one()) {
      parts.push_back(mono);
    } else if (coeff == Scalar(-1L)) {
      parts.push_back("-" + mono);
    } else if (is_atomic_scalar(coeff)) {
      parts.push_back(to_string(coeff, qvars, true) + "*" + mono);
    } else if (is_atomic_scalar(-coeff)) {
      parts.push_back("-" + to_string(-coeff, qvars, true) + "*" + mono);
    } else {
      parts.push_back("(" + to_string(coeff, qvars, true) + ")*" + mono);
    }
  }
  const std::string num = detail::join_terms(parts);
  if (fold) return num;
  const std::string den_str = poly_to_string(den, qvars, zero_exponents(), true);
  return (parts.size() > 1 ? "(" + num + ")" : num) + "/(" + den_str + ")";
}

inline std::ostream& operator<<(std::ostream& os, const Symbol& s) { return os << to_string(s); }

}  // namespace qdops

#endif  // QDOPS_SYMBOL_HPP
