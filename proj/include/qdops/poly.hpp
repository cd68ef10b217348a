#ifndef QDOPS_POLY_HPP
#define QDOPS_POLY_HPP

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qdops/error.hpp"

#ifndef QDOPS_MAX_VARS
#define QDOPS_MAX_VARS 3
#endif

namespace qdops {

/// Number of independent q-variables (and coordinates of Z^n gradings) the
/// engine supports. Override with -DQDOPS_MAX_VARS=<n>.
inline constexpr std::size_t kMaxVars = QDOPS_MAX_VARS;

using Exponents = std::array<int, kMaxVars>;

inline Exponents zero_exponents() {
  Exponents e{};
  e.fill(0);
  return e;
}

inline Exponents unit_exponents(std::size_t i, int value = 1) {
  Exponents e = zero_exponents();
  e.at(i) = value;
  return e;
}

inline Exponents operator+(Exponents a, const Exponents& b) {
  for (std::size_t i = 0; i < kMaxVars; ++i) a[i] += b[i];
  return a;
}

inline Exponents operator-(Exponents a, const Exponents& b) {
  for (std::size_t i = 0; i < kMaxVars; ++i) a[i] -= b[i];
  return a;
}

inline Exponents operator-(Exponents a) {
  for (auto& v : a) v = -v;
  return a;
}

inline bool is_zero(const Exponents& e) {
  return std::all_of(e.begin(), e.end(), [](int v) { return v == 0; });
}

inline mpq_class make_rational(long num, long den = 1) {
  if (den == 0) throw DivisionByZero("rational with zero denominator");
  mpq_class r(num, den);
  r.canonicalize();
  return r;
}

/// Sparse multivariate polynomial with rational coefficients in the
/// variables q_1..q_kMaxVars. Exponents are non-negative.
class Poly {
 public:
  using Terms = std::map<Exponents, mpq_class>;

  Poly() = default;
  explicit Poly(const mpq_class& c) { add_term(zero_exponents(), c); }
  explicit Poly(long c) : Poly(mpq_class(c)) {}

  static Poly variable(std::size_t var, int power = 1) {
    Poly p;
    p.add_term(unit_exponents(var, power), mpq_class(1));
    return p;
  }

  static Poly monomial(const Exponents& e, const mpq_class& c) {
    Poly p;
    p.add_term(e, c);
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && qdops::is_zero(terms_.begin()->first));
  }

  mpq_class constant_term() const {
    auto it = terms_.find(zero_exponents());
    return it == terms_.end() ? mpq_class(0) : it->second;
  }

  /// Lex-leading term; the polynomial must be nonzero.
  const std::pair<const Exponents, mpq_class>& leading() const {
    return *terms_.rbegin();
  }

  int degree(std::size_t var) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
  }

  int min_degree(std::size_t var) const {
    if (terms_.empty()) return -1;
    int d = terms_.begin()->first[var];
    for (const auto& [e, c] : terms_) d = std::min(d, e[var]);
    return d;
  }

  bool uses(std::size_t var) const { return degree(var) > 0; }

  /// Highest-index variable that occurs, if any.
  std::optional<std::size_t> main_variable() const {
    for (std::size_t v = kMaxVars; v-- > 0;) {
      if (uses(v)) return v;
    }
    return std::nullopt;
  }

  /// Bitmask of occurring variables.
  unsigned variable_mask() const {
    unsigned mask = 0;
    for (const auto& [e, c] : terms_) {
      for (std::size_t v = 0; v < kMaxVars; ++v) {
        if (e[v] != 0) mask |= 1U << v;
      }
    }
    return mask;
  }

  void add_term(const Exponents& e, const mpq_class& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Poly& operator+=(const Poly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  Poly& operator-=(const Poly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    }
    return r;
  }

  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend Poly operator*(Poly a, const mpq_class& c) {
    if (c == 0) return Poly();
    for (auto& [e, v] : a.terms_) v *= c;
    return a;
  }

  Poly times_monomial(const Exponents& e, const mpq_class& c) const {
    Poly r;
    if (c == 0) return r;
    for (const auto& [ex, v] : terms_) r.terms_.emplace(ex + e, v * c);
    return r;
  }

  Poly pow(unsigned k) const {
    Poly result(1L);
    Poly base = *this;
    while (k > 0) {
      if (k & 1U) result *= base;
      k >>= 1U;
      if (k > 0) base *= base;
    }
    return result;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.terms_ == b.terms_;
  }

  /// Coefficients with respect to `var`; each coefficient has that variable
  /// removed.
  std::map<int, Poly> coefficients_in(std::size_t var) const {
    std::map<int, Poly> out;
    for (const auto& [e, c] : terms_) {
      Exponents rest = e;
      rest[var] = 0;
      out[e[var]].add_term(rest, c);
    }
    return out;
  }

  Poly coefficient_in(std::size_t var, int power) const {
    Poly r;
    for (const auto& [e, c] : terms_) {
      if (e[var] != power) continue;
      Exponents rest = e;
      rest[var] = 0;
      r.add_term(rest, c);
    }
    return r;
  }

  /// Replace variable `from` by `to` (the target must not occur).
  Poly renamed(std::size_t from, std::size_t to) const {
    if (from == to) return *this;
    Poly r;
    for (const auto& [e, c] : terms_) {
      Exponents n = e;
      n[to] += n[from];
      n[from] = 0;
      r.add_term(n, c);
    }
    return r;
  }

  /// Divide every coefficient so the lex-leading coefficient becomes 1.
  Poly normalized() const {
    if (is_zero()) return *this;
    return *this * (mpq_class(1) / leading().second);
  }

 private:
  Terms terms_;
};

/// Exact division; nullopt when `b` does not divide `a`.
inline std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (a.is_zero()) return Poly();
  if (b.is_constant()) return a * (mpq_class(1) / b.constant_term());
  const auto& [lead_e, lead_c] = b.leading();
  Poly rem = a;
  Poly quot;
  while (!rem.is_zero()) {
    const auto& [e, c] = rem.leading();
    Exponents d = e - lead_e;
    if (std::any_of(d.begin(), d.end(), [](int v) { return v < 0; })) {
      return std::nullopt;
    }
    mpq_class factor = c / lead_c;
    quot.add_term(d, factor);
    rem -= b.times_monomial(d, factor);
  }
  return quot;
}

namespace detail {

inline Poly univariate_remainder(Poly a, const Poly& b, std::size_t var) {
  const int db = b.degree(var);
  const Poly lead = b.coefficient_in(var, db);
  const mpq_class lc = lead.constant_term();
  while (!a.is_zero() && a.degree(var) >= db) {
    const int da = a.degree(var);
    const mpq_class ca = a.coefficient_in(var, da).constant_term();
    a -= b.times_monomial(unit_exponents(var, da - db), ca / lc);
  }
  return a;
}

inline Poly pseudo_remainder(Poly a, const Poly& b, std::size_t var) {
  const int db = b.degree(var);
  const Poly lead = b.coefficient_in(var, db);
  while (!a.is_zero() && a.degree(var) >= db) {
    const int da = a.degree(var);
    const Poly ca = a.coefficient_in(var, da);
    a = a * lead - ca * b.times_monomial(unit_exponents(var, da - db), 1);
  }
  return a;
}

}  // namespace detail

inline Poly gcd(const Poly& a, const Poly& b);

/// gcd of the coefficients of `p` viewed as a polynomial in `var`.
inline Poly content_in(const Poly& p, std::size_t var) {
  Poly g;
  for (const auto& [k, c] : p.coefficients_in(var)) {
    g = gcd(g, c);
    if (g.is_constant()) return Poly(1L);
  }
  return g;
}

inline Poly primitive_part_in(const Poly& p, std::size_t var) {
  if (p.is_zero()) return p;
  return *divide_exact(p, content_in(p, var));
}

/// Greatest common divisor, normalized to lex-leading coefficient 1.
/// Univariate inputs use Euclid over Q; otherwise a recursive primitive
/// remainder sequence in the highest occurring variable.
inline Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.normalized();
  if (b.is_zero()) return a.normalized();
  if (a.is_constant() || b.is_constant()) return Poly(1L);

  const std::size_t var =
      std::max(*a.main_variable(), *b.main_variable());
  const bool a_has = a.uses(var);
  const bool b_has = b.uses(var);
  if (!a_has) return gcd(a, content_in(b, var));
  if (!b_has) return gcd(content_in(a, var), b);

  const unsigned mask = a.variable_mask() | b.variable_mask();
  if (mask == (1U << var)) {
    Poly x = a;
    Poly y = b;
    while (!y.is_zero()) {
      Poly r = detail::univariate_remainder(x, y, var);
      x = std::move(y);
      y = std::move(r);
    }
    return x.normalized();
  }

  const Poly ca = content_in(a, var);
  const Poly cb = content_in(b, var);
  Poly x = *divide_exact(a, ca);
  Poly y = *divide_exact(b, cb);
  const Poly g = gcd(ca, cb);
  while (!y.is_zero()) {
    Poly r = detail::pseudo_remainder(x, y, var);
    x = std::move(y);
    y = r.is_zero() ? r : primitive_part_in(r, var);
  }
  return (g * primitive_part_in(x, var)).normalized();
}

/// Coefficients of p(1 + t) for a polynomial in the single variable `var`;
/// index k holds the coefficient of t^k.
inline std::vector<mpq_class> expand_at_one(const Poly& p, std::size_t var = 0) {
  const int deg = p.degree(var);
  if (deg < 0) return {};
  std::vector<mpq_class> dense(static_cast<std::size_t>(deg) + 1, 0);
  for (const auto& [e, c] : p.terms()) dense[static_cast<std::size_t>(e[var])] += c;
  // Horner in (1 + t).
  std::vector<mpq_class> out{dense.back()};
  for (int k = deg - 1; k >= 0; --k) {
    std::vector<mpq_class> next(out.size() + 1, 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
      next[i] += out[i];
      next[i + 1] += out[i];
    }
    next[0] += dense[static_cast<std::size_t>(k)];
    out = std::move(next);
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

inline std::string rational_to_string(const mpq_class& c) { return c.get_str(); }

/// Variable display names: "q" when only one q-variable is in play,
/// otherwise "q1", "q2", ...
inline std::string variable_name(std::size_t var, std::size_t nvars) {
  if (nvars <= 1) return "q";
  return "q" + std::to_string(var + 1);
}

inline std::string monomial_to_string(const Exponents& e, std::size_t nvars) {
  std::string out;
  for (std::size_t v = 0; v < kMaxVars; ++v) {
    if (e[v] == 0) continue;
    if (!out.empty()) out += "*";
    out += variable_name(v, nvars);
    if (e[v] != 1) out += "^" + std::to_string(e[v]);
  }
  return out;
}

/// Terms ordered by ascending total degree, e.g. "1+q+q^2", or descending
/// ("q-1") when asked; ties put earlier variables first ("q1+q2").
/// Each exponent vector is shifted by `offset` (used for Laurent display).
inline std::string poly_to_string(const Poly& p, std::size_t nvars,
                                  const Exponents& offset = zero_exponents(),
                                  bool descending = false) {
  if (p.is_zero()) return "0";
  std::vector<std::pair<Exponents, mpq_class>> ordered(p.terms().begin(),
                                                       p.terms().end());
  auto total = [](const Exponents& e) {
    int s = 0;
    for (int v : e) s += v;
    return s;
  };
  std::stable_sort(ordered.begin(), ordered.end(), [&](const auto& x, const auto& y) {
    const int tx = total(x.first), ty = total(y.first);
    if (tx != ty) return descending ? tx > ty : tx < ty;
    return x.first > y.first;
  });
  std::string out;
  bool first = true;
  for (const auto& [e0, c] : ordered) {
    const Exponents e = e0 + offset;
    const std::string mono = monomial_to_string(e, nvars);
    mpq_class mag = abs(c);
    const bool negative = c < 0;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? "-" : "+";
    }
    first = false;
    if (mono.empty()) {
      out += rational_to_string(mag);
    } else if (mag == 1) {
      out += mono;
    } else {
      out += rational_to_string(mag) + "*" + mono;
    }
  }
  return out;
}

}  // namespace qdops

#endif  // QDOPS_POLY_HPP
