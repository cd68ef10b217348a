#ifndef QDOPS_SCALAR_HPP
#define QDOPS_SCALAR_HPP

#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qdops/poly.hpp"

namespace qdops {

/// Element of Q(q_1, ..., q_n): a reduced fraction of polynomials whose
/// denominator has lex-leading coefficient 1. Laurent monomials such as
/// q^-1 are fractions with denominator q^k, so one representation covers
/// everything and equality is structural.
class Scalar {
 public:
  Scalar() : den_(1L) {}
  Scalar(long c) : num_(c), den_(1L) {}  // NOLINT: implicit by design of the algebra
  explicit Scalar(const mpq_class& c) : num_(c), den_(1L) {}
  explicit Scalar(const Poly& p) : num_(p), den_(1L) {}

  /// num / den reduced; throws DivisionByZero if den == 0.
  static Scalar fraction(Poly num, Poly den) {
    if (den.is_zero()) throw DivisionByZero("scalar with zero denominator");
    Scalar s;
    s.num_ = std::move(num);
    s.den_ = std::move(den);
    s.canonicalize();
    return s;
  }

  static Scalar rational(long num, long den = 1) {
    return Scalar(make_rational(num, den));
  }

  /// q_{var+1}^power; negative powers allowed.
  static Scalar q(int power = 1, std::size_t var = 0) {
    if (power >= 0) return Scalar(Poly::variable(var, power));
    Scalar s;
    s.num_ = Poly(1L);
    s.den_ = Poly::variable(var, -power);
    return s;
  }

  const Poly& numerator() const { return num_; }
  const Poly& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return den_.is_constant() && num_ == Poly(1L); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_constant(); }

  /// Rational value of a constant scalar.
  mpq_class constant_value() const {
    return num_.constant_term() / den_.constant_term();
  }

  unsigned variable_mask() const {
    return num_.variable_mask() | den_.variable_mask();
  }

  Scalar& operator+=(const Scalar& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    if (den_ == o.den_) {
      num_ += o.num_;
      if (!den_.is_constant()) canonicalize();
      else if (num_.is_zero()) den_ = Poly(1L);
      return *this;
    }
    if (o.den_.is_constant() && den_.is_constant()) {
      num_ = num_ + o.num_;
      return *this;
    }
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
    canonicalize();
    return *this;
  }

  Scalar& operator-=(const Scalar& o) { return *this += -o; }

  Scalar operator-() const {
    Scalar r = *this;
    r.num_ = -r.num_;
    return r;
  }

  Scalar& operator*=(const Scalar& o) {
    if (is_zero() || o.is_zero()) return *this = Scalar();
    if (o.den_.is_constant() && den_.is_constant()) {
      num_ *= o.num_;
      return *this;
    }
    // Cross-cancel before multiplying to keep intermediate sizes down.
    const Poly g1 = gcd(num_, o.den_);
    const Poly g2 = gcd(o.num_, den_);
    num_ = *divide_exact(num_, g1) * *divide_exact(o.num_, g2);
    den_ = *divide_exact(den_, g2) * *divide_exact(o.den_, g1);
    normalize_leading();
    return *this;
  }

  Scalar inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero scalar");
    Scalar r;
    r.num_ = den_;
    r.den_ = num_;
    r.normalize_leading();
    return r;
  }

  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  Scalar pow(long k) const {
    if (k < 0) return inverse().pow(-k);
    Scalar result(1L);
    Scalar base = *this;
    auto e = static_cast<unsigned long>(k);
    while (e > 0) {
      if (e & 1UL) result *= base;
      e >>= 1UL;
      if (e > 0) base *= base;
    }
    return result;
  }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Rename q-variable `from` to `to`.
  Scalar renamed(std::size_t from, std::size_t to) const {
    Scalar r;
    r.num_ = num_.renamed(from, to);
    r.den_ = den_.renamed(from, to);
    r.normalize_leading();
    return r;
  }

 private:
  void normalize_leading() {
    const mpq_class lc = den_.leading().second;
    if (lc != 1) {
      const mpq_class inv = mpq_class(1) / lc;
      num_ = num_ * inv;
      den_ = den_ * inv;
    }
    if (num_.is_zero()) den_ = Poly(1L);
  }

  void canonicalize() {
    if (num_.is_zero()) {
      den_ = Poly(1L);
      return;
    }
    if (!den_.is_constant()) {
      const Poly g = gcd(num_, den_);
      if (!g.is_constant()) {
        num_ = *divide_exact(num_, g);
        den_ = *divide_exact(den_, g);
      }
    }
    normalize_leading();
  }

  Poly num_;
  Poly den_;
};

/// Number of q-variables a printed scalar should distinguish.
inline std::size_t display_vars(unsigned mask) {
  return (mask & ~1U) != 0 ? kMaxVars : 1;
}

namespace detail {

// Denominator c*q^k (single monomial): returns the exponent vector.
inline std::optional<Exponents> monomial_denominator(const Poly& den) {
  if (den.terms().size() != 1) return std::nullopt;
  return den.terms().begin()->first;
}

inline bool is_single_term(const Poly& p) { return p.terms().size() == 1; }

}  // namespace detail

/// Exact serialization: Laurent polynomials print with negative exponents
/// ("q^-2+1+q^2"), other fractions as "(num)/(den)". If the denominator
/// would print with a leading minus sign, both parts are negated, so
/// -1/(q-1) prints as "1/(1-q)". `descending` orders terms from the
/// highest degree down.
inline std::string to_string(const Scalar& s, std::size_t nvars = 0, bool descending = false) {
  if (nvars == 0) nvars = display_vars(s.variable_mask());
  const Poly& num = s.numerator();
  const Poly& den = s.denominator();
  if (den.is_constant()) {
    return poly_to_string(num * (mpq_class(1) / den.constant_term()), nvars, zero_exponents(),
                          descending);
  }
  if (auto e = detail::monomial_denominator(den)) {
    const mpq_class c = den.terms().begin()->second;
    return poly_to_string(num * (mpq_class(1) / c), nvars, -*e, descending);
  }
  Poly n = num;
  Poly d = den;
  if (poly_to_string(d, nvars, zero_exponents(), descending).front() == '-') {
    n = -n;
    d = -d;
  }
  auto wrap = [&](const Poly& p) {
    std::string body = poly_to_string(p, nvars, zero_exponents(), descending);
    const bool atomic = detail::is_single_term(p) &&
                        (p.is_constant() || p.terms().begin()->second == 1);
    return atomic ? body : "(" + body + ")";
  };
  return wrap(n) + "/" + wrap(d);
}

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) {
  return os << to_string(s);
}

/// Whether printing `s` needs parentheses when it multiplies something.
inline bool is_atomic_scalar(const Scalar& s) {
  const Poly& n = s.numerator();
  if (n.terms().size() != 1 || s.denominator().terms().size() != 1) return false;
  if (!s.is_polynomial()) return n.terms().begin()->second.get_den() == 1;
  if (n.is_constant()) return n.constant_term().get_den() == 1;
  return true;
}

// ---------------------------------------------------------------------------
// q-numbers

enum class QKind { Gauss, Balanced };

/// gauss(m) = (q^m - 1)/(q - 1); balanced(m) = (q^m - q^-m)/(q - q^-1).
inline Scalar q_number(long m, QKind kind, std::size_t var = 0) {
  if (kind == QKind::Gauss) {
    if (m == 0) return Scalar();
    return (Scalar::q(static_cast<int>(m), var) - Scalar(1L)) /
           (Scalar::q(1, var) - Scalar(1L));
  }
  if (m == 0) return Scalar();
  return (Scalar::q(static_cast<int>(m), var) - Scalar::q(static_cast<int>(-m), var)) /
         (Scalar::q(1, var) - Scalar::q(-1, var));
}

/// [m]! with balanced q-integers; [0]! = 1.
inline Scalar q_factorial(long m, std::size_t var = 0) {
  Scalar r(1L);
  for (long i = 1; i <= m; ++i) r *= q_number(i, QKind::Balanced, var);
  return r;
}

// ---------------------------------------------------------------------------
// (q-1)-adic valuation and truncation

inline constexpr int kInfiniteValuation = std::numeric_limits<int>::max();

namespace detail {

inline void require_univariate(const Scalar& s) {
  if ((s.variable_mask() & ~1U) != 0) {
    throw DomainMismatch("(q-1)-adic operations need a one-variable scalar");
  }
}

inline int multiplicity_at_one(const std::vector<mpq_class>& shifted) {
  int k = 0;
  while (k < static_cast<int>(shifted.size()) && shifted[static_cast<std::size_t>(k)] == 0) ++k;
  return k;
}

}  // namespace detail

/// Multiplicity of (q-1) in the numerator minus that in the denominator.
inline int valuation_at_1(const Scalar& s) {
  detail::require_univariate(s);
  if (s.is_zero()) return kInfiniteValuation;
  return detail::multiplicity_at_one(expand_at_one(s.numerator())) -
         detail::multiplicity_at_one(expand_at_one(s.denominator()));
}

/// Element of Q[t]/t^n stored densely, index k = coefficient of t^k.
class TruncatedScalar {
 public:
  explicit TruncatedScalar(std::size_t level = 1) : coeffs_(level, 0) {
    if (level == 0) throw DomainMismatch("truncation level must be >= 1");
  }
  TruncatedScalar(std::vector<mpq_class> coeffs, std::size_t level)
      : coeffs_(std::move(coeffs)) {
    if (level == 0) throw DomainMismatch("truncation level must be >= 1");
    coeffs_.resize(level, 0);
  }

  std::size_t level() const { return coeffs_.size(); }
  const std::vector<mpq_class>& coeffs() const { return coeffs_; }
  const mpq_class& operator[](std::size_t k) const { return coeffs_.at(k); }

  bool is_zero() const {
    for (const auto& c : coeffs_) {
      if (c != 0) return false;
    }
    return true;
  }

  TruncatedScalar& operator+=(const TruncatedScalar& o) {
    check(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    return *this;
  }
  TruncatedScalar& operator-=(const TruncatedScalar& o) {
    check(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    return *this;
  }
  friend TruncatedScalar operator+(TruncatedScalar a, const TruncatedScalar& b) { return a += b; }
  friend TruncatedScalar operator-(TruncatedScalar a, const TruncatedScalar& b) { return a -= b; }

  friend TruncatedScalar operator*(const TruncatedScalar& a, const TruncatedScalar& b) {
    a.check(b);
    TruncatedScalar r(a.level());
    for (std::size_t i = 0; i < a.level(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; i + j < a.level(); ++j) r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return r;
  }

  friend TruncatedScalar operator*(TruncatedScalar a, const mpq_class& c) {
    for (auto& v : a.coeffs_) v *= c;
    return a;
  }

  friend bool operator==(const TruncatedScalar& a, const TruncatedScalar& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  void check(const TruncatedScalar& o) const {
    if (o.level() != level()) throw DomainMismatch("truncation levels differ");
  }
  std::vector<mpq_class> coeffs_;
};

inline std::string to_string(const TruncatedScalar& s) {
  Poly p;
  for (std::size_t k = 0; k < s.level(); ++k) p.add_term(unit_exponents(0, static_cast<int>(k)), s[k]);
  std::string out = poly_to_string(p, 1);
  // poly_to_string names the variable q; the truncation variable is t.
  for (auto& ch : out) {
    if (ch == 'q') ch = 't';
  }
  return out;
}

namespace detail {

/// Power-series quotient a/b mod t^n with b[0] != 0.
inline std::vector<mpq_class> series_divide(const std::vector<mpq_class>& a,
                                            const std::vector<mpq_class>& b,
                                            std::size_t n) {
  std::vector<mpq_class> out(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    mpq_class acc = k < a.size() ? a[k] : mpq_class(0);
    for (std::size_t j = 1; j <= k && j < b.size(); ++j) acc -= b[j] * out[k - j];
    out[k] = acc / b[0];
  }
  return out;
}

}  // namespace detail

/// Laurent expansion of s at q = 1 + t: returns coefficients of
/// t^{first}, ..., t^{last-1} where first = valuation_at_1(s).
struct TExpansion {
  int first = 0;
  std::vector<mpq_class> coeffs;  // coeffs[k] multiplies t^{first + k}
};

inline TExpansion expand_in_t(const Scalar& s, int last) {
  detail::require_univariate(s);
  TExpansion out;
  if (s.is_zero()) {
    out.first = last;
    return out;
  }
  auto num = expand_at_one(s.numerator());
  auto den = expand_at_one(s.denominator());
  const int a = detail::multiplicity_at_one(num);
  const int b = detail::multiplicity_at_one(den);
  num.erase(num.begin(), num.begin() + a);
  den.erase(den.begin(), den.begin() + b);
  out.first = a - b;
  const int count = last - out.first;
  if (count > 0) out.coeffs = detail::series_divide(num, den, static_cast<std::size_t>(count));
  return out;
}

/// Image of s in Q[t]/t^n under q = 1 + t. Requires valuation_at_1(s) >= 0.
inline TruncatedScalar truncate(const Scalar& s, std::size_t n) {
  if (n == 0) throw DomainMismatch("truncation level must be >= 1");
  const TExpansion e = expand_in_t(s, static_cast<int>(n));
  if (s.is_zero()) return TruncatedScalar(n);
  if (e.first < 0) {
    throw NotIntegralAtOne(to_string(s) + " has a pole at q = 1");
  }
  std::vector<mpq_class> coeffs(n, 0);
  for (std::size_t k = 0; k < e.coeffs.size(); ++k) {
    coeffs[static_cast<std::size_t>(e.first) + k] = e.coeffs[k];
  }
  return TruncatedScalar(std::move(coeffs), n);
}

}  // namespace qdops

#endif  // QDOPS_SCALAR_HPP
