#ifndef QDOPS_TRUNCATED_HPP
#define QDOPS_TRUNCATED_HPP

#include <map>
#include <string>
#include <vector>

#include "qdops/operator.hpp"

namespace qdops {

/// Polynomial in m with coefficients in Q[t]/t^n, keyed by m-power.
class TruncatedSymbol {
 public:
  using Terms = std::map<int, TruncatedScalar>;

  explicit TruncatedSymbol(std::size_t level = 1) : level_(level) {}

  std::size_t level() const { return level_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(int mpow, const TruncatedScalar& c) {
    if (c.level() != level_) throw DomainMismatch("truncation levels differ");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(mpow, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  int m_degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }

  TruncatedSymbol& operator+=(const TruncatedSymbol& o) {
    for (const auto& [j, c] : o.terms_) add_term(j, c);
    return *this;
  }
  TruncatedSymbol& operator-=(const TruncatedSymbol& o) {
    for (const auto& [j, c] : o.terms_) add_term(j, c * mpq_class(-1));
    return *this;
  }
  friend TruncatedSymbol operator+(TruncatedSymbol a, const TruncatedSymbol& b) { return a += b; }
  friend TruncatedSymbol operator-(TruncatedSymbol a, const TruncatedSymbol& b) { return a -= b; }

  friend TruncatedSymbol operator*(const TruncatedSymbol& a, const TruncatedSymbol& b) {
    TruncatedSymbol out(a.level_);
    for (const auto& [j1, c1] : a.terms_) {
      for (const auto& [j2, c2] : b.terms_) out.add_term(j1 + j2, c1 * c2);
    }
    return out;
  }

  /// s(m + e).
  TruncatedSymbol shifted(int e) const {
    if (e == 0) return *this;
    TruncatedSymbol out(level_);
    for (const auto& [j, c] : terms_) {
      mpz_class binom = 1;
      for (int r = j; r >= 0; --r) {
        mpz_class epow;
        mpz_pow_ui(epow.get_mpz_t(), mpz_class(e).get_mpz_t(), static_cast<unsigned long>(j - r));
        out.add_term(r, c * mpq_class(binom * epow));
        binom = binom * r / (j - r + 1);
      }
    }
    return out;
  }

  friend bool operator==(const TruncatedSymbol&, const TruncatedSymbol&) = default;

 private:
  std::size_t level_;
  Terms terms_;
};

/// Image of a one-variable operator in D(A/(q-1)^n [x]): parts keyed by
/// exponent shift, symbols polynomial in m over Q[t]/t^n.
class TruncatedOperator {
 public:
  using Parts = std::map<int, TruncatedSymbol>;

  explicit TruncatedOperator(std::size_t level = 1) : level_(level) {}

  std::size_t level() const { return level_; }
  const Parts& parts() const { return parts_; }
  bool is_zero() const { return parts_.empty(); }

  void add_part(int shift, const TruncatedSymbol& s) {
    if (s.is_zero()) return;
    auto [it, inserted] = parts_.emplace(shift, s);
    if (!inserted) {
      it->second += s;
      if (it->second.is_zero()) parts_.erase(it);
    }
  }

  int m_degree() const {
    int d = -1;
    for (const auto& [e, s] : parts_) d = std::max(d, s.m_degree());
    return d;
  }

  friend TruncatedOperator operator+(TruncatedOperator a, const TruncatedOperator& b) {
    for (const auto& [e, s] : b.parts_) a.add_part(e, s);
    return a;
  }
  friend TruncatedOperator operator-(TruncatedOperator a, const TruncatedOperator& b) {
    for (const auto& [e, s] : b.parts_) a.add_part(e, TruncatedSymbol(a.level_) - s);
    return a;
  }

  friend TruncatedOperator compose(const TruncatedOperator& outer, const TruncatedOperator& inner) {
    if (outer.level_ != inner.level_) throw DomainMismatch("truncation levels differ");
    TruncatedOperator out(outer.level_);
    for (const auto& [e2, s2] : inner.parts_) {
      for (const auto& [e1, s1] : outer.parts_) out.add_part(e1 + e2, s2 * s1.shifted(e2));
    }
    return out;
  }

  friend bool operator==(const TruncatedOperator&, const TruncatedOperator&) = default;

 private:
  std::size_t level_;
  Parts parts_;
};

namespace detail {

/// Coefficients of C(k*m, r) as a polynomial in m, r >= 0.
inline std::vector<mpq_class> binomial_in_m(int k, int r) {
  std::vector<mpq_class> poly{1};
  mpz_class fact = 1;
  for (int s = 0; s < r; ++s) {
    // multiply by (k*m - s)
    std::vector<mpq_class> next(poly.size() + 1, 0);
    for (std::size_t d = 0; d < poly.size(); ++d) {
      next[d + 1] += poly[d] * k;
      next[d] -= poly[d] * s;
    }
    poly = std::move(next);
    fact *= s + 1;
  }
  for (auto& c : poly) c /= fact;
  return poly;
}

inline void require_one_variable(const GradedOperator& phi) {
  if (phi.domain().nvars != 1) throw DomainMismatch("truncation needs a one-variable operator");
}

/// t-expansion of a symbol: map t-power -> polynomial in m (dense), for
/// t-powers below `level`, starting at the most negative one present.
inline std::map<int, std::vector<mpq_class>> expand_symbol_in_t(const Symbol& s, int level) {
  std::map<int, std::vector<mpq_class>> out;
  auto add = [&](int tpow, int mshift, const std::vector<mpq_class>& mpoly, const mpq_class& c) {
    auto& dst = out[tpow];
    if (dst.size() < mpoly.size() + static_cast<std::size_t>(mshift)) {
      dst.resize(mpoly.size() + static_cast<std::size_t>(mshift), 0);
    }
    for (std::size_t d = 0; d < mpoly.size(); ++d) dst[d + static_cast<std::size_t>(mshift)] += c * mpoly[d];
  };
  for (const auto& [key, c] : s.terms()) {
    const int i = key.first[0];
    const int j = key.second[0];
    const TExpansion ce = expand_in_t(c, level);
    for (std::size_t r = 0; r < ce.coeffs.size(); ++r) {
      const int tr = ce.first + static_cast<int>(r);
      if (ce.coeffs[r] == 0) continue;
      // u^i = (1+t)^{i m} = sum_k C(i m, k) t^k
      for (int k = 0; tr + k < level; ++k) {
        if (i == 0 && k > 0) break;
        add(tr + k, j, binomial_in_m(i, k), ce.coeffs[r]);
      }
    }
  }
  for (auto it = out.begin(); it != out.end();) {
    bool zero = true;
    for (const auto& v : it->second) zero = zero && v == 0;
    it = zero ? out.erase(it) : std::next(it);
  }
  return out;
}

}  // namespace detail

/// Largest v with (q-1)^{-v} phi integral at q = 1, i.e. the lowest
/// t-power with a nonzero coefficient after u = (1+t)^m. Zero operators
/// give kInfiniteValuation.
inline int operator_valuation(const GradedOperator& phi) {
  detail::require_one_variable(phi);
  int v = kInfiniteValuation;
  for (const auto& [e, s] : phi.parts()) {
    // Any level above the lowest coefficient valuation detects the first
    // surviving power; scan upward until one survives.
    int lowest = kInfiniteValuation;
    for (const auto& [key, c] : s.terms()) lowest = std::min(lowest, valuation_at_1(c));
    for (int level = lowest + 1;; ++level) {
      const auto ex = detail::expand_symbol_in_t(s, level);
      if (!ex.empty()) {
        v = std::min(v, ex.begin()->first);
        break;
      }
    }
  }
  return v;
}

/// Substitute u = (1+t)^m and reduce modulo t^n. Negative t-powers that
/// survive mean the operator is not defined over A.
inline TruncatedOperator truncate_operator(const GradedOperator& phi, std::size_t n) {
  detail::require_one_variable(phi);
  if (n == 0) throw DomainMismatch("truncation level must be >= 1");
  TruncatedOperator out(n);
  for (const auto& [e, s] : phi.parts()) {
    const auto ex = detail::expand_symbol_in_t(s, static_cast<int>(n));
    TruncatedSymbol ts(n);
    for (const auto& [tpow, mpoly] : ex) {
      if (tpow < 0) throw NotIntegralAtOne("operator has a pole at q = 1");
      for (std::size_t j = 0; j < mpoly.size(); ++j) {
        if (mpoly[j] == 0) continue;
        std::vector<mpq_class> coeffs(n, 0);
        coeffs[static_cast<std::size_t>(tpow)] = mpoly[j];
        ts.add_term(static_cast<int>(j), TruncatedScalar(std::move(coeffs), n));
      }
    }
    out.add_part(e[0], ts);
  }
  return out;
}

/// [d, x]: the part at shift e moves to e+1 with symbol s(m+1) - s(m).
inline TruncatedOperator bracket_with_x(const TruncatedOperator& d) {
  TruncatedOperator out(d.level());
  for (const auto& [e, s] : d.parts()) out.add_part(e + 1, s.shifted(1) - s);
  return out;
}

/// Least N with ad_x^N(d) = 0. Each bracket lowers the m-degree by one, so
/// N <= m-degree + 1.
inline int bracket_nilpotence_order(const TruncatedOperator& d) {
  int n = 0;
  TruncatedOperator cur = d;
  while (!cur.is_zero()) {
    cur = bracket_with_x(cur);
    ++n;
  }
  return n;
}

/// The classical truncation of m^j at shift e, for building expected values.
inline TruncatedOperator truncated_monomial(int shift, int mpow, const TruncatedScalar& c) {
  TruncatedOperator out(c.level());
  TruncatedSymbol s(c.level());
  s.add_term(mpow, c);
  out.add_part(shift, s);
  return out;
}

inline std::string to_string(const TruncatedOperator& d) {
  if (d.is_zero()) return "0";
  std::string out;
  for (const auto& [e, s] : d.parts()) {
    if (!out.empty()) out += "\n";
    out += "deg=" + std::to_string(e) + ": ";
    std::vector<std::string> parts;
    for (const auto& [j, c] : s.terms()) {
      std::string coeff = to_string(c);
      const std::string mono = detail::power_string("m", j);
      if (mono.empty()) {
        parts.push_back(coeff);
      } else if (coeff == "1") {
        parts.push_back(mono);
      } else {
        parts.push_back("(" + coeff + ")*" + mono);
      }
    }
    out += detail::join_terms(parts);
  }
  return out;
}

}  // namespace qdops

#endif  // QDOPS_TRUNCATED_HPP
