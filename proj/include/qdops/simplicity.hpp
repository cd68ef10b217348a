#ifndef QDOPS_SIMPLICITY_HPP
#define QDOPS_SIMPLICITY_HPP

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "qdops/shape.hpp"

namespace qdops {

struct WitnessStep {
  enum class Kind { LeftMultiplySigma, BracketWithX, BracketWithD, Scale };
  Kind kind = Kind::Scale;
  int sigma = 0;           // LeftMultiplySigma
  Scalar factor{1L};       // Scale

  friend bool operator==(const WitnessStep&, const WitnessStep&) = default;
};

/// (top word length, number of top-length groups, x-degree), compared
/// lexicographically.
using WitnessMeasure = std::tuple<int, int, int>;

struct SimplicityWitness {
  std::vector<WitnessStep> steps;
  /// Measure of the working form before each round (a round is a
  /// sigma multiplication followed by a bracket, or a single bracket).
  std::vector<WitnessMeasure> measures;
};

inline std::string to_string(const WitnessStep& s) {
  switch (s.kind) {
    case WitnessStep::Kind::LeftMultiplySigma: return "left-multiply s[" + std::to_string(s.sigma) + "]";
    case WitnessStep::Kind::BracketWithX: return "bracket-with-x";
    case WitnessStep::Kind::BracketWithD: return "bracket-with-D";
    case WitnessStep::Kind::Scale:
      return "scale " + (is_atomic_scalar(s.factor) ? to_string(s.factor) : "(" + to_string(s.factor) + ")");
  }
  return "";
}

inline WitnessMeasure measure(const ShapeForm& f) {
  const int d = f.top_length();
  int count = 0;
  int xdeg = -1;
  for (const auto& [k, p] : f.terms()) {
    if (static_cast<int>(k.second.size()) == d) ++count;
    xdeg = std::max(xdeg, p.degree());
  }
  return {d, count, xdeg};
}

/// Applies the steps to phi in order.
inline GradedOperator replay(const SimplicityWitness& w, GradedOperator phi) {
  const RingTag tag = phi.domain();
  for (const auto& s : w.steps) {
    switch (s.kind) {
      case WitnessStep::Kind::LeftMultiplySigma: phi = generator(gen::sigma(s.sigma), tag) * phi; break;
      case WitnessStep::Kind::BracketWithX: phi = bracket(phi, generator(gen::x(), tag)); break;
      case WitnessStep::Kind::BracketWithD: phi = bracket(generator(gen::dbeta(0), tag), phi); break;
      case WitnessStep::Kind::Scale: phi = phi * s.factor; break;
    }
  }
  return phi;
}

namespace detail {

/// If phi lies in k[sigma^{+-1}][x] (m-free symbols, nonnegative shifts),
/// its canonical shape form sum sigma^i p_i(x); uses x^e sigma^i = q^{-ie} sigma^i x^e.
inline std::optional<ShapeForm> as_sigma_polynomial(const GradedOperator& phi) {
  ShapeForm out;
  for (const auto& [e, s] : phi.parts()) {
    if (e[0] < 0 || !s.is_m_free()) return std::nullopt;
    for (const auto& [key, c] : s.terms()) {
      const int i = key.first[0];
      out.add(i, {}, XPoly::monomial(e[0], c * Scalar::q(-i * e[0])));
    }
  }
  return out;
}

}  // namespace detail

/// Steps that turn eval(f) into the identity: while words remain, a sigma
/// twist followed by a bracket with x removes the top-length groups; then
/// the sigma groups are peeled off one at a time, and the final polynomial
/// is differentiated down to a constant and rescaled.
inline SimplicityWitness simplicity_witness(const ShapeForm& input, int max_rounds = 10000) {
  const RingTag tag = RingTag::poly_x();
  if (eval(input, tag).is_zero()) throw ZeroOperator("simplicity witness needs a nonzero operator");
  SimplicityWitness w;
  ShapeForm f = input;
  const ShapeForm x_form = ShapeForm::term(0, XPoly::monomial(1), {});
  const ShapeForm d_form = ShapeForm::term(0, XPoly::monomial(0), {0});
  auto left_multiply = [&](int s) {
    if (s == 0) return;
    w.steps.push_back({WitnessStep::Kind::LeftMultiplySigma, s, Scalar(1L)});
    f = ShapeForm::term(s, XPoly::monomial(0), {}) * f;
  };

  for (int round = 0;; ++round) {
    if (round > max_rounds) throw Overflow("simplicity witness exceeded its round budget");
    const GradedOperator phi = eval(f, tag);
    if (auto c = phi.as_scalar()) {
      w.steps.push_back({WitnessStep::Kind::Scale, 0, c->inverse()});
      return w;
    }
    if (auto canonical = detail::as_sigma_polynomial(phi)) f = *canonical;
    w.measures.push_back(measure(f));

    if (f.top_length() > 0) {
      // Target the first top-length group (a, I): after sigma^s with
      // s = -(a + weight(I)) its top-length image under [., x] vanishes.
      const int d = f.top_length();
      for (const auto& [k, p] : f.terms()) {
        if (static_cast<int>(k.second.size()) != d) continue;
        int weight = 0;
        for (int letter : k.second) weight += letter;
        left_multiply(-(k.first + weight));
        break;
      }
      w.steps.push_back({WitnessStep::Kind::BracketWithX, 0, Scalar(1L)});
      f = twisted_bracket(f, x_form, 0);
      continue;
    }

    if (f.terms().size() > 1) {
      // Several sigma groups: shift the largest exponent to 0 and kill it.
      left_multiply(-f.terms().rbegin()->first.first);
      w.steps.push_back({WitnessStep::Kind::BracketWithX, 0, Scalar(1L)});
      f = twisted_bracket(f, x_form, 0);
      continue;
    }

    // A single group sigma^a p(x).
    left_multiply(-f.terms().begin()->first.first);
    if (f.x_degree() == 0) {
      w.steps.push_back({WitnessStep::Kind::Scale, 0, f.terms().begin()->second.terms().begin()->second.inverse()});
      return w;
    }
    w.steps.push_back({WitnessStep::Kind::BracketWithD, 0, Scalar(1L)});
    f = twisted_bracket(d_form, f, 0);
  }
}

/// True when every recorded round strictly decreased the measure.
inline bool measure_decreases(const SimplicityWitness& w) {
  for (std::size_t i = 1; i < w.measures.size(); ++i) {
    if (!(w.measures[i] < w.measures[i - 1])) return false;
  }
  return true;
}

}  // namespace qdops

#endif  // QDOPS_SIMPLICITY_HPP
