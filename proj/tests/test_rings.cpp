#include <gtest/gtest.h>

#include <random>

#include "qdops/ring.hpp"

using namespace qdops;

namespace {

const Scalar q = Scalar::q();

RingElement xpow(int e, RingTag tag = RingTag::poly_x()) {
  return RingElement::monomial(unit_exponents(0, e), Scalar(1L), tag);
}

PlaneElement random_plane(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> ua(0, 3), vb(-3, 3), c(-2, 2);
  PlaneElement p;
  for (int i = 0; i < 3; ++i) p.add_term(ua(rng), vb(rng), Scalar(static_cast<long>(c(rng))) * q.pow(c(rng)));
  return p;
}

}  // namespace

TEST(Rings, Multiply) {
  EXPECT_EQ(xpow(2) * xpow(3), xpow(5));
  const RingTag l = RingTag::laurent();
  EXPECT_EQ(xpow(1, l) * xpow(-1, l), RingElement::constant(Scalar(1L), l));
  const RingElement one = RingElement::constant(Scalar(1L), RingTag::poly_x());
  EXPECT_EQ((one + xpow(1)) * (one - xpow(1)), one - xpow(2));
  EXPECT_EQ(to_string(one - xpow(2)), "1-x^2");
}

TEST(Rings, SupportViolations) {
  EXPECT_THROW(xpow(-1), OutOfSupport);
  EXPECT_THROW(xpow(-1, RingTag::poly_y()), OutOfSupport);
  EXPECT_THROW(xpow(1) * xpow(1, RingTag::poly_y()), DomainMismatch);
  EXPECT_THROW(RingElement::monomial(unit_exponents(1), Scalar(1L), RingTag::poly_x()), OutOfSupport);
  EXPECT_THROW(RingTag::poly_n(0), DomainMismatch);
}

TEST(Rings, GradingIsAdditive) {
  for (auto tag : {RingTag::poly_x(), RingTag::poly_y(), RingTag::laurent(), RingTag::poly_n(3)}) {
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        Exponents ea = unit_exponents(0, a), eb = unit_exponents(0, b);
        if (tag.nvars == 3) eb = unit_exponents(2, b);
        const auto p = RingElement::monomial(ea, q, tag);
        const auto r = RingElement::monomial(eb, q + 1, tag);
        EXPECT_EQ(*(p * r).homogeneous_degree(), *p.homogeneous_degree() + *r.homogeneous_degree());
      }
    }
  }
  EXPECT_EQ(*xpow(2, RingTag::poly_y()).homogeneous_degree(), unit_exponents(0, -2));
}

TEST(Plane, Examples) {
  EXPECT_EQ(PlaneElement::v() * PlaneElement::u(), PlaneElement::monomial(1, 1, q.inverse()));
  EXPECT_EQ(x_of_plane() * x_of_plane(), PlaneElement::monomial(2, -2, q));
  EXPECT_EQ(PlaneElement::v_inverse() * PlaneElement::v(), PlaneElement::constant(Scalar(1L)));
  EXPECT_EQ(x_of_plane(), PlaneElement::monomial(1, -1));
  EXPECT_EQ(plane_power(x_of_plane(), 0), PlaneElement::constant(Scalar(1L)));
  EXPECT_EQ(to_string(PlaneElement::monomial(2, -2, q)), "q*u^2*v^-2");
  // The defining relation u v = q v u.
  EXPECT_EQ(PlaneElement::u() * PlaneElement::v(), (PlaneElement::v() * PlaneElement::u()) * q);
}

TEST(Plane, PowersOfX) {
  // x^m = q^{m(m-1)/2} u^m v^-m, an independent closed form.
  for (int m = 0; m <= 8; ++m) {
    EXPECT_EQ(plane_power(x_of_plane(), m), PlaneElement::monomial(m, -m, q.pow(m * (m - 1) / 2)));
  }
}

TEST(PlaneProperty, Associative) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 60; ++i) {
    const auto a = random_plane(rng), b = random_plane(rng), c = random_plane(rng);
    EXPECT_EQ((a * b) * c, a * (b * c));
  }
}

TEST(PlaneProperty, PowersOfXCommute) {
  std::mt19937_64 rng(22);
  std::uniform_int_distribution<int> e(0, 6);
  for (int i = 0; i < 40; ++i) {
    const auto a = plane_power(x_of_plane(), e(rng)) * q.pow(e(rng) - 3);
    const auto b = plane_power(x_of_plane(), e(rng)) + PlaneElement::constant(Scalar(2L));
    EXPECT_EQ(a * b, b * a);
  }
}
