#include <gtest/gtest.h>

#include "qdops/suites.hpp"

using namespace qdops;

namespace {

SuiteParams small() {
  SuiteParams p;
  p.cases = 15;
  p.seed = 7;
  return p;
}

}  // namespace

TEST(Suites, RegistryHasTheFifteenNames) {
  const std::vector<std::string> expected{
      "note-identities", "intrinsic-relations", "d0-commutative", "domain-sample", "qcenter",
      "immediate-formulae", "nvariables", "integrate-exhaustive", "simplicity-random", "gamma-generators",
      "uq-relations", "uq-plane-consistency", "nonsurjectivity", "truncation", "eta1-surjectivity"};
  std::vector<std::string> names;
  for (const auto& e : suite_registry()) names.push_back(e.name);
  EXPECT_EQ(names, expected);
}

TEST(Suites, UnknownNameThrows) { EXPECT_THROW(verify_suite("no-such-suite"), UnknownSuite); }

class EverySuite : public ::testing::TestWithParam<std::string> {};

TEST_P(EverySuite, PassesOnSmallParameters) {
  SuiteParams p = small();
  if (GetParam() == "integrate-exhaustive") p.max_degree = 2;
  if (GetParam() == "uq-plane-consistency") p.max_degree = 3;
  const Report r = verify_suite(GetParam(), p);
  EXPECT_EQ(r.title, GetParam());
  ASSERT_FALSE(r.checks.empty());
  for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << c.name << ": " << c.detail;
}

INSTANTIATE_TEST_SUITE_P(All, EverySuite,
                         ::testing::Values("note-identities", "intrinsic-relations", "d0-commutative",
                                           "domain-sample", "qcenter", "immediate-formulae", "nvariables",
                                           "integrate-exhaustive", "simplicity-random", "gamma-generators",
                                           "uq-relations", "uq-plane-consistency", "nonsurjectivity",
                                           "truncation", "eta1-surjectivity"),
                         [](const auto& info) {
                           std::string n = info.param;
                           for (auto& ch : n) {
                             if (ch == '-') ch = '_';
                           }
                           return n;
                         });

TEST(Suites, ReproducibleFromSeedAndCases) {
  auto summary = [](const Report& r) {
    std::string s;
    for (const auto& c : r.checks) s += c.name + std::to_string(c.pass) + std::to_string(c.cases) + ";";
    return s;
  };
  const SuiteParams p = small();
  EXPECT_EQ(summary(verify_suite("d0-commutative", p)), summary(verify_suite("d0-commutative", p)));
  const Report r = verify_suite("domain-sample", p);
  ASSERT_EQ(r.checks.size(), 1u);
  EXPECT_EQ(r.checks[0].cases, 15);
}

TEST(Suites, ParametersControlSize) {
  SuiteParams p;
  p.max_degree = 1;
  p.cases = 3;
  const Report r = verify_suite("integrate-exhaustive", p);
  ASSERT_GE(r.checks.size(), 2u);
  // lengths 0 and 1 with entries -2..2 and b in -3..3
  EXPECT_EQ(r.checks[0].cases, 7 * (1 + 5));
  EXPECT_EQ(r.checks[1].cases, 3);
}
