#include <gtest/gtest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct CliResult {
  int status;
  std::string out;
};

/// Runs the command-line tool with the given argument string; stderr is
/// discarded so `out` holds only the report stream.
CliResult run(const std::string& args) {
  const std::string cmd = std::string(QDOPS_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

}  // namespace

TEST(Cli, ApplyExample) {
  const CliResult r = run("apply 'D[1]' 'x^3' --ring x");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "(1+q+q^2)*x^2\n");
}

TEST(Cli, BracketExample) {
  const CliResult r = run("bracket 'D[1]' 'x' --twist 0");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "s[1]\n");
}

TEST(Cli, IntegrateExample) {
  const CliResult r = run("integrate --word 1 --b 0");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "(1/(1-q))*(D[0]*D[1]-q*D[1]*D[0])\nPASS [Q, x] = P*s[b]\n");
}

TEST(Cli, IntegrateNegativeEntriesAndSeveralVariables) {
  EXPECT_EQ(run("integrate --word -1,2 --b -1").status, 0);
  const CliResult r = run("integrate --ring n=2 'x[2]*s[0,0]' 'x[1]*s[0,0]'");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
  const CliResult bad = run("integrate --ring n=2 'D[2,0]' 0");
  EXPECT_EQ(bad.status, 3);
}

TEST(Cli, EvalPrintsSymbols) {
  const CliResult r = run("eval 'D[1]*x'");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "deg=0: (q*u-1)/(q-1)\n");
}

TEST(Cli, SimplicityWitness) {
  const CliResult r = run("simplicity-witness 'x*D[0]+s[1]'");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("PASS replay gives the identity"), std::string::npos);
  EXPECT_EQ(run("simplicity-witness 's[1]-s[1]'").status, 3);
}

TEST(Cli, UqGlue) {
  const CliResult r = run("uq 'E*F-F*E' 'v' --level 1");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("PASS eta glues"), std::string::npos);
  EXPECT_NE(r.out.find("plane: "), std::string::npos);
  EXPECT_NE(r.out.find("eta_1 x-side:"), std::string::npos);
}

TEST(Cli, ParseErrorsExitTwoWithPosition) {
  const CliResult r = run("apply 'D[1' 'x' --json");
  EXPECT_EQ(r.status, 2);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["verdict"], "ERROR");
  EXPECT_EQ(doc["results"][0]["error"], "ParseError");
  EXPECT_EQ(doc["results"][0]["position"], 3);
  EXPECT_EQ(run("eval 'x' --ring z").status, 2);
  EXPECT_EQ(run("--no-such-flag").status, 2);
}

TEST(Cli, DomainErrorsExitThreeWithName) {
  const CliResult r = run("apply 'D[1]' 'x^-1' --json");
  EXPECT_EQ(r.status, 3);
  EXPECT_EQ(nlohmann::json::parse(r.out)["results"][0]["error"], "OutOfSupport");
  const CliResult s = run("verify no-such-suite --json");
  EXPECT_EQ(s.status, 3);
  EXPECT_EQ(nlohmann::json::parse(s.out)["results"][0]["error"], "UnknownSuite");
  EXPECT_EQ(run("eval 'D[1,0]' --ring x").status, 3);
}

TEST(Cli, JsonSchema) {
  const CliResult r = run("bracket 'D[1]' 'x' --twist 0 --json");
  EXPECT_EQ(r.status, 0);
  const auto doc = nlohmann::json::parse(r.out);
  for (const char* key : {"command", "inputs", "results", "verdict"}) EXPECT_TRUE(doc.contains(key)) << key;
  EXPECT_EQ(doc["command"], "bracket");
  EXPECT_EQ(doc["inputs"]["twist"], 0);
  EXPECT_EQ(doc["results"][0]["value"], "s[1]");
  EXPECT_EQ(doc["verdict"], "PASS");
}

TEST(Cli, JsonValuesParseBack) {
  // The printed bracket feeds back into the parser and evaluates to the
  // same operator.
  const auto doc = nlohmann::json::parse(run("bracket 'D[2]' 'x' --json").out);
  const std::string value = doc["results"][0]["value"];
  EXPECT_EQ(run("eval '" + value + "'").out, run("eval 's[2]'").out);
}

TEST(Cli, VerifySuiteIsDeterministic) {
  const CliResult a = run("verify d0-commutative --cases 10 --seed 5 --json");
  const CliResult b = run("verify d0-commutative --cases 10 --seed 5 --json");
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  const auto doc = nlohmann::json::parse(a.out);
  EXPECT_EQ(doc["verdict"], "PASS");
  EXPECT_EQ(doc["inputs"]["seed"], 5);
}

TEST(Cli, SuitesListsNames) {
  const CliResult r = run("suites");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("eta1-surjectivity"), std::string::npos);
  EXPECT_NE(r.out.find("integrate-exhaustive"), std::string::npos);
}
