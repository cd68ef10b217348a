#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qdops/qdops.hpp"

namespace {

using nlohmann::json;
using namespace qdops;

struct Options {
  std::string ring = "x";
  int twist = 0;
  std::vector<int> word;
  int b = 0;
  std::optional<int> level;
  std::optional<int> max_degree;
  std::optional<int> cases;
  std::uint64_t seed = 1;
  bool json = false;
  std::vector<std::string> args;
};

/// What a command produced: text lines for humans, structured results for
/// --json, and whether every check it ran passed.
struct Outcome {
  std::vector<std::string> lines;
  json results = json::array();
  bool pass = true;

  void value(const std::string& name, const std::string& text) {
    lines.push_back(text);
    results.push_back({{"name", name}, {"value", text}});
  }
  void check(const std::string& name, bool ok, json extra = json::object()) {
    pass = pass && ok;
    lines.push_back(std::string(ok ? "PASS" : "FAIL") + " " + name);
    extra["name"] = name;
    extra["pass"] = ok;
    results.push_back(std::move(extra));
  }
};

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

const std::string& arg(const Options& o, std::size_t i, const char* what) {
  if (i >= o.args.size()) throw ParseError(std::string("missing ") + what, 0);
  return o.args[i];
}

/// Degree-0 one-variable operators read back as polynomials in s and tau;
/// anything else is shown through its per-degree symbols.
std::string render(const GradedOperator& phi) {
  bool degree0 = phi.domain().nvars == 1;
  for (const auto& [e, s] : phi.parts()) degree0 = degree0 && is_zero(e);
  return degree0 ? to_string(decompose_degree0(phi), phi.domain()) : to_string(phi);
}

Outcome cmd_eval(const Options& o) {
  const RingTag tag = parse_ring_tag(o.ring);
  const GradedOperator phi = eval(parse_operator(arg(o, 0, "operator expression"), tag), tag);
  Outcome out;
  out.lines = split_lines(to_string(phi));
  json parts = json::array();
  for (const auto& [e, s] : phi.parts()) {
    parts.push_back({{"degree", std::vector<int>(e.begin(), e.begin() + static_cast<long>(tag.nvars))},
                     {"symbol", to_string(s, tag.nvars)}});
  }
  out.results.push_back({{"name", "symbols"}, {"value", to_string(phi)}, {"parts", parts}});
  return out;
}

Outcome cmd_apply(const Options& o) {
  const RingTag tag = parse_ring_tag(o.ring);
  const GradedOperator phi = eval(parse_operator(arg(o, 0, "operator expression"), tag), tag);
  const RingElement p = parse_ring_element(arg(o, 1, "ring element"), tag);
  Outcome out;
  out.value("image", to_string(apply(phi, p)));
  return out;
}

Outcome cmd_bracket(const Options& o) {
  const RingTag tag = parse_ring_tag(o.ring);
  const GradedOperator phi = eval(parse_operator(arg(o, 0, "left operand"), tag), tag);
  const GradedOperator psi = eval(parse_operator(arg(o, 1, "right operand"), tag), tag);
  Outcome out;
  out.value("bracket", render(twisted_bracket(phi, psi, o.twist)));
  return out;
}

Outcome cmd_integrate(const Options& o) {
  const RingTag tag = parse_ring_tag(o.ring);
  Outcome out;
  if (tag.kind == RingKind::PolyN) {
    std::vector<TermSum> family;
    for (std::size_t i = 0; i < tag.nvars; ++i) {
      family.push_back(to_terms(parse_operator(arg(o, i, "family member"), tag), tag.nvars));
    }
    const TermSum q = integrate_nd(family, tag);
    out.value("Q", to_string(to_expr(q), tag));
    out.check("[Q, x_i] = F_i", verify_integral_nd(family, q, tag));
    return out;
  }
  if (tag.kind != RingKind::PolyX) throw DomainMismatch("integrate works on k[x] or k[x_1..x_n]");
  const IntegrationProblem p{o.word, o.b};
  const OperatorExpr q = integrate(p);
  out.value("Q", to_string(q));
  out.check("[Q, x] = P*s[b]", verify_integral(p, q));
  return out;
}

Outcome cmd_simplicity(const Options& o) {
  const RingTag tag = parse_ring_tag(o.ring);
  if (tag.kind != RingKind::PolyX) throw DomainMismatch("simplicity witnesses are computed on k[x]");
  const ShapeForm f = shape_normalize(parse_operator(arg(o, 0, "operator expression"), tag));
  const SimplicityWitness w = simplicity_witness(f);
  Outcome out;
  json steps = json::array();
  for (const auto& s : w.steps) {
    out.lines.push_back(to_string(s));
    steps.push_back(to_string(s));
  }
  json measures = json::array();
  for (const auto& [d, count, xdeg] : w.measures) measures.push_back({d, count, xdeg});
  out.results.push_back({{"name", "steps"}, {"value", steps}, {"measures", measures}});
  out.check("replay gives the identity", replay(w, eval(f, tag)) == GradedOperator::identity(tag));
  out.check("measure strictly decreases", measure_decreases(w));
  return out;
}

Outcome cmd_uq(const Options& o) {
  const UqExpr w = parse_uq(arg(o, 0, "U_q expression"));
  const GammaPair p{alpha(w), gamma(w)};
  Outcome out;
  out.lines.push_back("alpha:");
  for (const auto& l : split_lines(to_string(p.dx))) out.lines.push_back("  " + l);
  out.lines.push_back("gamma:");
  for (const auto& l : split_lines(to_string(p.dy))) out.lines.push_back("  " + l);
  out.results.push_back({{"name", "alpha"}, {"value", to_string(p.dx)}});
  out.results.push_back({{"name", "gamma"}, {"value", to_string(p.dy)}});
  if (o.args.size() > 1) {
    const std::string image = to_string(act_on_plane(w, parse_plane_element(o.args[1])));
    out.lines.push_back("plane: " + image);
    out.results.push_back({{"name", "plane"}, {"value", image}});
  }
  const bool glue = gamma_q_member(p);
  out.check("eta glues (alpha and gamma agree on k[x,x^-1])", glue);
  if (glue && o.level) {
    if (*o.level < 1) throw DomainMismatch("truncation level must be >= 1");
    const auto [tx, ty] = eta_truncated(w, static_cast<std::size_t>(*o.level));
    const std::string n = std::to_string(*o.level);
    out.lines.push_back("eta_" + n + " x-side:");
    for (const auto& l : split_lines(to_string(tx))) out.lines.push_back("  " + l);
    out.lines.push_back("eta_" + n + " y-side:");
    for (const auto& l : split_lines(to_string(ty))) out.lines.push_back("  " + l);
    out.results.push_back({{"name", "eta_" + n}, {"x", to_string(tx)}, {"y", to_string(ty)}});
  }
  return out;
}

Outcome cmd_verify(const Options& o) {
  SuiteParams params;
  params.max_degree = o.max_degree;
  params.cases = o.cases;
  params.seed = o.seed;
  const Report r = verify_suite(arg(o, 0, "suite name"), params);
  Outcome out;
  for (const auto& c : r.checks) {
    json extra = {{"cases", c.cases}};
    if (!c.detail.empty()) extra["detail"] = c.detail;
    out.check(c.name, c.pass, extra);
    out.lines.back() += " [" + std::to_string(c.cases) + " case" + (c.cases == 1 ? "" : "s") + "]";
    if (!c.detail.empty()) out.lines.back() += ": " + c.detail;
  }
  return out;
}

Outcome cmd_suites(const Options&) {
  Outcome out;
  for (const auto& s : suite_registry()) out.value("suite", s.name);
  return out;
}

json inputs_json(const std::string& command, const Options& o) {
  json in = {{"args", o.args}, {"ring", o.ring}};
  if (command == "bracket") in["twist"] = o.twist;
  if (command == "integrate") {
    in["word"] = o.word;
    in["b"] = o.b;
  }
  if (command == "uq" && o.level) in["level"] = *o.level;
  if (command == "verify") {
    in["seed"] = o.seed;
    if (o.max_degree) in["max_degree"] = *o.max_degree;
    if (o.cases) in["cases"] = *o.cases;
  }
  return in;
}

int emit(const std::string& command, const Options& o, const Outcome& out) {
  if (o.json) {
    const json doc = {{"command", command},
                      {"inputs", inputs_json(command, o)},
                      {"results", out.results},
                      {"verdict", out.pass ? "PASS" : "FAIL"}};
    std::cout << doc.dump(2) << "\n";
  } else {
    for (const auto& l : out.lines) std::cout << l << "\n";
    if (command == "verify") std::cout << "verdict: " << (out.pass ? "PASS" : "FAIL") << "\n";
  }
  return out.pass ? 0 : 1;
}

int fail(const std::string& command, const Options& o, const Error& e, int code) {
  json err = {{"error", e.name()}, {"message", e.what()}};
  if (const auto* pe = dynamic_cast<const ParseError*>(&e)) err["position"] = pe->position();
  if (o.json) {
    const json doc = {{"command", command},
                      {"inputs", inputs_json(command, o)},
                      {"results", json::array({err})},
                      {"verdict", "ERROR"}};
    std::cout << doc.dump(2) << "\n";
  }
  std::cerr << "error: " << e.name() << ": " << e.what() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact engine for quantum differential operators"};
  app.require_subcommand(1);
  Options o;

  struct Sub {
    const char* name;
    const char* help;
    Outcome (*run)(const Options&);
  };
  const std::vector<Sub> subs{
      {"eval", "Print the per-degree symbols of an operator expression", cmd_eval},
      {"apply", "Apply an operator to a ring element", cmd_apply},
      {"bracket", "Twisted bracket of two operators", cmd_bracket},
      {"integrate", "Solve [Q, x] = P*s[b] (or [Q, x_i] = F_i on n=k)", cmd_integrate},
      {"simplicity-witness", "Steps reducing a nonzero operator to the identity", cmd_simplicity},
      {"uq", "Images of a U_q expression under alpha, gamma and eta", cmd_uq},
      {"verify", "Run a named verification suite", cmd_verify},
      {"suites", "List the verification suites", cmd_suites},
  };

  std::vector<CLI::App*> handles;
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("args", o.args, "Expressions or suite name");
    sub->add_option("--ring", o.ring, "Ring: x, y, laurent or n=<k>");
    sub->add_option("--twist", o.twist, "Bracket twist");
    sub->add_option("--word", o.word, "Comma-separated exponents a_1..a_n")->delimiter(',');
    sub->add_option("--b", o.b, "Exponent of the trailing sigma");
    sub->add_option("--level", o.level, "Truncation level n");
    sub->add_option("--max-degree", o.max_degree, "Suite size bound");
    sub->add_option("--cases", o.cases, "Number of random cases");
    sub->add_option("--seed", o.seed, "Random seed");
    sub->add_flag("--json", o.json, "Emit a JSON report");
    handles.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (!handles[i]->parsed()) continue;
    const std::string command = subs[i].name;
    try {
      return emit(command, o, subs[i].run(o));
    } catch (const ParseError& e) {
      return fail(command, o, e, 2);
    } catch (const Error& e) {
      return fail(command, o, e, 3);
    }
  }
  return 2;
}
