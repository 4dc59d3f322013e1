#include "mucont/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "mucont/chain_oracle.hpp"
#include "mucont/error.hpp"
#include "mucont/fixpoint.hpp"
#include "mucont/realizer.hpp"
#include "mucont/representations.hpp"
#include "mucont/selection.hpp"
#include "mucont/serialization.hpp"

namespace mucont::cli {

namespace {

constexpr std::uint64_t kDefaultOracleLimit = 100'000'000;

struct Report {
  int exit_code = kOk;
  Json json = Json::object();
  std::vector<std::string> lines;
};

/// Modulus given as a JSON file or as a named table.
struct ModulusOption {
  std::string path;
  std::string table;
  std::uint32_t table_depth = kInstanceModulusDepth;

  void attach(CLI::App& cmd, bool required) {
    auto* file = cmd.add_option("--modulus", path, "Modulus JSON file ('-' for standard input)");
    auto* named = cmd.add_option("--table", table, "Named modulus table: identity, sqrt, square, one, log")
                      ->check(CLI::IsMember({"identity", "sqrt", "square", "one", "log"}));
    file->excludes(named);
    cmd.add_option("--table-depth", table_depth, "Depth of a named table")->check(CLI::Range(1U, 1U << 24));
    if (required) {
      auto* group = cmd.add_option_group("modulus source");
      group->add_option(file);
      group->add_option(named);
      group->require_option(1);
    }
  }

  bool given() const { return !path.empty() || !table.empty(); }
};

struct Options {
  bool json = false;
  std::uint64_t seed = 1;
  std::uint64_t oracle_limit = kDefaultOracleLimit;

  ModulusOption modulus;
  std::string multifunction;
  std::string problem;
  std::string constant;
  std::uint32_t depth = 4;
  std::uint32_t rounds = 1;
  bool oracle = false;
  std::uint32_t precision = 0;
  std::size_t count = 1000;
  std::string g = "identity";
};

Json load_json(const std::string& option, const std::string& path, std::istream& in) {
  std::ifstream file;
  std::istream* source = &in;
  if (path != "-") {
    file.open(path);
    if (!file) throw FormatError(option + ": cannot open '" + path + "'");
    source = &file;
  }
  try {
    return Json::parse(*source);
  } catch (const Json::exception& e) {
    throw FormatError(option + ": invalid JSON (" + e.what() + ")");
  }
}

Modulus resolve_modulus(const ModulusOption& m, std::istream& in) {
  if (!m.path.empty()) {
    try {
      return modulus_from_json(load_json("--modulus", m.path, in));
    } catch (const FormatError& e) {
      throw FormatError(std::string("--modulus: ") + e.what());
    }
  }
  const auto d = m.table_depth;
  if (m.table == "identity") return Modulus::identity(d);
  if (m.table == "sqrt") return sqrt_modulus(d);
  if (m.table == "square") return square_modulus(d);
  if (m.table == "one") return Modulus::constant(d, Dyadic(1));
  if (m.table == "log") return log_modulus(d);
  throw FormatError("--table: unknown table '" + m.table + "'");
}

Multifunction load_multifunction(const std::string& path, std::istream& in) {
  try {
    return multifunction_from_json(load_json("--multifunction", path, in));
  } catch (const FormatError& e) {
    throw FormatError(std::string("--multifunction: ") + e.what());
  }
}

Dyadic parse_constant(const std::string& text) {
  try {
    return Dyadic::parse(text);
  } catch (const Error& e) {
    throw FormatError(std::string("--constant: ") + e.what());
  }
}

std::string table_prefix(const Modulus& m, std::size_t count) {
  std::string out;
  for (std::size_t k = 0; k < std::min<std::size_t>(count, m.values().size()); ++k) {
    out += (k ? " " : "") + m.values()[k].to_string();
  }
  if (m.values().size() > count) out += " ...";
  return out;
}

std::string chain_text(const Json& chain) {
  std::string out;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    out += (i ? (i % 2 ? " -> " : " ; ") : "") + std::string(i % 2 ? "y=" : "x=") + chain[i].get<std::string>();
  }
  return out;
}

Report check_geometric_command(const Options& o, std::istream& in) {
  const auto m = resolve_modulus(o.modulus, in);
  const auto c = check_geometric(m, parse_constant(o.constant));
  Report r;
  r.json = certificate_to_json(c);
  if (c.certified()) {
    r.lines.push_back("geometric up to depth " + std::to_string(c.depth) + " with C = " + c.constant.to_string());
    r.lines.push_back("largest tail sum relative to its head: " + c.tail_sum.to_string());
  } else {
    r.exit_code = kRefuted;
    const auto k = *c.witness_scale;
    r.lines.push_back("refuted at scale " + std::to_string(k) + ": tail sum " + c.tail_sum.to_string() + " > " +
                      c.constant.to_string() + " * " + m.at_scale(k).to_string());
  }
  return r;
}

Report check_continuity_command(const Options& o, std::istream& in) {
  const auto f = load_multifunction(o.multifunction, in);
  const auto m = resolve_modulus(o.modulus, in);
  const auto decision = decide_continuity(f, m);
  Report r;
  r.json["continuous"] = decision.continuous;
  r.json["fixpoint_iterations"] = decision.fixpoint.iterations;
  if (decision.witness) r.json["witness"] = f.domain()->label(*decision.witness);
  r.lines.push_back(decision.continuous ? "continuous" : "not continuous");
  r.lines.push_back("fixpoint iterations: " + std::to_string(decision.fixpoint.iterations));
  if (decision.witness) {
    r.lines.push_back("witness: x = " + f.domain()->label(*decision.witness) + " keeps no value in the fixpoint");
  }
  if (!decision.continuous) r.exit_code = kRefuted;
  if (o.oracle) {
    const auto result = chain_continuity_oracle(f, m, o.depth, OracleLimits{o.oracle_limit});
    auto oj = oracle_result_to_json(result, f);
    oj["rounds"] = o.depth;
    r.lines.push_back("chain oracle at depth " + std::to_string(o.depth) + ": " +
                      (result.continuous ? "passes" : "refuted"));
    if (result.refutation) {
      r.lines.push_back("chain: " + chain_text(oj["chain"]));
      r.exit_code = kRefuted;
    }
    r.json["oracle"] = std::move(oj);
  }
  return r;
}

Report fixpoint_command(const Options& o, std::istream& in) {
  const auto f = load_multifunction(o.multifunction, in);
  const auto m = resolve_modulus(o.modulus, in);
  const auto fix = greatest_fixpoint(f, m);
  Report r;
  r.json["iterations"] = fix.iterations;
  r.json["size"] = fix.relation.size();
  r.json["pairs"] = relation_to_json(fix.relation, f);
  r.lines.push_back("iterations: " + std::to_string(fix.iterations));
  r.lines.push_back("pairs kept: " + std::to_string(fix.relation.size()) + " of " + std::to_string(f.pair_count()));
  for (const auto& [x, y] : fix.relation.pairs()) {
    r.lines.push_back("  " + f.domain()->label(x) + " -> " + f.codomain()->label(y));
  }
  return r;
}

Report select_command(const Options& o, std::istream& in) {
  const auto f = load_multifunction(o.multifunction, in);
  const auto m = resolve_modulus(o.modulus, in);
  std::optional<Dyadic> c;
  if (!o.constant.empty()) c = parse_constant(o.constant);
  const auto trace = select(f, m, c);
  Report r;
  r.json = selection_trace_to_json(trace, f);
  r.lines.push_back(std::string("bound: ") + (trace.bound_kind == BoundKind::mu ? "mu" : "2C mu"));
  r.lines.push_back("certified modulus: " + table_prefix(trace.certified_modulus, 12));
  if (trace.check.tightest) r.lines.push_back("tightest slack: " + trace.check.slack.to_string());
  for (const auto& [x, y] : trace.selection.pairs()) {
    r.lines.push_back("  " + f.domain()->label(x) + " -> " + f.codomain()->label(y));
  }
  return r;
}

Json conditions_to_json(const RealizerConditions& c) {
  return Json{{"realizes", c.realizes}, {"pushforward", c.pushforward}, {"pullback", c.pullback}};
}

Report synth_realizer_command(const Options& o, std::istream& in) {
  RealizerProblem problem = [&] {
    try {
      return problem_from_json(load_json("--problem", o.problem, in));
    } catch (const FormatError& e) {
      throw FormatError(std::string("--problem: ") + e.what());
    }
  }();
  auto result = synthesize_realizer(problem);
  problem.candidate = result.realizer;
  const auto conditions = realizer_conditions(problem);
  Report r;
  r.json["certified_modulus"] = modulus_to_json(result.certified);
  r.json["conditions"] = conditions_to_json(conditions);
  r.json["fixpoint_iterations"] = result.trace.fixpoint_iterations;
  r.json["realizer"] = relation_to_json(RelationSet::graph(result.realizer), result.realizer);
  r.lines.push_back("realizer on " + std::to_string(result.realizer.dom().size()) + " codes");
  r.lines.push_back("certified modulus: " + table_prefix(result.certified, 12));
  r.lines.push_back(std::string("realizer conditions (i, ii, iii): ") + (conditions.realizes ? "yes" : "no") + ", " +
                    (conditions.pushforward ? "yes" : "no") + ", " + (conditions.pullback ? "yes" : "no"));
  return r;
}

Report demo_signed_digit(const Options& o) {
  const auto p = o.precision ? o.precision : 16;
  std::mt19937_64 rng(o.seed);
  std::size_t found = 0;
  std::optional<WitnessQuery> missing;
  std::size_t missing_count = 0;
  for (std::size_t i = 0; i < o.count; ++i) {
    const auto q = random_witness_query(rng, p);
    const auto w = sigma_inverse_witness(q.s, q.n, q.x2);
    if (!w) {
      if (!missing) missing = q;
      ++missing_count;
      continue;
    }
    if (sigma_decode(*w) != q.x2 || word_distance(q.s.bits(), w->bits()) > Dyadic::pow2(-2 * std::int64_t{q.n})) {
      throw InternalError("witness for " + q.s.to_string() + " violates its postcondition");
    }
    ++found;
  }
  Report r;
  r.json = Json{{"precision", p}, {"seed", o.seed}, {"queries", o.count}, {"found", found}, {"missing", missing_count}};
  r.lines.push_back("queries: " + std::to_string(o.count) + " at precision " + std::to_string(p));
  r.lines.push_back("witness found: " + std::to_string(found));
  r.lines.push_back("no code of x2 keeps the first n digits: " + std::to_string(missing_count));
  if (missing) {
    r.exit_code = kRefuted;
    r.json["witness"] = Json{{"s", missing->s.to_string()}, {"n", missing->n}, {"x2", missing->x2.to_string()}};
    r.lines.push_back("first such query: s = " + missing->s.to_string() + ", n = " + std::to_string(missing->n) +
                      ", x2 = " + missing->x2.to_string());
  }
  return r;
}

Report demo_binary_counterexample(const Options& o, std::istream& in) {
  const auto p = o.precision ? o.precision : 3;
  std::optional<Modulus> m;
  if (o.modulus.given()) m = resolve_modulus(o.modulus, in);
  const auto ce = binary_inverse_counterexample(p, m, o.rounds);
  Report r;
  r.json["precision"] = p;
  r.json["modulus"] = modulus_to_json(ce.modulus);
  r.json["rounds"] = ce.rounds;
  r.json["oracle"] = oracle_result_to_json(ce.result, ce.inverse);
  r.lines.push_back("binary inverse on [3/8, 5/8] at precision " + std::to_string(p));
  r.lines.push_back("modulus: " + table_prefix(ce.modulus, 8));
  if (ce.result.refutation) {
    r.exit_code = kRefuted;
    r.lines.push_back("refuted in " + std::to_string(ce.rounds) + " round(s)");
    r.lines.push_back("chain: " + chain_text(r.json["oracle"]["chain"]));
    for (std::size_t i = 0; i < ce.result.refutation->answers.size(); ++i) {
      const auto y = ce.result.refutation->answers[i];
      const auto x1 = ce.result.refutation->next[i].x;
      r.lines.push_back("  answer " + ce.inverse.codomain()->label(y) + " is stuck at x = " +
                        ce.inverse.domain()->label(x1));
    }
  } else {
    r.lines.push_back("no refutation in " + std::to_string(ce.rounds) + " round(s)");
  }
  return r;
}

Report demo_roundtrip(const Options& o) {
  const auto p = o.precision ? o.precision : 8;
  auto xi = make_instance("signed_digit", p);
  auto upsilon = xi;
  std::vector<std::pair<PointIndex, PointIndex>> pairs;
  for (PointIndex x = 0; x < xi.values->size(); ++x) {
    const auto v = xi.values->points()[x];
    pairs.emplace_back(x, static_cast<PointIndex>(*upsilon.values->find_point(o.g == "negation" ? -v : v)));
  }
  auto g = Multifunction::from_pairs(xi.values, upsilon.values, pairs);
  RealizerProblem problem{xi, upsilon, g, Modulus::identity(kInstanceModulusDepth), std::nullopt, std::nullopt};
  auto synth = synthesize_realizer(problem);
  problem.candidate = synth.realizer;
  problem.candidate_modulus = synth.certified;
  const auto forward = forward_modulus(problem);
  const auto& nu = upsilon.mu;
  const auto& nu_prime = *upsilon.mu_prime;
  const auto& mu = xi.mu;
  const auto& mu_prime = *xi.mu_prime;
  const auto remark = modulus_compose(
      nu, modulus_compose(nu_prime, modulus_compose(problem.kappa, modulus_compose(mu_prime, mu))));
  const auto remark_verdict = decide_continuity(g, remark).continuous;

  Report r;
  r.json["precision"] = p;
  r.json["g"] = o.g;
  r.json["certified_modulus"] = modulus_to_json(synth.certified);
  r.json["forward_modulus"] = modulus_to_json(forward.modulus);
  r.json["forward_verified"] = forward.verified;
  r.json["remark_modulus"] = modulus_to_json(remark);
  r.json["remark_verified"] = remark_verdict;
  r.lines.push_back("g = " + o.g + " on the signed-digit grid, precision " + std::to_string(p));
  r.lines.push_back("realizer modulus nu' kappa mu: " + table_prefix(synth.certified, 12));
  r.lines.push_back("forward modulus nu K mu': " + table_prefix(forward.modulus, 12));
  r.lines.push_back(std::string("g within the forward modulus: ") + (forward.verified ? "yes" : "no"));
  r.lines.push_back("nu nu' kappa mu' mu: " + table_prefix(remark, 12));
  r.lines.push_back(std::string("g within nu nu' kappa mu' mu: ") + (remark_verdict ? "yes" : "no"));
  if (!forward.verified || !remark_verdict) {
    r.exit_code = kRefuted;
    if (forward.witness) r.json["witness"] = g.domain()->label(*forward.witness);
  }
  return r;
}

std::string render(const Report& r, bool json) {
  if (json) return r.json.dump(2) + "\n";
  std::string out;
  for (const auto& line : r.lines) out += line + "\n";
  return out;
}

std::uint64_t default_oracle_limit() {
  if (const char* env = std::getenv("MUCONT_ORACLE_LIMIT")) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return kDefaultOracleLimit;
}

}  // namespace

CommandResult run(const std::vector<std::string>& args, std::istream& in) {
  Options o;
  o.oracle_limit = default_oracle_limit();

  CLI::App app{"Quantitative continuity of finite multifunctions", args.empty() ? "mucont" : args[0]};
  app.require_subcommand(1);
  app.add_flag("--json", o.json, "Write the report as JSON");
  app.add_option("--seed", o.seed, "Seed for randomized demos");
  app.add_option("--oracle-limit", o.oracle_limit,
                 "Game-tree size guard for the chain oracle (default: $MUCONT_ORACLE_LIMIT or 1e8)");

  std::function<Report()> action;

  auto* geo = app.add_subcommand("check-geometric", "Check C-geometricity of a modulus table");
  o.modulus.attach(*geo, true);
  geo->add_option("--constant", o.constant, "The constant C")->required();
  geo->callback([&] { action = [&] { return check_geometric_command(o, in); }; });

  auto* cont = app.add_subcommand("check-continuity", "Decide mu-continuity of a multifunction");
  cont->add_option("--multifunction", o.multifunction, "Multifunction JSON file")->required();
  o.modulus.attach(*cont, true);
  cont->add_flag("--oracle", o.oracle, "Also run the chain-game oracle");
  cont->add_option("--depth", o.depth, "Rounds of the chain game")->check(CLI::Range(0U, 16U));
  cont->callback([&] { action = [&] { return check_continuity_command(o, in); }; });

  auto* fix = app.add_subcommand("fixpoint", "Compute the greatest fixpoint of the pruning operator");
  fix->add_option("--multifunction", o.multifunction, "Multifunction JSON file")->required();
  o.modulus.attach(*fix, true);
  fix->callback([&] { action = [&] { return fixpoint_command(o, in); }; });

  auto* sel = app.add_subcommand("select", "Construct a single-valued selection with a certified modulus");
  sel->add_option("--multifunction", o.multifunction, "Multifunction JSON file")->required();
  o.modulus.attach(*sel, true);
  sel->add_option("--constant", o.constant, "Geometric constant C for non-ultrametric codomains");
  sel->callback([&] { action = [&] { return select_command(o, in); }; });

  auto* synth = app.add_subcommand("synth-realizer", "Synthesize a realizer for a problem bundle");
  synth->add_option("--problem", o.problem, "Problem bundle JSON file")->required();
  synth->callback([&] { action = [&] { return synth_realizer_command(o, in); }; });

  auto* demo = app.add_subcommand("demo", "Worked examples");
  demo->require_subcommand(1);
  auto* sd = demo->add_subcommand("signed-digit", "Signed-digit codes near a given code");
  sd->add_option("--precision", o.precision, "Number of signed digits (default 16)")->check(CLI::Range(1U, 32U));
  sd->add_option("--count", o.count, "Number of random queries");
  sd->callback([&] { action = [&] { return demo_signed_digit(o); }; });

  auto* bin = demo->add_subcommand("binary-counterexample", "The binary inverse around 1/2");
  bin->add_option("--precision", o.precision, "Word length (default 3)")->check(CLI::Range(3U, 20U));
  bin->add_option("--depth", o.rounds, "Rounds of the chain game (default 1)")->check(CLI::Range(0U, 16U));
  o.modulus.attach(*bin, false);
  bin->callback([&] { action = [&] { return demo_binary_counterexample(o, in); }; });

  auto* rt = demo->add_subcommand("roundtrip-remark", "Realizer synthesis followed by the forward modulus");
  rt->add_option("--precision", o.precision, "Number of signed digits (default 8)")->check(CLI::Range(1U, 10U));
  rt->add_option("--g", o.g, "identity or negation")->check(CLI::IsMember({"identity", "negation"}));
  rt->callback([&] { action = [&] { return demo_roundtrip(o); }; });

  if (args.size() > 1 && !args[1].empty() && args[1][0] != '-') {
    bool known = false;
    for (const auto* sub : app.get_subcommands({})) known = known || sub->get_name() == args[1];
    if (!known) return {kUsage, {}, "unknown command '" + args[1] + "'"};
  }

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("mucont");
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    return {kOk, app.help(), {}};
  } catch (const CLI::CallForAllHelp&) {
    return {kOk, app.help("", CLI::AppFormatMode::All), {}};
  } catch (const CLI::ParseError& e) {
    return {kUsage, {}, e.what()};
  }

  try {
    const auto report = action();
    return {report.exit_code, render(report, o.json), {}};
  } catch (const ContinuityError& e) {
    Report r;
    r.exit_code = kRefuted;
    r.json = Json{{"continuous", false}, {"witness", e.witness()}, {"message", e.what()}};
    r.lines = {e.what(), "witness: x = " + e.witness()};
    return {kRefuted, render(r, o.json), {}};
  } catch (const InternalError& e) {
    return {kUsage, {}, std::string("internal error: ") + e.what()};
  } catch (const Error& e) {
    return {kUsage, {}, e.what()};
  }
}

}  // namespace mucont::cli
