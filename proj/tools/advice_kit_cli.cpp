// advice-kit: command-line front end. Prints one JSON document per run.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "advice_kit.hpp"

#ifndef ADVICE_KIT_VERSION
#define ADVICE_KIT_VERSION "0.0.0"
#endif

using json = nlohmann::ordered_json;
using namespace advice_kit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDiverged = 2;
constexpr int kExitParse = 3;
constexpr int kExitRefuted = 4;
constexpr int kExitReplayMismatch = 5;
constexpr int kExitUsage = 64;

struct Outcome {
  json result;
  int exit = kExitOk;
};

std::string joinSymbols(const Prefix& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s;
}

std::string decimal(const Rational& q, int digits = 12) {
  mpf_class f(q, 256);
  std::ostringstream os;
  os.precision(digits);
  os << f;
  return os.str();
}

json intervalJson(const Interval& iv) {
  return {{"lo", iv.lo().get_str()}, {"hi", iv.hi().get_str()}, {"approx", decimal(iv.midpoint())}};
}

/// Answer symbols plus decoded enclosures when the output space is real.
json answerJson(const MultiProblem& p, const Prefix& out) {
  json j;
  j["answer"] = joinSymbols(out);
  const auto& space = p.outputSpace;
  std::size_t parts = 0;
  if (space.toString() == SpaceDescriptor::realSigned().toString()) parts = 1;
  for (std::size_t k = 2; k <= 16 && !parts; ++k)
    if (space.toString() == SpaceDescriptor::power(SpaceDescriptor::realSigned(), k).toString()) parts = k;
  if (parts) {
    json encl = json::array();
    for (const auto& comp : splitPrefix(out, parts)) {
      auto iv = decodeRealPrefix(comp);
      encl.push_back(iv ? intervalJson(*iv) : json(nullptr));
    }
    j["enclosures"] = encl;
  }
  return j;
}

ParsedFixture fixtureArg(const std::string& arg) {
  if (std::filesystem::exists(arg)) return loadFixture(arg);
  if (arg.find("problem:") != std::string::npos) return parseFixture(arg);
  throw LiteralError("fixture '" + arg + "' is neither a file nor a fixture literal");
}

// Subcommands.

Outcome solve(const std::string& fixture, std::size_t depth, std::size_t variant) {
  auto pf = fixtureArg(fixture);
  auto p = problemById(pf.problemId);
  Outcome o;
  if (p->oracleVariants.empty()) throw std::invalid_argument(p->id + " has no reference solver");
  auto answer = p->oracle(pf.fixture, variant % p->oracleVariants.size());
  o.result["problem"] = p->id;
  o.result["variant"] = p->oracleVariants[variant % p->oracleVariants.size()];
  if (!answer) {
    o.result["status"] = "unsolved";
    o.exit = kExitDiverged;
    return o;
  }
  Fuel fuel(defaultFuel());
  auto out = answer->prefix(p->outputLength(depth), fuel);
  if (!out) {
    o.result["status"] = "diverged";
    o.exit = kExitDiverged;
    return o;
  }
  o.result.update(answerJson(*p, *out));
  auto v = p->verify(pf.fixture.name, *out, depth);
  o.result["verifierStatus"] = toString(v);
  if (v == Verdict::Refuted) o.exit = kExitRefuted;
  return o;
}

std::size_t witnessSize(const std::string& witness, const std::string& problemId) {
  if (witness == "mlpo-lineq" && problemId.rfind("MLPO_", 0) == 0) return std::stoul(problemId.substr(5)) - 1;
  return 2;
}

Outcome reduce(const std::string& witness, const std::string& fixture, std::size_t depth, std::size_t variant) {
  auto pf = fixtureArg(fixture);
  auto w = witnessById(witness, witnessSize(witness, pf.problemId));
  if (w->from->id != pf.problemId)
    throw LiteralError("witness " + witness + " reduces " + w->from->id + ", fixture is " + pf.problemId);
  Outcome o;
  o.result["witness"] = w->id;
  o.result["from"] = w->from->id;
  o.result["to"] = w->to->id;
  o.result["solverVariant"] = w->to->oracleVariants[variant % w->to->oracleVariants.size()];
  auto c = checkReduction(*w, oracleSolver(w->to, variant % w->to->oracleVariants.size()), pf.fixture, depth);
  auto run = applyReduction(*w, oracleSolver(w->to, variant % w->to->oracleVariants.size()), pf.fixture,
                            w->from->outputLength(depth));
  o.result.update(answerJson(*w->from, run.output));
  o.result["verifierStatus"] = toString(c.verdict);
  o.result["steps"] = run.steps;
  if (witness == "llpo-seigen2") {
    std::size_t v = variant % w->to->oracleVariants.size();
    if (auto vec = w->to->oracle(w->targetFixture(pf.fixture), v)) {
      Fuel fuel(defaultFuel());
      auto r = llpoSeigenRounds(*vec, 64, fuel);
      o.result["rounds"] = r.rounds;
      o.result["precisionUsed"] = r.precision;
    }
  }
  if (c.diverged) {
    o.result["status"] = "diverged";
    o.exit = kExitDiverged;
  } else if (c.verdict == Verdict::Refuted) {
    o.exit = kExitRefuted;
  }
  return o;
}

// A bare number is a symbol for discrete advice spaces and a real otherwise.
Name discreteOrRealAdvice(const AdviceMachine& am, const std::string& text) {
  Rational q = parseRational(text);
  auto kind = am.scheme.space.kind();
  if (kind != SpaceDescriptor::Kind::Finite && kind != SpaceDescriptor::Kind::Nat) return encodeRational(q);
  if (q.get_den() != 1 || q < 0) throw LiteralError("advice for " + am.scheme.toString() + " must be a natural number");
  auto n = static_cast<Symbol>(q.get_num().get_ui());
  if (kind == SpaceDescriptor::Kind::Finite && n >= am.scheme.space.size())
    throw LiteralError("advice symbol " + text + " outside " + am.scheme.space.toString() + " (symbols are 0-based)");
  return natName(n);
}

Outcome adviceRun(const std::string& machine, const std::string& fixture, const std::string& advice,
                  std::size_t depth) {
  auto am = adviceMachineById(machine);
  auto pf = fixtureArg(fixture);
  if (pf.problemId != am->problem->id)
    throw LiteralError(machine + " solves " + am->problem->id + ", fixture is " + pf.problemId);
  Name w = isNameLiteral(advice) ? parseNameLiteral(advice) : discreteOrRealAdvice(*am, advice);
  Outcome o;
  o.result["machine"] = am->id;
  o.result["scheme"] = am->scheme.toString();
  std::size_t k = am->problem->outputLength(depth);
  auto run = runWithAdvice(*am, pf.fixture.name, w, k);
  o.result.update(answerJson(*am->problem, run.output));
  o.result["steps"] = run.steps;
  if (run.diverged || run.output.size() < k) {
    o.result["status"] = "diverged";
    o.exit = kExitDiverged;
    return o;
  }
  auto v = am->problem->verify(pf.fixture.name, run.output, depth);
  o.result["verifierStatus"] = toString(v);
  try {
    o.result["adviceInSet"] = am->adviceFamily(pf.fixture).contains(w, depth);
  } catch (const std::invalid_argument&) {
    o.result["adviceInSet"] = nullptr;  // family needs a meaning the literal does not carry
  }
  if (v == Verdict::Refuted) o.exit = kExitRefuted;
  return o;
}

Outcome estimate(const std::string& machine, const std::string& set, const std::string& fixture,
                 std::uint64_t trials, std::uint64_t seed, std::size_t depth, unsigned jobs) {
  auto am = adviceMachineById(machine);
  Fixture x = !set.empty() ? setFixture(am->problem->id, set) : fixtureArg(fixture).fixture;
  auto e = monteCarloSuccess(*am, x, trials, depth, seed, jobs);
  Outcome o;
  o.result["machine"] = am->id;
  o.result["measure"] = am->scheme.measure->toString();
  o.result["trials"] = e.trials;
  o.result["successes"] = e.successes;
  o.result["pointEstimate"] = e.point;
  o.result["wilson99"] = {e.lo, e.hi};
  if (const auto* m = std::any_cast<ChoiceMeaning>(&x.meaning); m && m->measure) {
    o.result["exactMeasure"] = m->measure->get_str();
    o.result["covered"] = e.covers(m->measure->get_d());
  }
  return o;
}

json profileJson(const ComplexityProfile& p) {
  json pts = json::array();
  for (const auto& pt : p.points) {
    json row = {pt.k, pt.maxSteps};
    if (pt.capped) row.push_back("capped");
    pts.push_back(row);
  }
  return {{"machine", p.machineId},
          {"mode", p.points.empty() ? "exact" : toString(p.points.front().mode)},
          {"inputs", p.inputsUsed},
          {"points", pts}};
}

Outcome complexity(const std::string& machine, std::size_t kmax, const std::string& mode, std::size_t samples,
                   std::uint64_t seed, unsigned jobs, const std::vector<std::uint64_t>& bound) {
  auto m = complexityMachineById(machine);
  ComplexityProfile p = mode == "exact"
                            ? tauProfileExhaustive(*m, kmax)
                            : tauProfileSampled(*m, kmax, sampleCantorInputs(samples, seed),
                                                std::to_string(samples) + " sampled inputs, seed " + std::to_string(seed),
                                                jobs);
  Outcome o;
  o.result = profileJson(p);
  if (bound.size() == 2) {
    auto b = polyBoundCheck(p, bound[0], bound[1]);
    o.result["bound"] = {{"c", bound[0]}, {"d", bound[1]}, {"verdict", toString(b.verdict)}};
    if (b.violatedAt) o.result["bound"]["violatedAt"] = *b.violatedAt;
  }
  return o;
}

Outcome demo(const std::string& which, unsigned jobs) {
  Outcome o;
  if (which == "circle" || which == "all") {
    auto am = circleAdviceMachine();
    json rows = json::array();
    struct Case {
      std::string label;
      Name x;
      Symbol advice;
    };
    std::vector<Case> cases = {
        {"1/3", encodeRational(ratio(1, 3)), 1},
        {"sqrt(2)-1", computableRealName("sqrt2-1", 0,
                                         [](std::size_t bits) {
                                           return sqrtEnclosure(Rational(2), static_cast<unsigned>(bits)) -
                                                  Interval(1);
                                         }),
         0},
    };
    for (const auto& c : cases) {
      auto r = runWithAdvice(*am, c.x, natName(c.advice), 48);
      auto iv = decodeRealPrefix(r.output);
      json row = {{"x", c.label}, {"advice", c.advice}};
      row["output"] = iv ? intervalJson(*iv) : json(nullptr);
      row["verifierStatus"] = toString(am->problem->verify(c.x, r.output, 40));
      rows.push_back(row);
    }
    o.result["circle"] = rows;
  }
  if (which == "fp-fnp" || which == "all") {
    auto padded = paddedDelayMachine();
    auto direct = tauProfileSampled(*padded, 12, sampleCantorInputs(16, 1), "16 sampled inputs, seed 1", jobs);
    bool allRejected = true;
    for (std::uint64_t c = 1; c <= 10; ++c)
      for (std::uint64_t d = 1; d <= 10; ++d)
        allRejected = allRejected && polyBoundCheck(direct, c, d).verdict == BoundVerdict::Reject;
    auto g = fnpWitness(padded).g;
    auto witness = tauProfileExhaustive(*g, 10);
    auto gb = polyBoundCheck(witness, 8, 1);
    o.result["fpFnp"] = {{"direct", profileJson(direct)},
                         {"directRejectsAllUpTo10", allRejected},
                         {"witness", profileJson(witness)},
                         {"witnessBound", {{"c", 8}, {"d", 1}, {"verdict", toString(gb.verdict)}}}};
  }
  if (o.result.is_null()) throw CLI::ValidationError("--which", "expected circle, fp-fnp or all");
  return o;
}

json loadJson(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LiteralError("cannot read report '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw LiteralError(std::string("malformed report: ") + e.what());
  }
}

int run(std::vector<std::string> args, json* payloadOut);

int replay(const std::string& path) {
  json old = loadJson(path);
  if (!old.contains("command") || !old["command"].is_array()) throw LiteralError("report has no command echo");
  std::vector<std::string> args;
  for (const auto& a : old["command"]) args.push_back(a.get<std::string>());
  if (!args.empty() && args.front() == "--replay") throw LiteralError("refusing to replay a replay");
  json payload;
  std::ostringstream sink;
  auto* saved = std::cout.rdbuf(sink.rdbuf());
  int code = run(args, &payload);
  std::cout.rdbuf(saved);
  bool same = payload == old["result"];
  json report = old;
  report["replay"] = {{"source", path}, {"payloadMatches", same}};
  std::cout << report.dump(2) << "\n";
  return same ? code : kExitReplayMismatch;
}

int run(std::vector<std::string> args, json* payloadOut) {
  CLI::App app{"advice-kit: computation with advice on represented spaces"};
  app.require_subcommand(0, 1);
  std::string replayPath;
  app.add_option("--replay", replayPath, "Re-run the command recorded in a report and compare payloads");

  unsigned jobs = 1;
  std::size_t depth = 48, estimateDepth = 16, variant = 0, kmax = 16, samples = 16;
  std::uint64_t seed = 42, trials = 10000;
  std::string fixture, witness, machine, advice, set, mode = "exact", which = "all";
  std::vector<std::uint64_t> bound;

  auto* solveCmd = app.add_subcommand("solve", "Run a problem's reference solver on a fixture");
  solveCmd->add_option("--fixture", fixture, "Fixture file or literal")->required();
  solveCmd->add_option("--depth", depth, "Verifier depth");
  solveCmd->add_option("--variant", variant, "Oracle variant index");

  auto* reduceCmd = app.add_subcommand("reduce", "Apply a reduction witness with a reference solver");
  reduceCmd->add_option("--witness", witness, "Witness id")->required();
  reduceCmd->add_option("--fixture", fixture, "Fixture file or literal")->required();
  reduceCmd->add_option("--depth", depth, "Verifier depth");
  reduceCmd->add_option("--variant", variant, "Target solver variant index");

  auto* adviceCmd = app.add_subcommand("advice-run", "Run an advice machine with given advice");
  adviceCmd->add_option("--machine", machine, "Advice machine id")->required();
  adviceCmd->add_option("--fixture", fixture, "Fixture file or literal")->required();
  adviceCmd->add_option("--advice", advice, "Advice: name literal or rational")->required();
  adviceCmd->add_option("--depth", depth, "Verifier depth");

  auto* estimateCmd = app.add_subcommand("estimate", "Monte-Carlo success rate of random advice");
  estimateCmd->add_option("--machine", machine, "Advice machine id")->required();
  auto* setOpt = estimateCmd->add_option("--set", set, "Closed-set literal input");
  auto* fixOpt = estimateCmd->add_option("--fixture", fixture, "Fixture file or literal");
  setOpt->excludes(fixOpt);
  estimateCmd->add_option("--trials", trials, "Number of trials")->check(CLI::PositiveNumber);
  estimateCmd->add_option("--seed", seed, "Seed");
  estimateCmd->add_option("--depth", estimateDepth, "Verifier depth");
  estimateCmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* complexityCmd = app.add_subcommand("complexity", "Step-count profile of a machine");
  complexityCmd->add_option("--machine", machine, "Machine id")->required();
  complexityCmd->add_option("--kmax", kmax, "Largest output length")->check(CLI::Range(1, 24));
  complexityCmd->add_option("--mode", mode, "exact or sampled")->check(CLI::IsMember({"exact", "sampled"}));
  complexityCmd->add_option("--samples", samples, "Sampled inputs")->check(CLI::PositiveNumber);
  complexityCmd->add_option("--seed", seed, "Seed for sampled inputs");
  complexityCmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  complexityCmd->add_option("--bound", bound, "Check steps <= c*k^d: --bound c d")->expected(2);

  auto* demoCmd = app.add_subcommand("demo", "Circle example and the FP/FNP demonstration");
  demoCmd->add_option("--which", which, "circle, fp-fnp or all")->check(CLI::IsMember({"circle", "fp-fnp", "all"}));
  demoCmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  if (!replayPath.empty()) {
    if (app.get_subcommands().size()) {
      std::cerr << "error: --replay takes no subcommand\n";
      return kExitUsage;
    }
    return replay(replayPath);
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return kExitUsage;
  }

  Outcome o;
  json report;
  report["command"] = args;
  report["version"] = "advice-kit " ADVICE_KIT_VERSION;
  report["fuel"] = defaultFuel();
  if (solveCmd->parsed()) {
    report["depth"] = depth;
    o = solve(fixture, depth, variant);
  } else if (reduceCmd->parsed()) {
    report["depth"] = depth;
    o = reduce(witness, fixture, depth, variant);
  } else if (adviceCmd->parsed()) {
    report["depth"] = depth;
    o = adviceRun(machine, fixture, advice, depth);
  } else if (estimateCmd->parsed()) {
    if (set.empty() && fixture.empty()) {
      std::cerr << "error: estimate needs --set or --fixture\n";
      return kExitUsage;
    }
    report["depth"] = estimateDepth;
    report["seed"] = seed;
    o = estimate(machine, set, fixture, trials, seed, estimateDepth, jobs);
  } else if (complexityCmd->parsed()) {
    if (mode == "sampled") report["seed"] = seed;
    o = complexity(machine, kmax, mode, samples, seed, jobs, bound);
  } else if (demoCmd->parsed()) {
    o = demo(which, jobs);
  }
  report["result"] = o.result;
  if (payloadOut) *payloadOut = o.result;
  std::cout << report.dump(2) << "\n";
  return o.exit;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return run(args, nullptr);
  } catch (const LiteralError& e) {
    std::cout << json{{"error", "parse"}, {"message", e.what()}}.dump(2) << "\n";
    return kExitParse;
  } catch (const DomainViolated& e) {
    std::cout << json{{"error", "domain"}, {"message", e.what()}}.dump(2) << "\n";
    return kExitParse;
  } catch (const Diverged& e) {
    std::cout << json{{"error", "diverged"}, {"message", e.what()}}.dump(2) << "\n";
    return kExitDiverged;
  } catch (const FactorizationStall& e) {
    std::cout << json{{"error", "diverged"}, {"message", e.what()}}.dump(2) << "\n";
    return kExitDiverged;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
