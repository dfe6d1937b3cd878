// Acceptance run: one PASS/FAIL line per criterion, then a determinism check
// comparing the JSON of criteria 1-8 under one and under eight worker threads.

#include <chrono>
#include <iostream>
#include <map>

#include <CLI11.hpp>
#include <json.hpp>

#include "advice_kit.hpp"

using namespace advice_kit;
using Json = nlohmann::ordered_json;

namespace {

constexpr std::size_t kDepth = 48;

struct Outcome {
  bool pass = true;
  Json detail = Json::object();
};

double seconds(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Symbol firstSymbol(const Name& n) {
  Fuel fuel(defaultFuel());
  return *n.at(0, fuel);
}

Prefix bitsOfIndex(std::size_t i, std::size_t n) {
  Prefix w(n);
  for (std::size_t b = 0; b < n; ++b) w[b] = (i >> (n - 1 - b)) & 1;
  return w;
}

// 1. Reduction witnesses on 100 fixtures and at least two oracle variants each.
Outcome witnessSoundness(unsigned jobs) {
  struct Target {
    std::string id;
    std::size_t n;
  };
  std::vector<Target> targets{{"llpo-seigen2", 2}, {"seigen-tensor", 2}, {"cnat-pcr", 2},
                              {"pc-cantor-interval", 2}, {"pc-interval-cantor", 2}};
  for (std::size_t n = 1; n <= 5; ++n) targets.push_back({"mlpo-lineq", n});
  Outcome o;
  std::uint64_t seed = 100;
  for (const auto& t : targets) {
    auto w = witnessById(t.id, t.n);
    Rng rng(seed++);
    std::vector<Fixture> xs;
    for (int i = 0; i < 100; ++i) xs.push_back(fixtures::forWitness(*w, rng));
    std::size_t nv = w->to->oracleVariants.size();
    std::vector<std::size_t> variants{0};
    if (nv > 1) variants.push_back(nv - 1);
    auto ok = parallelMap<char>(xs.size(), jobs, [&](std::size_t i) {
      for (std::size_t v : variants) {
        auto c = checkReduction(*w, oracleSolver(w->to, v), xs[i], kDepth);
        if (c.diverged || c.verdict != Verdict::Consistent) return char{0};
      }
      return char{1};
    });
    std::size_t good = 0;
    for (char c : ok) good += c ? 1 : 0;
    std::string key = t.id == "mlpo-lineq" ? t.id + ":" + std::to_string(t.n) : t.id;
    o.detail[key] = {{"fixtures", xs.size()}, {"variants", variants.size()}, {"consistent", good}};
    o.pass = o.pass && good == xs.size() && variants.size() >= 2;
  }
  return o;
}

// 2. Hand cases for LLPO ≤ SEigen_2 settle within 12 rounds.
Outcome llpoSeigenRoundsCriterion(unsigned) {
  auto w = llpoToSeigen2Witness();
  auto cantor = [](Prefix pre) { return Name::periodic(Alphabet::binary(), pre, {0}); };
  struct Case {
    std::string label;
    Name x0, x1;
    int valid;  // -1: either answer
  };
  std::vector<Case> cases{{"x0=0,x1=2^-3", Name::zeros(), cantor({0, 0, 1}), 0},
                          {"x0=2^-2,x1=0", cantor({0, 1}), Name::zeros(), 1},
                          {"x0=x1=0", Name::zeros(), Name::zeros(), -1}};
  Outcome o;
  for (const auto& c : cases) {
    Fixture x{pairNames(c.x0, c.x1), {}, c.label};
    Json rows = Json::array();
    for (std::size_t v = 0; v < w->to->oracleVariants.size(); ++v) {
      auto vec = w->to->oracle(w->targetFixture(x), v);
      Fuel fuel(defaultFuel());
      auto r = llpoSeigenRounds(*vec, 12, fuel);
      bool ok = r.answer && r.rounds <= 12 && (c.valid < 0 || *r.answer == static_cast<Symbol>(c.valid));
      auto run = applyReduction(*w, oracleSolver(w->to, v), x, 1);
      ok = ok && run.output.size() == 1 && run.output[0] == *r.answer &&
           w->from->verify(x.name, run.output, 64) == Verdict::Consistent;
      rows.push_back({{"variant", v}, {"rounds", r.rounds}, {"answer", r.answer ? int(*r.answer) : -1}, {"ok", ok}});
      o.pass = o.pass && ok;
    }
    o.detail[c.label] = rows;
  }
  return o;
}

// 3. Fat Cantor stage measures and cylinder masses.
Outcome fatCantorCriterion(unsigned) {
  Outcome o;
  std::size_t stages = 0, cylinders = 0;
  for (std::size_t d = 0; d <= 20; ++d)
    if (buildFatCantor(d).measureAtDepth == Rational(1, 2) + pow2(-static_cast<long>(d) - 1)) ++stages;
  for (std::size_t n = 0; n <= 4; ++n)
    for (std::size_t i = 0; i < (std::size_t{1} << n); ++i)
      if (phiInverseCylinderMeasure(bitsOfIndex(i, n)) == pow2(-static_cast<long>(n) - 1)) ++cylinders;
  o.detail = {{"stagesMatching", stages}, {"stages", 21}, {"cylindersMatching", cylinders}, {"cylinders", 31}};
  o.pass = stages == 21 && cylinders == 31;
  return o;
}

// 4. Random advice success rates and geometric sampler frequencies.
Outcome monteCarloCriterion(unsigned jobs) {
  Outcome o;
  constexpr std::uint64_t kTrials = 100000;
  auto am = pcCantorAdviceMachine();
  for (const Prefix& w : {Prefix{1}, Prefix{1, 0}, Prefix{1, 0, 1}}) {
    double mass = std::ldexp(1.0, -static_cast<int>(w.size()));
    Fixture x = fixtures::cylinder(w);
    for (std::uint64_t seed : {1, 2, 3}) {
      auto e = monteCarloSuccess(*am, x, kTrials, 16, seed, jobs);
      o.detail["cylinder-" + std::to_string(w.size()) + "-seed-" + std::to_string(seed)] = {
          {"successes", e.successes}, {"lo", e.lo}, {"hi", e.hi}, {"measure", mass}, {"covered", e.covers(mass)}};
      o.pass = o.pass && e.covers(mass);
    }
  }
  auto m = MeasureSpec::natGeometric();
  auto draws = parallelMap<Symbol>(kTrials, jobs, [&](std::size_t t) { return firstSymbol(sampleAdvice(m, RandomBits(1, t))); });
  std::map<Symbol, std::uint64_t> counts;
  for (Symbol s : draws) ++counts[s];
  for (Symbol n = 0; n <= 8; ++n) {
    bool ok = withinThreeSigma(counts[n], kTrials, toDouble(natGeometricMass(n)));
    o.detail["geometric-" + std::to_string(n)] = {{"count", counts[n]}, {"within3sigma", ok}};
    o.pass = o.pass && ok;
  }
  return o;
}

// 5. Composition, product and transport of advice machines.
Outcome combinatorCriterion(unsigned jobs) {
  Outcome o;
  auto runAll = [&](const AdviceMachinePtr& am, const std::vector<Fixture>& xs) {
    auto ok = parallelMap<char>(xs.size(), jobs, [&](std::size_t i) {
      AdviceSet a = am->adviceFamily(xs[i]);
      if (a.representatives.empty()) return char{0};
      for (const auto& w : a.representatives)
        if (!adviceRunSucceeds(*am, xs[i], w, kDepth)) return char{0};
      return char{1};
    });
    std::size_t good = 0;
    for (char c : ok) good += c ? 1 : 0;
    return good;
  };
  auto compose = composeAdviceMachines(lpoAdviceMachine(), condFlipAdviceMachine(), lpoAfterCondFlipProblem());
  auto product = productAdviceMachines(llpoAdviceMachine(), llpoAdviceMachine(), ProductMode::Product, llpoPowerProblem(2));
  auto transport = transportAdviceAlongReduction(cnatToPcrWitness(), pcRealAdviceMachine());
  Rng rng(5);
  std::vector<Fixture> flips, pairs, singles;
  for (int i = 0; i < 50; ++i) flips.push_back(fixtures::condFlip(rng));
  for (int i = 0; i < 50; ++i) pairs.push_back(product->fixtures(rng));
  for (Symbol n = 0; n < 10; ++n) singles.push_back(fixtures::natSingleton(n));
  std::size_t c = runAll(compose, flips), p = runAll(product, pairs), t = runAll(transport, singles);
  o.detail = {{"compose", c}, {"product", p}, {"transport", t}};
  o.pass = c == 50 && p == 50 && t == 10;
  return o;
}

// 6. Effective advice to closed choice and back.
Outcome effectiveCriterion(unsigned jobs) {
  Outcome o;
  for (const auto* id : {"c-nat", "c-cantor", "mlpo-effective:3"}) {
    auto am = adviceMachineById(id);
    auto w = effectiveAdviceToChoiceReduction(am);
    auto back = effectiveAdviceFromChoiceReduction(w);
    Rng rng(30);
    std::vector<Fixture> xs;
    for (int i = 0; i < 50; ++i) xs.push_back(am->fixtures(rng));
    auto ok = parallelMap<char>(xs.size(), jobs, [&](std::size_t i) {
      if (checkReduction(*w, oracleSolver(w->to, 0), xs[i], 24).verdict != Verdict::Consistent) return char{0};
      for (const auto& adv : back->adviceFamily(xs[i]).representatives)
        if (!adviceRunSucceeds(*back, xs[i], adv, 24)) return char{0};
      return char{1};
    });
    std::size_t good = 0;
    for (char c : ok) good += c ? 1 : 0;
    bool sameScheme = back->scheme.toString() == am->scheme.toString();
    o.detail[id] = {{"roundTrips", good}, {"sameScheme", sameScheme}};
    o.pass = o.pass && good == 50 && sameScheme;
  }
  return o;
}

// 7. Machine monotonicity and verifier antitonicity on random draws.
Outcome monotonicityCriterion(unsigned jobs) {
  std::vector<MachinePtr> machines{identityMachine(), bitflipMachine(), bitDoublingMachine(), silentMachine(),
                                   firstProjection(Alphabet::binary()), secondProjection(Alphabet::binary()),
                                   pairMachines(identityMachine(), bitflipMachine()), paddedDelayMachine()};
  Rng mrng(70);
  for (std::size_t i = 0; i < 8; ++i) machines.push_back(randomCantorMachine(mrng, i));
  auto ids = shippedAdviceMachineIds();
  std::vector<AdviceMachinePtr> advice;
  for (const auto& id : ids) advice.push_back(adviceMachineById(id));

  struct Draw {
    std::size_t machine, advice;
    Prefix q;
    std::size_t cut;
    std::uint64_t seed;
  };
  Rng rng(7);
  std::vector<Draw> draws(1000);
  for (auto& d : draws) {
    d.machine = rng() % machines.size();
    d.advice = rng() % advice.size();
    d.q = fixtures::randomWord(rng, rng() % 24);
    d.cut = rng() % (d.q.size() + 1);
    d.seed = rng();
  }
  auto results = parallelMap<std::array<char, 3>>(draws.size(), jobs, [&](std::size_t i) {
    const Draw& d = draws[i];
    const auto& m = *machines[d.machine];
    Prefix p(d.q.begin(), d.q.begin() + static_cast<long>(d.cut));
    bool mono = isPrefixOf(m.step(p), m.step(d.q)) && m.stepCount(p) <= m.stepCount(d.q);

    // Candidate: a correct answer prefix, sometimes with one symbol altered.
    const auto& am = *advice[d.advice];
    Rng local(d.seed);
    Fixture x = am.fixtures(local);
    AdviceSet a = am.adviceFamily(x);
    std::size_t len = am.problem->outputLength(16);
    Prefix cand = runWithAdvice(am, x.name, a.representatives.front(), len).output;
    if (!cand.empty() && local() % 2) {
      Symbol& s = cand[local() % cand.size()];
      s = s == 0 ? 1 : s - 1;  // stays inside any alphabet that holds s
    }
    Prefix shortCand(cand.begin(), cand.begin() + static_cast<long>(local() % (cand.size() + 1)));
    const auto& verify = am.problem->verify;
    bool anti = true, refuted = false;
    for (std::size_t depth : {4, 8, 16}) {
      if (verify(x.name, shortCand, depth) == Verdict::Refuted) {
        refuted = true;
        anti = anti && verify(x.name, cand, depth) == Verdict::Refuted;
        anti = anti && verify(x.name, shortCand, 2 * depth) == Verdict::Refuted;
      }
    }
    return std::array<char, 3>{static_cast<char>(mono), static_cast<char>(anti), static_cast<char>(refuted)};
  });
  std::size_t monoFail = 0, antiFail = 0, refutedDraws = 0;
  for (const auto& r : results) {
    monoFail += r[0] ? 0 : 1;
    antiFail += r[1] ? 0 : 1;
    refutedDraws += r[2] ? 1 : 0;
  }
  Outcome o;
  o.detail = {{"draws", draws.size()}, {"monotonicityFailures", monoFail}, {"antitonicityFailures", antiFail},
              {"drawsWithRefutedCandidate", refutedDraws}};
  o.pass = monoFail == 0 && antiFail == 0;
  return o;
}

// 8. Complexity profiles: identity, padded delay, and the FNP witness g.
Outcome complexityCriterion(unsigned jobs) {
  Outcome o;
  auto id = tauProfileExhaustive(*identityMachine(), 16);
  auto idCheck = polyBoundCheck(id, 2, 1);
  auto padded = tauProfileSampled(*paddedDelayMachine(), 12, sampleCantorInputs(16, 1), "16 samples", jobs);
  std::size_t rejected = 0;
  for (std::uint64_t c = 1; c <= 10; ++c)
    for (std::uint64_t d = 1; d <= 10; ++d) rejected += polyBoundCheck(padded, c, d).verdict == BoundVerdict::Reject;
  auto g = tauProfileExhaustive(*fnpWitness(paddedDelayMachine()).g, 12);
  auto gCheck = polyBoundCheck(g, 8, 1);
  Json paddedSteps = Json::array();
  for (const auto& pt : padded.points) paddedSteps.push_back(pt.maxSteps);
  o.detail = {{"identity", toString(idCheck.verdict)},
              {"paddedDelayRejected", rejected},
              {"paddedDelaySteps", paddedSteps},
              {"fnpG", toString(gCheck.verdict)},
              {"fnpGSteps", g.points.back().maxSteps}};
  o.pass = idCheck.verdict == BoundVerdict::Accept && rejected == 100 && gCheck.verdict == BoundVerdict::Accept;
  return o;
}

using Criterion = Outcome (*)(unsigned);

const std::vector<std::pair<std::string, Criterion>>& criteria() {
  static const std::vector<std::pair<std::string, Criterion>> all{
      {"reduction witnesses sound on 100 fixtures x 2 variants", witnessSoundness},
      {"LLPO to SEigen_2 hand cases within 12 rounds", llpoSeigenRoundsCriterion},
      {"fat Cantor measures", fatCantorCriterion},
      {"Monte Carlo rates and geometric frequencies", monteCarloCriterion},
      {"compose, product and transport", combinatorCriterion},
      {"effective advice round trip", effectiveCriterion},
      {"monotonicity and antitonicity on 1000 draws", monotonicityCriterion},
      {"complexity profiles", complexityCriterion},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"advice-kit acceptance run"};
  unsigned jobs = 8;
  bool verbose = false;
  app.add_option("--jobs", jobs, "Worker threads for the first pass")->check(CLI::PositiveNumber);
  app.add_flag("--verbose", verbose, "Print each criterion's JSON");
  CLI11_PARSE(app, argc, argv);

  int failures = 0;
  Json first = Json::array(), second = Json::array();
  for (std::size_t i = 0; i < criteria().size(); ++i) {
    const auto& [label, fn] = criteria()[i];
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    std::string error;
    try {
      o = fn(jobs);
    } catch (const std::exception& e) {
      o.pass = false;
      error = e.what();
    }
    double secs = seconds(t0);
    bool pass = o.pass && (i != 0 || secs < 60.0);
    failures += pass ? 0 : 1;
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << label << " ("
              << std::fixed << std::setprecision(2) << secs << " s)";
    if (!error.empty()) std::cout << " error: " << error;
    std::cout << "\n";
    if (verbose || !pass) std::cout << "  " << o.detail.dump() << "\n";
    first.push_back({{"pass", o.pass}, {"detail", o.detail}});
  }

  // Criterion 9: rerun with the other thread count and compare bytes.
  unsigned other = jobs == 1 ? 8 : 1;
  auto t0 = std::chrono::steady_clock::now();
  for (const auto& [label, fn] : criteria()) {
    try {
      auto o = fn(other);
      second.push_back({{"pass", o.pass}, {"detail", o.detail}});
    } catch (const std::exception& e) {
      second.push_back({{"error", e.what()}});
    }
  }
  bool same = first.dump() == second.dump();
  failures += same ? 0 : 1;
  std::cout << (same ? "PASS" : "FAIL") << " criterion 9: identical JSON at --jobs " << jobs << " and --jobs " << other
            << " (" << std::fixed << std::setprecision(2) << seconds(t0) << " s)\n";
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}
