#pragma once

// Shipped advice machines and their fixture generators.

#include "advice_kit/advice.hpp"

namespace advice_kit {

namespace fixtures {

/// x ∈ [0, 1): rational points or irrational square-root fractions.
inline Fixture circle(Rng& rng) {
  if (rng() & 1) {
    long den = 1 + static_cast<long>(rng() % 12);
    Rational q = ratio(static_cast<long>(rng() % static_cast<std::uint64_t>(den)), den);
    return {encodeRational(q), CirclePoint{true}, "rational " + q.get_str()};
  }
  static const long squares[] = {2, 3, 5, 6, 7, 8, 10, 11, 12, 13, 14, 15, 17, 18, 19};
  long k = squares[rng() % std::size(squares)];
  long whole = static_cast<long>(std::sqrt(static_cast<double>(k)));
  return {computableRealName("sqrt-frac", 0,
                             [k, whole](std::size_t bits) {
                               return sqrtEnclosure(Rational(k), static_cast<unsigned>(bits)) - Interval(Rational(whole));
                             }),
          CirclePoint{false}, "sqrt(" + std::to_string(k) + ")-" + std::to_string(whole)};
}

inline Fixture cantorPoint(Rng& rng) {
  return {randomCantorName(rng, rng() % 3 == 0), {}, "cantor"};
}

inline Fixture lpoPower(Rng& rng, std::size_t n) {
  std::vector<Name> parts;
  for (std::size_t i = 0; i < n; ++i) parts.push_back(randomCantorName(rng, rng() & 1));
  return {tupleNames(parts), {}, "lpo^" + std::to_string(n)};
}

inline Fixture condFlip(Rng& rng) {
  Name x = randomCantorName(rng, rng() & 1);
  auto kind = rng() % 3;
  Name y = kind == 0   ? Name::zeros()
           : kind == 1 ? Name::constant(Alphabet::binary(), 1)
                       : Name::periodic(Alphabet::binary(), randomWord(rng, rng() % 6), randomWord(rng, 1 + rng() % 4));
  return {pairNames(x, y), {}, "cond-flip"};
}

/// n x m rational matrix; for m > n the kernel is non-trivial.
inline Fixture linEq(Rng& rng, std::size_t n, std::size_t m) {
  for (;;) {
    RationalMatrix a(n, m);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) a(i, j) = rng() % 3 == 0 ? Rational(0) : randomRational(rng, 4, 3);
    if (kernelBasis(a).empty()) continue;
    return {matrixName(a), MatrixMeaning{a, {}}, "lineq"};
  }
}

/// The singleton {p} for an eventually periodic p, excluding every cylinder off p.
inline Fixture cantorSingleton(Rng& rng) {
  Name p = Name::periodic(Alphabet::binary(), randomWord(rng, rng() % 5), randomWord(rng, 1 + rng() % 3));
  Name set = enumerationName("singleton", [p](std::size_t i) -> std::optional<Prefix> {
    Prefix w = binaryWord(i);
    Fuel fuel(defaultFuel());
    auto q = p.prefix(w.size(), fuel);
    if (q && *q == w) return std::nullopt;
    return w;
  });
  ChoiceMeaning m;
  m.description = "singleton";
  m.answers = {p};
  m.sample = [p](Rng&) { return p; };
  m.measure = Rational(0);
  return {set, std::move(m), "singleton"};
}

/// Cylinder set [w] as a closed-set name (complement of the siblings along w).
inline Fixture cylinder(const Prefix& w) {
  std::vector<Prefix> excluded;
  for (std::size_t i = 0; i < w.size(); ++i) {
    Prefix u(w.begin(), w.begin() + static_cast<long>(i));
    u.push_back(1 - w[i]);
    excluded.push_back(u);
  }
  ChoiceMeaning m;
  m.description = "cylinder";
  m.measure = pow2(-static_cast<long>(w.size()));
  m.answers = {Name::periodic(Alphabet::binary(), w, {0}), Name::periodic(Alphabet::binary(), w, {1})};
  m.sample = [w](Rng& rng) { return Name::periodic(Alphabet::binary(), w, randomWord(rng, 1 + rng() % 8)); };
  return {closedSetName(excluded), std::move(m), "cylinder"};
}

/// The singleton {n} ⊆ ℕ.
inline Fixture natSingleton(Symbol n) {
  Name set = enumerationName("nat-singleton", [n](std::size_t i) -> std::optional<Prefix> {
    if (i < n) return Prefix{static_cast<Symbol>(i)};
    if (i == n) return std::nullopt;
    return Prefix{static_cast<Symbol>(i)};
  });
  ChoiceMeaning m;
  m.description = "{" + std::to_string(n) + "}";
  m.answers = {natName(n)};
  m.sample = [n](Rng&) { return natName(n); };
  return {set, std::move(m), "{" + std::to_string(n) + "}"};
}

}  // namespace fixtures

namespace detail {

inline MachinePtr circleCore() {
  RealFunction f;
  f.id = "circle.core";
  f.input = Layout::tuple({Layout::signedReal(), Layout::raw()});
  auto branch = [](const LeafReader& r) -> std::optional<Symbol> {
    if (r.raw(1).empty()) return std::nullopt;
    return r.raw(1)[0];
  };
  f.exponents = [branch](const LeafReader& r) -> std::optional<std::vector<long>> {
    auto b = branch(r);
    auto e = r.exponent(0);
    if (!b || !e) return std::nullopt;
    return std::vector<long>{*b == 1 ? *e : std::max(*e, 1L) + 1};
  };
  f.enclose = [branch](const LeafReader& r, std::size_t) -> std::optional<std::vector<Interval>> {
    auto b = branch(r);
    auto x = r.interval(0);
    if (!b || !x) return std::nullopt;
    return std::vector<Interval>{*b == 1 ? *x : *x - Interval(1)};
  };
  return realFunctionMachine(std::move(f));
}

/// LPO^n with the number of zero components as advice.
class LpoCountProcess : public ProcessBase<LpoCountProcess> {
 public:
  explicit LpoCountProcess(std::size_t n) : n_(n), ones_(n, false) {}

  void feed(Symbol s, Emission& out) override {
    std::size_t p = pos_++;
    if (done_) {
      out.emit(0);
      return;
    }
    out.tick();
    if (p % 2 == 1) {
      if (p == 1) zeros_ = s;
    } else {
      std::size_t q = p / 2;
      if (s == 1 && !ones_[q % n_]) {
        ones_[q % n_] = true;
        ++nonzero_;
      }
    }
    if (zeros_ && *zeros_ <= n_ && nonzero_ == n_ - *zeros_) {
      for (bool b : ones_) out.emit(b ? 1 : 0);
      done_ = true;
    }
  }

 private:
  std::size_t n_;
  std::vector<bool> ones_;
  std::size_t nonzero_ = 0, pos_ = 0;
  std::optional<Symbol> zeros_;
  bool done_ = false;
};

/// ⟨⟨x, y⟩, w⟩ ↦ y when w = 0, the complement of y when w = 1.
class CondFlipProcess : public ProcessBase<CondFlipProcess> {
 public:
  void feed(Symbol s, Emission& out) override {
    std::size_t p = pos_++;
    out.tick();
    if (p % 2 == 1) {
      if (p == 1) advice_ = s;
    } else if ((p / 2) % 2 == 1) {
      pending_.push_back(s);
    }
    if (!advice_) return;
    for (Symbol y : pending_) out.emit(*advice_ == 0 ? y : 1 - y);
    pending_.clear();
  }

 private:
  std::size_t pos_ = 0;
  std::optional<Symbol> advice_;
  Prefix pending_;
};

/// Closed set {i : x_i = 0} ⊆ ℕ from n reals, 1-based: excludes 0, indices
/// above n, and every i whose enclosure provably avoids 0.
class MlpoAdviceMapProcess : public ProcessBase<MlpoAdviceMapProcess> {
 public:
  explicit MlpoAdviceMapProcess(std::size_t n)
      : n_(n), reader_(Layout::repeat(Layout::signedReal(), n)), excluded_(n, false) {}

  void feed(Symbol s, Emission& out) override {
    reader_.feed(s);
    out.tick();
    for (std::size_t i = 0; i < n_; ++i) {
      if (excluded_[i]) continue;
      auto iv = reader_.interval(i);
      if (iv && iv->excludesZero()) {
        excluded_[i] = true;
        queue_.push_back(i + 1);
      }
    }
    if (parity_++ % 2 == 0 && !queue_.empty()) {
      appendEntry(out.symbols, Prefix{queue_.front()});
      queue_.erase(queue_.begin());
    } else {
      appendEntry(out.symbols, Prefix{next_ == 0 ? 0 : next_ + n_});
      ++next_;
    }
  }

 private:
  std::size_t n_;
  LeafReader reader_;
  std::vector<bool> excluded_;
  std::vector<Symbol> queue_;
  std::size_t parity_ = 0;
  Symbol next_ = 0;
};


}  // namespace detail

// Catalog.

/// The circle example: advice 1 selects the rational branch x, advice 0 the irrational branch x - 1.
inline AdviceMachinePtr circleAdviceMachine() {
  auto am = std::make_shared<AdviceMachine>();
  am->id = "circle";
  am->problem = circleProblem();
  am->scheme = {SpaceDescriptor::finite(2), AdviceFamilyKind::DiscreteAll, {}};
  am->core = detail::circleCore();
  am->adviceFamily = [](const Fixture& x) {
    const auto* c = std::any_cast<CirclePoint>(&x.meaning);
    if (!c) throw std::invalid_argument("circle fixture needs a CirclePoint meaning");
    return discreteAdvice({c->rational ? Symbol{1} : Symbol{0}}, c->rational ? "rational branch" : "irrational branch");
  };
  am->fixtures = fixtures::circle;
  return am;
}

/// LPO with its answer as advice.
inline AdviceMachinePtr lpoAdviceMachine() {
  auto am = std::make_shared<AdviceMachine>();
  am->id = "lpo";
  am->problem = lpoProblem();
  am->scheme = {SpaceDescriptor::finite(2), AdviceFamilyKind::DiscreteAll, {}};
  am->core = pi2();
  am->adviceFamily = [](const Fixture& x) {
    auto z = isZeroName(x.name);
    if (!z) throw std::invalid_argument("LPO advice needs an eventually periodic input");
    return discreteAdvice({*z ? Symbol{0} : Symbol{1}}, "LPO value");
  };
  am->fixtures = fixtures::cantorPoint;
  return am;
}

/// LPO^n with the number of zero inputs as Finite(n+1)-advice.
inline AdviceMachinePtr lpoCountAdviceMachine(std::size_t n) {
  auto am = std::make_shared<AdviceMachine>();
  am->id = "lpo-count:" + std::to_string(n);
  am->problem = lpoPowerProblem(n);
  am->scheme = {SpaceDescriptor::finite(n + 1), AdviceFamilyKind::DiscreteAll, {}};
  am->core = processMachine<detail::LpoCountProcess>("lpo-count", Alphabet::natural(), Alphabet::natural(),
                                                     std::nullopt, n);
  am->adviceFamily = [n](const Fixture& x) {
    Symbol zeros = 0;
    for (std::size_t i = 0; i < n; ++i) {
      auto z = isZeroName(projectName(x.name, n, i));
      if (!z) throw std::invalid_argument("LPO^n advice needs eventually periodic inputs");
      zeros += *z ? 1 : 0;
    }
    return discreteAdvice({zeros}, "number of zero inputs");
  };
  am->fixtures = [n](Rng& rng) { return fixtures::lpoPower(rng, n); };
  return am;
}

/// LLPO with a valid index as advice.
inline AdviceMachinePtr llpoAdviceMachine() {
  auto am = std::make_shared<AdviceMachine>();
  am->id = "llpo";
  am->problem = llpoProblem();
  am->scheme = {SpaceDescriptor::finite(2), AdviceFamilyKind::DiscreteAll, {}};
  am->core = pi2();
  am->adviceFamily = [](const Fixture& x) {
    auto [x0, x1] = unpairName(x.name);
    auto z0 = isZeroName(x0), z1 = isZeroName(x1);
    if (!z0 || !z1) throw std::invalid_argument("LLPO advice needs eventually periodic inputs");
    std::vector<Symbol> valid;
    if (*z0) valid.push_back(0);
    if (*z1) valid.push_back(1);
    return discreteAdvice(valid, "zero sides");
  };
  am->fixtures = fixtures::llpo;
  return am;
}

inline AdviceMachinePtr condFlipAdviceMachine() {
  auto am = std::make_shared<AdviceMachine>();
  am->id = "cond-flip";
  am->problem = condFlipProblem();
  am->scheme = {SpaceDescriptor::finite(2), AdviceFamilyKind::DiscreteAll, {}};
  am->core = processMachine<detail::CondFlipProcess>("cond-flip.core", Alphabet::natural(), Alphabet::binary(),
                                                     std::nullopt);
  am->adviceFamily = [](const Fixture& x) {
    auto z = isZeroName(unpairName(x.name).first);
    if (!z) throw std::invalid_argument("cond-flip advice needs an eventually periodic x");
    return discreteAdvice({*z ? Symbol{0} : Symbol{1}}, "whether x is nonzero");
  };
  am->outputFixture = [](const Fixture& x, const Name&) {
    auto [a, b] = unpairName(x.name);
    return Fixture{condFlip(a, b), {}, x.label};
  };
  am->fixtures = fixtures::condFlip;
  return am;
}

/// Identity on Cantor space with unique advice {x}.
inline AdviceMachinePtr identityAdviceMachine() {
  auto am = std::make_shared<AdviceMachine>();
  am->id = "identity";
  am->problem = identityProblem();
  am->scheme = {SpaceDescriptor::cantor(), AdviceFamilyKind::Unique, {}};
  am->core = pi2();
  am->adviceFamily = [](const Fixture& x) { return singletonAdvice(x.name, "{x}"); };
  am->outputFixture = [](const Fixture& x, const Name&) { return x; };
  am->fixtures = fixtures::cantorPoint;
  return am;
}

/// Choice with the chosen point as random advice: the core is π₂.
inline AdviceMachinePtr randomChoiceMachine(const std::string& id, ProblemPtr p, MeasureSpec m,
                                            std::function<Fixture(Rng&)> gen) {
  auto am = std::make_shared<AdviceMachine>();
  am->id = id;
  am->problem = p;
  am->scheme = AdviceScheme::random(m);
  am->core = pi2();
  am->adviceFamily = [p](const Fixture& x) { return choiceAdvice(p, x); };
  am->fixtures = std::move(gen);
  return am;
}

inline AdviceMachinePtr pcCantorAdviceMachine() {
  return randomChoiceMachine("pc-cantor", closedChoiceCantorProblem(true), MeasureSpec::cantorUniform(),
                             fixtures::positiveCantor);
}

inline AdviceMachinePtr pcRealAdviceMachine() {
  return randomChoiceMachine("pc-real", positiveChoiceRealProblem(false), MeasureSpec::lebesgueReal(),
                             [](Rng& rng) {
                               auto x = fixtures::positiveInterval(rng);
                               return x;
                             });
}

inline AdviceMachinePtr cNatRandomAdviceMachine() {
  return randomChoiceMachine("c-nat-random", closedChoiceNatProblem(), MeasureSpec::natGeometric(),
                             fixtures::closedNat);
}

/// Closed choice with effective advice: A(x) is the input set itself.
inline AdviceMachinePtr effectiveChoiceMachine(const std::string& id, ProblemPtr p, SpaceDescriptor z,
                                               std::function<Fixture(Rng&)> gen) {
  auto am = std::make_shared<AdviceMachine>();
  am->id = id;
  am->problem = p;
  am->scheme = {std::move(z), AdviceFamilyKind::EffectiveClosed, {}};
  am->core = pi2();
  am->adviceMap = identityMachine(Alphabet::natural());
  am->adviceFamily = [p](const Fixture& x) { return choiceAdvice(p, x); };
  am->fixtures = std::move(gen);
  return am;
}

inline AdviceMachinePtr cNatEffectiveAdviceMachine() {
  return effectiveChoiceMachine("c-nat", closedChoiceNatProblem(), SpaceDescriptor::nat(), fixtures::closedNat);
}

inline AdviceMachinePtr cCantorEffectiveAdviceMachine() {
  return effectiveChoiceMachine("c-cantor", closedChoiceCantorProblem(false), SpaceDescriptor::cantor(),
                                [](Rng& rng) {
                                  return rng() & 1 ? fixtures::positiveCantor(rng) : fixtures::cantorSingleton(rng);
                                });
}

/// MLPO_n with effective ℕ-advice A(x) = {i : x_i = 0}.
inline AdviceMachinePtr mlpoEffectiveAdviceMachine(std::size_t n) {
  auto am = std::make_shared<AdviceMachine>();
  am->id = "mlpo-effective:" + std::to_string(n);
  am->problem = mlpoProblem(n);
  am->scheme = {SpaceDescriptor::nat(), AdviceFamilyKind::EffectiveClosed, {}};
  am->core = pi2();
  am->adviceMap = processMachine<detail::MlpoAdviceMapProcess>("mlpo.advice-map", Alphabet::natural(),
                                                               Alphabet::natural(), std::nullopt, n);
  am->adviceFamily = [n](const Fixture& x) {
    auto v = exactVector(x, n);
    if (!v) throw std::invalid_argument("MLPO advice needs exact inputs");
    std::vector<Symbol> zeros;
    for (std::size_t i = 0; i < n; ++i)
      if ((*v)[i] == 0) zeros.push_back(i + 1);
    return discreteAdvice(zeros, "zero components");
  };
  am->fixtures = [n](Rng& rng) { return fixtures::mlpo(rng, n); };
  return am;
}

/// LinEq_{n,m} with a kernel vector of sup-norm 1 as advice.
inline AdviceMachinePtr linEqAdviceMachine(std::size_t n, std::size_t m) {
  auto am = std::make_shared<AdviceMachine>();
  am->id = "lineq:" + std::to_string(n) + ":" + std::to_string(m);
  auto p = linEqProblem(n, m);
  am->problem = p;
  am->scheme = {SpaceDescriptor::power(SpaceDescriptor::realSigned(), m), AdviceFamilyKind::ClosedAll, {}};
  am->core = pi2();
  am->adviceFamily = [p, m](const Fixture& x) {
    const auto* mm = std::any_cast<MatrixMeaning>(&x.meaning);
    if (!mm) throw std::invalid_argument("LinEq advice needs a matrix fixture");
    auto basis = kernelBasis(mm->matrix);
    if (basis.empty()) throw DomainViolated("LinEq: matrix has full column rank");
    auto normalise = [](std::vector<Rational> v) {
      Rational top = 0;
      for (const auto& q : v) top = std::max(top, Rational(abs(q)));
      for (auto& q : v) q /= top;
      return v;
    };
    AdviceSet s;
    s.description = "kernel vectors of sup-norm 1";
    s.sample = [basis, normalise, m](Rng& rng) {
      for (;;) {
        std::vector<Rational> v(m, Rational(0));
        for (const auto& b : basis) {
          long c = static_cast<long>(rng() % 7) - 3;
          for (std::size_t i = 0; i < m; ++i) v[i] += c * b[i];
        }
        if (std::any_of(v.begin(), v.end(), [](const Rational& q) { return q != 0; }))
          return fixtures::rationalVectorName(normalise(v));
      }
    };
    Name xn = x.name;
    s.contains = [p, xn](const Name& v, std::size_t d) {
      Fuel fuel(defaultFuel());
      auto c = v.prefix(p->outputLength(d), fuel);
      return !c || p->verify(xn, *c, d) == Verdict::Consistent;
    };
    for (const auto& b : basis) s.representatives.push_back(fixtures::rationalVectorName(normalise(b)));
    return s;
  };
  am->fixtures = [n, m](Rng& rng) { return fixtures::linEq(rng, n, m); };
  return am;
}

/// Parses `name[:a[:b]]` ids of the shipped machines.
inline AdviceMachinePtr adviceMachineById(const std::string& id) {
  auto parts = std::vector<std::string>{};
  std::size_t start = 0;
  for (;;) {
    auto c = id.find(':', start);
    parts.push_back(id.substr(start, c - start));
    if (c == std::string::npos) break;
    start = c + 1;
  }
  auto num = [&](std::size_t i, std::size_t dflt) { return parts.size() > i ? std::stoul(parts[i]) : dflt; };
  const std::string& head = parts[0];
  if (head == "circle") return circleAdviceMachine();
  if (head == "lpo") return lpoAdviceMachine();
  if (head == "lpo-count") return lpoCountAdviceMachine(num(1, 3));
  if (head == "llpo") return llpoAdviceMachine();
  if (head == "cond-flip") return condFlipAdviceMachine();
  if (head == "identity") return identityAdviceMachine();
  if (head == "pc-cantor") return pcCantorAdviceMachine();
  if (head == "pc-real") return pcRealAdviceMachine();
  if (head == "c-nat-random") return cNatRandomAdviceMachine();
  if (head == "c-nat") return cNatEffectiveAdviceMachine();
  if (head == "c-cantor") return cCantorEffectiveAdviceMachine();
  if (head == "mlpo-effective") return mlpoEffectiveAdviceMachine(num(1, 3));
  if (head == "lineq") return linEqAdviceMachine(num(1, 2), num(2, 3));
  throw std::invalid_argument("unknown advice machine: " + id);
}

inline std::vector<std::string> shippedAdviceMachineIds() {
  return {"circle", "lpo",   "lpo-count:3", "llpo",  "cond-flip",        "identity", "pc-cantor",
          "pc-real", "c-nat-random", "c-nat", "c-cantor", "mlpo-effective:3", "lineq:2:3"};
}

}  // namespace advice_kit
