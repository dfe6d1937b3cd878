#pragma once

// Advice schemes, advice machines and their combinators: composition,
// product and coproduct, change of advice space, transport along Weihrauch
// reductions, and effective advice as closed choice.

#include "advice_kit/fixtures.hpp"


namespace advice_kit {

struct SchemeMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class AdviceFamilyKind { DiscreteAll, ClosedAll, OpenAll, Unique, RandomPositive, EffectiveClosed };

inline const char* toString(AdviceFamilyKind k) {
  switch (k) {
    case AdviceFamilyKind::DiscreteAll: return "discrete";
    case AdviceFamilyKind::ClosedAll: return "closed";
    case AdviceFamilyKind::OpenAll: return "open";
    case AdviceFamilyKind::Unique: return "unique";
    case AdviceFamilyKind::RandomPositive: return "random";
    case AdviceFamilyKind::EffectiveClosed: return "closed-effective";
  }
  return "?";
}

struct AdviceScheme {
  SpaceDescriptor space = SpaceDescriptor::cantor();
  AdviceFamilyKind family = AdviceFamilyKind::DiscreteAll;
  std::optional<MeasureSpec> measure;  // RandomPositive only

  static AdviceScheme random(MeasureSpec m) { return {m.space(), AdviceFamilyKind::RandomPositive, m}; }

  void validate() const {
    if (family == AdviceFamilyKind::RandomPositive && !measure)
      throw SchemeMismatch("random advice needs a measure on the advice space");
    if (measure && measure->space().toString() != space.toString())
      throw SchemeMismatch("measure lives on " + measure->space().toString() + ", advice space is " + space.toString());
  }

  std::string toString() const {
    std::string s = "advice:" + std::string(advice_kit::toString(family)) + ":" + space.toString();
    if (measure) s += ":" + measure->toString();
    return s;
  }
};

/// Parses `advice:finite:3`, `advice:nat`, `advice:closed-effective[:nat]`,
/// `advice:random-cantor`, `advice:random-nat`, `advice:random-real`, `advice:unique`.
inline AdviceScheme parseAdviceScheme(const std::string& literal) {
  const std::string head = "advice:";
  if (literal.rfind(head, 0) != 0) throw std::invalid_argument("scheme literal must start with advice:");
  std::string body = literal.substr(head.size());
  auto colon = body.find(':');
  std::string kind = body.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : body.substr(colon + 1);
  AdviceScheme s;
  if (kind == "finite") {
    if (arg.empty()) throw std::invalid_argument("advice:finite needs a size");
    s = {SpaceDescriptor::finite(std::stoull(arg)), AdviceFamilyKind::DiscreteAll, {}};
  } else if (kind == "nat") {
    s = {SpaceDescriptor::nat(), AdviceFamilyKind::DiscreteAll, {}};
  } else if (kind == "closed-effective") {
    s = {arg == "nat" ? SpaceDescriptor::nat() : SpaceDescriptor::cantor(), AdviceFamilyKind::EffectiveClosed, {}};
  } else if (kind == "random-cantor") {
    s = AdviceScheme::random(MeasureSpec::cantorUniform());
  } else if (kind == "random-nat") {
    s = AdviceScheme::random(MeasureSpec::natGeometric());
  } else if (kind == "random-real") {
    s = AdviceScheme::random(MeasureSpec::lebesgueReal());
  } else if (kind == "random-unit") {
    s = AdviceScheme::random(MeasureSpec::lebesgueUnit());
  } else if (kind == "unique") {
    s = {SpaceDescriptor::cantor(), AdviceFamilyKind::Unique, {}};
  } else {
    throw std::invalid_argument("unknown advice scheme: " + literal);
  }
  s.validate();
  return s;
}

/// The advice set A_x of one input, as a harness object.
struct AdviceSet {
  std::string description;
  std::function<Name(Rng&)> sample;                          // draw a member
  std::function<bool(const Name&, std::size_t)> contains;    // not refuted at depth
  std::vector<Name> representatives;                         // explicit members
  std::optional<Rational> measure;
};

using AdviceFamily = std::function<AdviceSet(const Fixture&)>;

struct AdviceMachine {
  std::string id;
  ProblemPtr problem;
  AdviceScheme scheme;
  MachinePtr core;  // on ⟨x, w⟩
  AdviceFamily adviceFamily;
  MachinePtr adviceMap;  // effective case: x ↦ closed-set name of A(x)
  /// Fixture for the output on x under correct advice w; used by composition.
  std::function<Fixture(const Fixture& x, const Name& w)> outputFixture;
  /// Random in-domain fixtures for tests and the CLI.
  std::function<Fixture(Rng&)> fixtures;
};

using AdviceMachinePtr = std::shared_ptr<const AdviceMachine>;

inline Fixture outputFixtureOf(const AdviceMachine& am, const Fixture& x, const Name& w) {
  if (am.outputFixture) return am.outputFixture(x, w);
  return {Name::generated(am.core, pairNames(x.name, w)), {}, x.label};
}

inline RunResult runWithAdvice(const AdviceMachine& am, const Name& x, const Name& w, std::size_t k, Fuel& fuel) {
  return runMachine(*am.core, pairNames(x, w), k, fuel);
}

inline RunResult runWithAdvice(const AdviceMachine& am, const Name& x, const Name& w, std::size_t k) {
  Fuel fuel(defaultFuel());
  return runWithAdvice(am, x, w, k, fuel);
}

/// Verifier verdict of one advised run; divergence counts as failure.
inline bool adviceRunSucceeds(const AdviceMachine& am, const Fixture& x, const Name& w, std::size_t depth) {
  std::size_t k = am.problem->outputLength(depth);
  auto r = runWithAdvice(am, x.name, w, k);
  if (r.diverged || r.output.size() < k) return false;
  return am.problem->verify(x.name, r.output, depth) == Verdict::Consistent;
}

// Advice sets.

inline AdviceSet singletonAdvice(Name w, std::string description) {
  AdviceSet s;
  s.description = std::move(description);
  s.sample = [w](Rng&) { return w; };
  s.contains = [w](const Name& v, std::size_t d) {
    Fuel fuel(defaultFuel());
    auto a = w.prefix(d, fuel), b = v.prefix(d, fuel);
    return !a || !b || *a == *b;
  };
  s.representatives = {w};
  return s;
}

/// Finite set of points of ℕ or Finite(k).
inline AdviceSet discreteAdvice(std::vector<Symbol> members, std::string description) {
  if (members.empty()) throw std::invalid_argument("empty discrete advice set");
  AdviceSet s;
  s.description = std::move(description);
  s.sample = [members](Rng& rng) { return natName(members[rng() % members.size()]); };
  s.contains = [members](const Name& v, std::size_t) {
    Fuel fuel(defaultFuel());
    auto a = v.at(0, fuel);
    return !a || std::find(members.begin(), members.end(), *a) != members.end();
  };
  for (Symbol m : members) s.representatives.push_back(natName(m));
  return s;
}

/// The set of valid answers of a choice fixture.
inline AdviceSet choiceAdvice(const ProblemPtr& p, const Fixture& x) {
  const auto* m = std::any_cast<ChoiceMeaning>(&x.meaning);
  if (!m) throw std::invalid_argument("choice advice needs a choice fixture");
  AdviceSet s;
  s.description = m->description;
  s.sample = m->sample;
  s.representatives = m->answers;
  s.measure = m->measure;
  Name xn = x.name;
  s.contains = [p, xn](const Name& v, std::size_t d) {
    Fuel fuel(defaultFuel());
    auto c = v.prefix(p->outputLength(d), fuel);
    return !c || p->verify(xn, *c, d) == Verdict::Consistent;
  };
  return s;
}

// Wiring helpers.

inline MachinePtr pi1() { return firstProjection(); }
inline MachinePtr pi2() { return secondProjection(); }

/// Emits s, then copies the input.
inline MachinePtr prependMachine(Symbol s) {
  return callbackMachine<int>(
      "prepend", Alphabet::natural(), Alphabet::natural(), 0,
      [](int&, Symbol x, Emission& out) { out.emit(x); }, [s](int&, Emission& out) { out.emit(s); },
      [](std::size_t k) { return k == 0 ? 0 : k - 1; });
}

inline Name prependSymbol(Symbol s, const Name& x) {
  if (const auto* p = x.asPeriodic()) {
    Prefix pre{s};
    pre.insert(pre.end(), p->prefix.begin(), p->prefix.end());
    return Name::periodic(Alphabet::natural(), pre, p->period);
  }
  return Name::generated(prependMachine(s), x);
}

inline MachinePtr dropMachine(std::size_t n) {
  return callbackMachine<std::size_t>(
      "drop", Alphabet::natural(), Alphabet::natural(), 0,
      [n](std::size_t& seen, Symbol x, Emission& out) {
        if (seen < n) {
          ++seen;
          out.tick();
        } else {
          out.emit(x);
        }
      },
      {}, [n](std::size_t k) { return k + n; });
}

inline Name dropSymbols(const Name& x, std::size_t n) {
  if (const auto* p = x.asPeriodic()) {
    if (n <= p->prefix.size()) return Name::periodic(Alphabet::natural(), Prefix(p->prefix.begin() + n, p->prefix.end()), p->period);
    std::size_t shift = (n - p->prefix.size()) % p->period.size();
    Prefix per(p->period.begin() + shift, p->period.end());
    per.insert(per.end(), p->period.begin(), p->period.begin() + shift);
    return Name::periodic(Alphabet::natural(), {}, per);
  }
  return Name::generated(dropMachine(n), x);
}

/// Copies the input symbols at positions p with p mod `period` in [lo, hi).
inline MachinePtr residueSelectMachine(std::size_t period, std::size_t lo, std::size_t hi) {
  return callbackMachine<std::size_t>(
      "select", Alphabet::natural(), Alphabet::natural(), 0,
      [period, lo, hi](std::size_t& pos, Symbol x, Emission& out) {
        std::size_t r = pos++ % period;
        if (r >= lo && r < hi) {
          out.emit(x);
        } else {
          out.tick();
        }
      },
      {}, [period, lo, hi](std::size_t k) { return period * ((k + (hi - lo) - 1) / (hi - lo)) + hi; });
}

// Composition.

/// fm solves f with (Z1, 𝒜), gm solves g with (Z2, ℬ); the result solves f∘g
/// with (Z1 × Z2, 𝒜∘ℬ) and advice ⟨z, y⟩.
inline AdviceMachinePtr composeAdviceMachines(const AdviceMachinePtr& fm, const AdviceMachinePtr& gm,
                                              ProblemPtr composedProblem) {
  if (!gm->scheme.space.injective())
    throw SchemeMismatch("composition needs an injective representation of " + gm->scheme.space.toString());
  auto am = std::make_shared<AdviceMachine>();
  am->id = fm->id + "." + gm->id;
  am->problem = std::move(composedProblem);
  am->scheme = {SpaceDescriptor::product(fm->scheme.space, gm->scheme.space), AdviceFamilyKind::DiscreteAll, {}};
  if (fm->scheme.family == gm->scheme.family) am->scheme.family = fm->scheme.family;
  // ⟨w, ⟨z, y⟩⟩ ↦ F(G(w, y), z)
  auto y = composeMachines(pi2(), pi2());
  auto z = composeMachines(pi1(), pi2());
  auto gwy = composeMachines(gm->core, tupleMachines({pi1(), y}));
  am->core = composeMachines(fm->core, tupleMachines({gwy, z}));
  am->fixtures = gm->fixtures;
  AdviceMachinePtr f = fm, g = gm;
  am->adviceFamily = [f, g](const Fixture& x) {
    AdviceSet b = g->adviceFamily(x);
    AdviceSet s;
    s.description = "union over v in (" + b.description + ") of A_G(x,v) x {v}";
    s.sample = [f, g, x, b](Rng& rng) {
      Name v = b.sample(rng);
      Name zz = f->adviceFamily(outputFixtureOf(*g, x, v)).sample(rng);
      return pairNames(zz, v);
    };
    s.contains = [f, g, x, b](const Name& zy, std::size_t d) {
      auto [zz, v] = unpairName(zy);
      if (!b.contains(v, d)) return false;
      return f->adviceFamily(outputFixtureOf(*g, x, v)).contains(zz, d);
    };
    for (const auto& v : b.representatives) {
      auto a = f->adviceFamily(outputFixtureOf(*g, x, v));
      if (!a.representatives.empty()) s.representatives.push_back(pairNames(a.representatives.front(), v));
    }
    return s;
  };
  if (fm->outputFixture) {
    am->outputFixture = [f, g](const Fixture& x, const Name& zy) {
      auto [zz, v] = unpairName(zy);
      return f->outputFixture(outputFixtureOf(*g, x, v), zz);
    };
  }
  return am;
}

// Product and coproduct.

struct ProductMeaning {
  Fixture left, right;
};

struct CoproductMeaning {
  Symbol tag = 0;
  Fixture inner;
};

inline std::pair<Fixture, Fixture> splitProductFixture(const Fixture& x) {
  if (const auto* m = std::any_cast<ProductMeaning>(&x.meaning)) return {m->left, m->right};
  auto [a, b] = unpairName(x.name);
  return {Fixture{a, {}, x.label}, Fixture{b, {}, x.label}};
}

inline Fixture productFixture(Fixture a, Fixture b) {
  Name n = pairNames(a.name, b.name);
  std::string label = a.label + " x " + b.label;
  return {n, ProductMeaning{std::move(a), std::move(b)}, label};
}

inline Fixture coproductFixture(Symbol tag, Fixture inner) {
  Name n = prependSymbol(tag, inner.name);
  std::string label = (tag == 0 ? "left " : "right ") + inner.label;
  return {n, CoproductMeaning{tag, std::move(inner)}, label};
}

inline std::pair<Symbol, Fixture> splitCoproductFixture(const Fixture& x) {
  if (const auto* m = std::any_cast<CoproductMeaning>(&x.meaning)) return {m->tag, m->inner};
  Fuel fuel(defaultFuel());
  auto t = x.name.at(0, fuel);
  if (!t) throw std::invalid_argument("coproduct input has no tag");
  return {*t, Fixture{dropSymbols(x.name, 1), {}, x.label}};
}

inline ProblemPtr productProblem(ProblemPtr a, ProblemPtr b) {
  auto p = std::make_shared<MultiProblem>();
  p->id = a->id + "x" + b->id;
  p->inputSpace = SpaceDescriptor::product(a->inputSpace, b->inputSpace);
  p->outputSpace = SpaceDescriptor::product(a->outputSpace, b->outputSpace);
  p->outputLength = [a, b](std::size_t d) { return 2 * std::max(a->outputLength(d), b->outputLength(d)); };
  p->domainCheck = [a, b](const Name& x, std::size_t d) {
    auto [xa, xb] = unpairName(x);
    if (a->domainCheck(xa, d) == DomainStatus::DomainViolated) return DomainStatus::DomainViolated;
    return b->domainCheck(xb, d);
  };
  p->verify = [a, b](const Name& x, const Prefix& cand, std::size_t d) {
    auto [xa, xb] = unpairName(x);
    auto parts = splitPrefix(cand, 2);
    if (a->verify(xa, parts[0], d) == Verdict::Refuted) return Verdict::Refuted;
    return b->verify(xb, parts[1], d);
  };
  return p;
}

/// Tagged inputs [t, x...]; the answer carries the same tag.
inline ProblemPtr coproductProblem(ProblemPtr a, ProblemPtr b) {
  auto p = std::make_shared<MultiProblem>();
  p->id = a->id + "+" + b->id;
  p->inputSpace = SpaceDescriptor::coproduct(a->inputSpace, b->inputSpace);
  p->outputSpace = SpaceDescriptor::coproduct(a->outputSpace, b->outputSpace);
  p->outputLength = [a, b](std::size_t d) { return 1 + std::max(a->outputLength(d), b->outputLength(d)); };
  p->domainCheck = [a, b](const Name& x, std::size_t d) {
    Fuel fuel(defaultFuel());
    auto t = x.at(0, fuel);
    if (!t) return DomainStatus::ConsistentSoFar;
    if (*t > 1) return DomainStatus::DomainViolated;
    return (*t == 0 ? a : b)->domainCheck(dropSymbols(x, 1), d);
  };
  p->verify = [a, b](const Name& x, const Prefix& cand, std::size_t d) {
    if (cand.empty()) return Verdict::Consistent;
    Fuel fuel(defaultFuel());
    auto t = x.at(0, fuel);
    if (!t) return Verdict::Consistent;
    if (cand[0] != *t) return Verdict::Refuted;
    return (*t == 0 ? a : b)->verify(dropSymbols(x, 1), Prefix(cand.begin() + 1, cand.end()), d);
  };
  return p;
}

namespace detail {

/// Reads the tags of ⟨x, w⟩ and hands the rest to the selected core.
class CoproductProcess : public Process {
 public:
  CoproductProcess(MachinePtr left, MachinePtr right) : left_(std::move(left)), right_(std::move(right)) {}
  CoproductProcess(const CoproductProcess& o)
      : left_(o.left_), right_(o.right_), pos_(o.pos_), inner_(o.inner_ ? o.inner_->clone() : nullptr) {}

  std::unique_ptr<Process> clone() const override { return std::make_unique<CoproductProcess>(*this); }

  void feed(Symbol s, Emission& out) override {
    std::size_t p = pos_++;
    if (p == 0) {
      out.emit(s);
      inner_ = (s == 0 ? left_ : right_)->spawn();
      Emission em;
      inner_->start(em);
      forward(em, out);
      return;
    }
    if (p == 1) {
      out.tick();  // advice tag; assumed to match
      return;
    }
    Emission em;
    inner_->feed(s, em);
    forward(em, out);
    out.tick();
  }

 private:
  static void forward(const Emission& em, Emission& out) {
    for (Symbol x : em.symbols) out.emit(x);
    out.tick(em.ticks);
  }

  MachinePtr left_, right_;
  std::size_t pos_ = 0;
  std::unique_ptr<Process> inner_;
};

}  // namespace detail

enum class ProductMode { Product, Coproduct };

inline AdviceMachinePtr productAdviceMachines(const AdviceMachinePtr& fm, const AdviceMachinePtr& gm,
                                              ProductMode mode, ProblemPtr problem = nullptr) {
  auto am = std::make_shared<AdviceMachine>();
  AdviceMachinePtr f = fm, g = gm;
  if (mode == ProductMode::Product) {
    am->id = fm->id + "x" + gm->id;
    am->problem = problem ? problem : productProblem(fm->problem, gm->problem);
    am->scheme.space = SpaceDescriptor::product(fm->scheme.space, gm->scheme.space);
    // ⟨⟨x1, x2⟩, ⟨z1, z2⟩⟩: position p mod 4 is x1, z1, x2, z2.
    auto left = composeMachines(fm->core, residueSelectMachine(4, 0, 2));
    auto right = composeMachines(gm->core, residueSelectMachine(4, 2, 4));
    am->core = tupleMachines({left, right});
    am->adviceFamily = [f, g](const Fixture& x) {
      auto [xa, xb] = splitProductFixture(x);
      AdviceSet a = f->adviceFamily(xa), b = g->adviceFamily(xb);
      AdviceSet s;
      s.description = "(" + a.description + ") x (" + b.description + ")";
      s.sample = [a, b](Rng& rng) {
        Name za = a.sample(rng);
        return pairNames(za, b.sample(rng));
      };
      s.contains = [a, b](const Name& z, std::size_t d) {
        auto [za, zb] = unpairName(z);
        return a.contains(za, d) && b.contains(zb, d);
      };
      for (const auto& ra : a.representatives)
        for (const auto& rb : b.representatives) s.representatives.push_back(pairNames(ra, rb));
      if (a.measure && b.measure) s.measure = *a.measure * *b.measure;
      return s;
    };
    if (fm->fixtures && gm->fixtures)
      am->fixtures = [f, g](Rng& rng) {
        Fixture a = f->fixtures(rng);
        return productFixture(std::move(a), g->fixtures(rng));
      };
  } else {
    am->id = fm->id + "+" + gm->id;
    am->problem = problem ? problem : coproductProblem(fm->problem, gm->problem);
    am->scheme.space = SpaceDescriptor::coproduct(fm->scheme.space, gm->scheme.space);
    MachinePtr lc = fm->core, rc = gm->core;
    am->core = std::make_shared<PrefixMachine>(
        "coproduct", Alphabet::natural(), Alphabet::natural(),
        [lc, rc]() { return std::make_unique<detail::CoproductProcess>(lc, rc); });
    am->adviceFamily = [f, g](const Fixture& x) {
      auto [tag, inner] = splitCoproductFixture(x);
      AdviceSet a = (tag == 0 ? f : g)->adviceFamily(inner);
      AdviceSet s;
      s.description = std::string(tag == 0 ? "left " : "right ") + a.description;
      s.sample = [a, tag](Rng& rng) { return prependSymbol(tag, a.sample(rng)); };
      s.contains = [a, tag](const Name& z, std::size_t d) {
        Fuel fuel(defaultFuel());
        auto t = z.at(0, fuel);
        if (!t) return true;
        return *t == tag && a.contains(dropSymbols(z, 1), d);
      };
      for (const auto& r : a.representatives) s.representatives.push_back(prependSymbol(tag, r));
      s.measure = a.measure;
      return s;
    };
    if (fm->fixtures && gm->fixtures)
      am->fixtures = [f, g](Rng& rng) {
        Symbol tag = rng() & 1;
        return coproductFixture(tag, (tag == 0 ? f : g)->fixtures(rng));
      };
  }
  am->scheme.family = fm->scheme.family == gm->scheme.family ? fm->scheme.family : AdviceFamilyKind::DiscreteAll;
  if (mode == ProductMode::Product && fm->scheme.measure && gm->scheme.measure &&
      fm->scheme.measure->kind == MeasureKind::CantorUniform && gm->scheme.measure->kind == MeasureKind::CantorUniform) {
    // Cantor x Cantor ≅ Cantor by interleaving; the product measure is the uniform one.
    am->scheme.measure = MeasureSpec::cantorUniform();
    am->scheme.space = SpaceDescriptor::cantor();
  }
  return am;
}

// Change of advice space.

/// Cantor → ℕ: the number of leading 1s (defined on sequences containing a 0).
inline MachinePtr leadingOnesMachine() {
  struct State {
    Symbol ones = 0;
    bool done = false;
  };
  return callbackMachine<State>(
      "leading-ones", Alphabet::binary(), Alphabet::natural(), State{},
      [](State& st, Symbol s, Emission& out) {
        if (st.done) {
          out.emit(0);
        } else if (s == 1) {
          ++st.ones;
          out.tick();
        } else {
          st.done = true;
          out.emit(st.ones);
        }
      });
}

/// Cantor → Finite(2): the first bit.
inline MachinePtr firstBitMachine() {
  return callbackMachine<bool>(
      "first-bit", Alphabet::binary(), Alphabet::natural(), false,
      [](bool& seen, Symbol s, Emission& out) {
        out.emit(seen ? 0 : s);
        seen = true;
      },
      {}, [](std::size_t k) { return k; });
}

using PullbackFamily = std::function<AdviceSet(const AdviceSet& original, const Fixture& x)>;

/// ℕ-advice {n, ...} pulled back along leadingOnes: cylinders 1ⁿ0.
inline AdviceSet pullbackLeadingOnes(const AdviceSet& a, const Fixture&) {
  std::vector<Symbol> members;
  for (const auto& r : a.representatives) {
    Fuel fuel(defaultFuel());
    if (auto n = r.at(0, fuel)) members.push_back(*n);
  }
  AdviceSet s;
  s.description = "cylinders 1^n 0 over " + a.description;
  auto cyl = [](Symbol n) {
    Prefix w(n, 1);
    w.push_back(0);
    return w;
  };
  s.sample = [members, cyl](Rng& rng) {
    return Name::periodic(Alphabet::binary(), cyl(members[rng() % members.size()]), fixtures::randomWord(rng, 1 + rng() % 6));
  };
  s.contains = [members](const Name& w, std::size_t d) {
    Fuel fuel(defaultFuel());
    auto p = w.prefix(d, fuel);
    if (!p) return true;
    auto zero = std::find(p->begin(), p->end(), Symbol{0});
    Symbol ones = static_cast<Symbol>(zero - p->begin());
    if (zero == p->end()) return std::any_of(members.begin(), members.end(), [ones](Symbol n) { return n >= ones; });
    return std::find(members.begin(), members.end(), ones) != members.end();
  };
  for (Symbol n : members) s.representatives.push_back(Name::periodic(Alphabet::binary(), cyl(n), {0}));
  return s;
}

/// Finite(2)-advice pulled back along the first bit: clopen halves.
inline AdviceSet pullbackFirstBit(const AdviceSet& a, const Fixture&) {
  std::vector<Symbol> members;
  for (const auto& r : a.representatives) {
    Fuel fuel(defaultFuel());
    if (auto n = r.at(0, fuel)) members.push_back(*n);
  }
  AdviceSet s;
  s.description = "first-bit halves over " + a.description;
  s.sample = [members](Rng& rng) {
    return Name::periodic(Alphabet::binary(), {members[rng() % members.size()]}, fixtures::randomWord(rng, 1 + rng() % 6));
  };
  s.contains = [members](const Name& w, std::size_t) {
    Fuel fuel(defaultFuel());
    auto b = w.at(0, fuel);
    return !b || std::find(members.begin(), members.end(), *b) != members.end();
  };
  for (Symbol b : members) s.representatives.push_back(Name::periodic(Alphabet::binary(), {b}, {0}));
  return s;
}

/// F1(x, y) := F2(x, J(y)) for a realizer J of a computable surjection ι: Z1 → Z2.
inline AdviceMachinePtr changeAdviceSpace(const AdviceMachinePtr& am, MachinePtr iota, SpaceDescriptor newSpace,
                                          PullbackFamily pullback) {
  auto out = std::make_shared<AdviceMachine>(*am);
  out->id = am->id + "@" + iota->id();
  out->scheme = {newSpace, am->scheme.family, {}};
  if (am->scheme.family == AdviceFamilyKind::RandomPositive) out->scheme.family = AdviceFamilyKind::ClosedAll;
  out->core = composeMachines(am->core, tupleMachines({pi1(), composeMachines(iota, pi2())}));
  AdviceMachinePtr inner = am;
  out->adviceFamily = [inner, pullback](const Fixture& x) { return pullback(inner->adviceFamily(x), x); };
  out->adviceMap = nullptr;
  if (am->outputFixture) {
    out->outputFixture = [inner, iota](const Fixture& x, const Name& w) {
      return inner->outputFixture(x, Name::generated(iota, w));
    };
  }
  return out;
}

// Transport along reductions.

/// H(x, y) = F⟨x, G(K(x), y)⟩; advice family x ↦ A_{K(x)}.
inline AdviceMachinePtr transportAdviceAlongReduction(const WitnessPtr& w, const AdviceMachinePtr& gm) {
  auto am = std::make_shared<AdviceMachine>();
  am->id = gm->id + "<-" + w->id;
  am->problem = w->from;
  am->scheme = gm->scheme;
  auto kx = composeMachines(w->K, pi1());
  auto g = composeMachines(gm->core, tupleMachines({kx, pi2()}));
  am->core = composeMachines(w->F, tupleMachines({pi1(), g}));
  WitnessPtr wit = w;
  AdviceMachinePtr gg = gm;
  am->adviceFamily = [wit, gg](const Fixture& x) { return gg->adviceFamily(defaultTargetFixture(*wit, x)); };
  if (gm->adviceMap) am->adviceMap = composeMachines(gm->adviceMap, w->K);
  return am;
}

// Effective advice as closed choice.

inline ProblemPtr closedChoiceFor(const SpaceDescriptor& z) {
  switch (z.kind()) {
    case SpaceDescriptor::Kind::Nat: return closedChoiceNatProblem();
    case SpaceDescriptor::Kind::Cantor: return closedChoiceCantorProblem(false);
    default: throw SchemeMismatch("no closed choice problem for " + z.toString());
  }
}

/// K := adviceMap, F := core: f ≤_W C_Z.
inline WitnessPtr effectiveAdviceToChoiceReduction(const AdviceMachinePtr& am) {
  if (am->scheme.family != AdviceFamilyKind::EffectiveClosed || !am->adviceMap)
    throw SchemeMismatch(am->id + " is not an effective advice machine");
  auto w = std::make_shared<ReductionWitness>();
  w->id = "effective:" + am->id;
  w->from = am->problem;
  w->to = closedChoiceFor(am->scheme.space);
  w->K = am->adviceMap;
  w->F = am->core;
  MachinePtr k = am->adviceMap;
  AdviceMachinePtr m = am;
  w->targetFixture = [k, m](const Fixture& x) {
    AdviceSet a = m->adviceFamily(x);
    ChoiceMeaning c;
    c.description = a.description;
    c.answers = a.representatives;
    c.sample = a.sample;
    c.consistent = a.contains;
    c.measure = a.measure;
    return Fixture{Name::generated(k, x.name), std::move(c), x.label};
  };
  return w;
}

/// From f ≤_W C_Z: adviceMap := K, core := F, advice in the second slot.
inline AdviceMachinePtr effectiveAdviceFromChoiceReduction(const WitnessPtr& w) {
  auto kind = w->to->outputSpace.kind();
  if (w->to->id != "C_N" && w->to->id != "C_Cantor" && w->to->id != "PC_Cantor")
    throw SchemeMismatch(w->id + " does not reduce to closed choice");
  auto am = std::make_shared<AdviceMachine>();
  am->id = "advice:" + w->id;
  am->problem = w->from;
  am->scheme = {kind == SpaceDescriptor::Kind::Nat ? SpaceDescriptor::nat() : SpaceDescriptor::cantor(),
                AdviceFamilyKind::EffectiveClosed,
                {}};
  am->core = w->F;
  am->adviceMap = w->K;
  WitnessPtr wit = w;
  am->adviceFamily = [wit](const Fixture& x) {
    Fixture t = defaultTargetFixture(*wit, x);
    return choiceAdvice(wit->to, t);
  };
  return am;
}

// Random advice statistics.

/// Success frequency of random advice drawn from the scheme's measure.
inline Estimate monteCarloSuccess(const AdviceMachine& am, const Fixture& x, std::uint64_t trials, std::size_t depth,
                                  std::uint64_t seed, unsigned jobs = 1) {
  if (am.scheme.family != AdviceFamilyKind::RandomPositive || !am.scheme.measure)
    throw SchemeMismatch(am.id + " does not use random advice");
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  MeasureSpec m = *am.scheme.measure;
  return monteCarlo(trials, seed, jobs,
                    [&](RandomBits bits) { return adviceRunSucceeds(am, x, sampleAdvice(m, bits), depth); });
}

}  // namespace advice_kit
