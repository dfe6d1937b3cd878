#pragma once

// Step-counted profiles of total Cantor-to-Cantor machines, polynomial bound
// checks, and the FNP witness ⟨π₂, x ↦ {f(x)}⟩.

#include "advice_kit/catalog.hpp"

namespace advice_kit {

/// Fuel cap for one step count.
inline constexpr std::uint64_t kComplexityCap = 100'000'000;

struct Diverged : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Steps until the output has length >= k.
inline std::uint64_t stepsToKBits(const PrefixMachine& m, const Name& x, std::size_t k,
                                  std::uint64_t cap = kComplexityCap) {
  if (k == 0) return 0;
  Fuel fuel(cap);
  auto r = runMachine(m, x, k, fuel);
  if (r.diverged) throw Diverged(m.id() + ": no " + std::to_string(k) + " output symbols within " +
                                 std::to_string(cap) + " steps");
  return r.steps;
}

enum class ProfileMode { Exact, SampledLowerBound };

inline const char* toString(ProfileMode m) { return m == ProfileMode::Exact ? "exact" : "sampled-lower-bound"; }

struct ProfilePoint {
  std::size_t k = 0;
  std::uint64_t maxSteps = 0;
  ProfileMode mode = ProfileMode::Exact;
  bool capped = false;  // maxSteps is the lower bound cap + 1

  bool operator==(const ProfilePoint&) const = default;
};

struct ComplexityProfile {
  std::string machineId;
  std::vector<ProfilePoint> points;
  std::string inputsUsed;
};

namespace detail {

struct ExhaustiveSearch {
  const PrefixMachine& m;
  std::size_t kMax;
  std::size_t depthLimit;
  Symbol alphabetSize;
  std::vector<std::uint64_t> best;  // best[k] for k in 1..kMax

  void visit(const Process& proc, std::size_t depth, std::uint64_t steps, std::size_t outLen) {
    if (outLen >= kMax) return;
    if (depth >= depthLimit)
      throw std::logic_error(m.id() + ": declared lookahead " + std::to_string(depthLimit) + " too small for " +
                             std::to_string(kMax) + " output symbols");
    for (Symbol s = 0; s < alphabetSize; ++s) {
      auto next = proc.clone();
      Emission em;
      next->feed(s, em);
      std::uint64_t total = saturatingAdd(steps, saturatingAdd(1, em.steps()));
      std::size_t len = outLen + em.symbols.size();
      for (std::size_t k = outLen + 1; k <= std::min(len, kMax); ++k) best[k] = std::max(best[k], total);
      visit(*next, depth + 1, total, len);
    }
  }
};

}  // namespace detail

/// Exact τ over every input prefix up to the declared lookahead of kMax.
inline ComplexityProfile tauProfileExhaustive(const PrefixMachine& m, std::size_t kMax) {
  if (!m.declaredLookahead()) throw std::invalid_argument(m.id() + " declares no lookahead; use sampled mode");
  Alphabet in = m.inputAlphabet();
  if (in.kind() == Alphabet::Kind::Natural) throw std::invalid_argument("exhaustive mode needs a finite input alphabet");
  detail::ExhaustiveSearch search{m, kMax, (*m.declaredLookahead())(kMax), in.size(), std::vector<std::uint64_t>(kMax + 1, 0)};
  auto proc = m.spawn();
  Emission em;
  proc->start(em);
  std::uint64_t steps = em.steps();
  std::size_t len = em.symbols.size();
  for (std::size_t k = 1; k <= std::min(len, kMax); ++k) search.best[k] = steps;
  search.visit(*proc, 0, steps, len);
  ComplexityProfile p;
  p.machineId = m.id();
  p.inputsUsed = "all prefixes of length " + std::to_string(search.depthLimit);
  for (std::size_t k = 1; k <= kMax; ++k) p.points.push_back({k, search.best[k], ProfileMode::Exact, false});
  return p;
}

/// Max over the given inputs; a lower bound on τ. Runs that hit the cap count as cap + 1.
inline ComplexityProfile tauProfileSampled(const PrefixMachine& m, std::size_t kMax, const std::vector<Name>& inputs,
                                           std::string description, unsigned jobs = 1,
                                           std::uint64_t cap = kComplexityCap) {
  auto rows = parallelMap<std::vector<std::uint64_t>>(inputs.size(), jobs, [&](std::size_t i) {
    std::vector<std::uint64_t> row(kMax + 1, 0);
    for (std::size_t k = 1; k <= kMax; ++k) {
      try {
        row[k] = stepsToKBits(m, inputs[i], k, cap);
      } catch (const Diverged&) {
        for (std::size_t j = k; j <= kMax; ++j) row[j] = saturatingAdd(cap, 1);
        break;
      }
    }
    return row;
  });
  ComplexityProfile p;
  p.machineId = m.id();
  p.inputsUsed = std::move(description);
  for (std::size_t k = 1; k <= kMax; ++k) {
    std::uint64_t mx = 0;
    for (const auto& row : rows) mx = std::max(mx, row[k]);
    p.points.push_back({k, mx, ProfileMode::SampledLowerBound, mx > cap});
  }
  return p;
}

/// Deterministic sample of Cantor inputs: the constant and alternating streams plus seeded random ones.
inline std::vector<Name> sampleCantorInputs(std::size_t count, std::uint64_t seed) {
  std::vector<Name> out{Name::zeros(), Name::constant(Alphabet::binary(), 1),
                        Name::periodic(Alphabet::binary(), {}, {0, 1})};
  Rng rng(seed);
  while (out.size() < count)
    out.push_back(Name::periodic(Alphabet::binary(), fixtures::randomWord(rng, 24), fixtures::randomWord(rng, 1 + rng() % 8)));
  out.erase(out.begin() + static_cast<long>(std::min(count, out.size())), out.end());
  return out;
}

enum class BoundVerdict { Accept, Reject, InconclusiveAccept };

inline const char* toString(BoundVerdict v) {
  switch (v) {
    case BoundVerdict::Accept: return "accept";
    case BoundVerdict::Reject: return "reject";
    case BoundVerdict::InconclusiveAccept: return "inconclusive-accept";
  }
  return "?";
}

struct BoundCheck {
  BoundVerdict verdict = BoundVerdict::Accept;
  std::optional<std::size_t> violatedAt;
};

/// Accept iff every point has maxSteps <= c k^d; sampled profiles cannot certify Accept.
inline BoundCheck polyBoundCheck(const ComplexityProfile& p, std::uint64_t c, std::uint64_t d) {
  if (c < 1) throw std::invalid_argument("c must be >= 1");
  bool sampled = false;
  for (const auto& pt : p.points) {
    sampled = sampled || pt.mode == ProfileMode::SampledLowerBound;
    if (pt.k == 0) continue;
    std::uint64_t bound = c;
    for (std::uint64_t i = 0; i < d; ++i) bound = saturatingMul(bound, pt.k);
    if (pt.maxSteps > bound) return {BoundVerdict::Reject, pt.k};
  }
  return {sampled ? BoundVerdict::InconclusiveAccept : BoundVerdict::Accept, std::nullopt};
}

// FNP witness.

namespace detail {

/// Runs f on x and lists, at entry index i, the word binaryWord(i) when it
/// disagrees with f(x) (a pad otherwise). Entry i appears once |binaryWord(i)|
/// output bits of f are known.
class SingletonAdviceProcess : public Process {
 public:
  explicit SingletonAdviceProcess(MachinePtr f) : f_(std::move(f)), inner_(f_->spawn()) {}
  SingletonAdviceProcess(const SingletonAdviceProcess& o)
      : f_(o.f_), inner_(o.inner_->clone()), fx_(o.fx_), index_(o.index_) {}

  std::unique_ptr<Process> clone() const override { return std::make_unique<SingletonAdviceProcess>(*this); }

  void start(Emission& out) override {
    Emission em;
    inner_->start(em);
    absorb(em, out);
  }

  void feed(Symbol s, Emission& out) override {
    Emission em;
    inner_->feed(s, em);
    absorb(em, out);
  }

 private:
  void absorb(const Emission& em, Emission& out) {
    out.tick(em.steps());
    fx_.insert(fx_.end(), em.symbols.begin(), em.symbols.end());
    for (;;) {
      Prefix w = binaryWord(index_);
      if (w.size() > fx_.size()) return;
      bool agrees = std::equal(w.begin(), w.end(), fx_.begin());
      appendEntry(out.symbols, agrees ? std::nullopt : std::optional<Prefix>(w));
      ++index_;
    }
  }

  MachinePtr f_;
  std::unique_ptr<Process> inner_;
  Prefix fx_;
  std::size_t index_ = 0;
};

}  // namespace detail

struct FnpWitness {
  MachinePtr g;          // on ⟨x, r⟩
  MachinePtr adviceMap;  // x ↦ closed-set name of {f(x)}
};

/// For total f: F(x) = {f(x)} is computable and π₂ solves f with that advice.
inline FnpWitness fnpWitness(const MachinePtr& f) {
  FnpWitness w;
  w.g = secondProjection(Alphabet::binary());
  w.adviceMap = std::make_shared<PrefixMachine>("singleton-advice:" + f->id(), f->inputAlphabet(), Alphabet::natural(),
                                                [f]() { return std::make_unique<detail::SingletonAdviceProcess>(f); });
  return w;
}

// Shipped total machines.

/// Deterministic finite-state transducer over bits: one output bit per input bit.
inline MachinePtr mealyMachine(std::string id, std::vector<std::array<std::size_t, 2>> next,
                               std::vector<std::array<Symbol, 2>> emit) {
  if (next.empty() || next.size() != emit.size()) throw std::invalid_argument("malformed transducer");
  struct Table {
    std::vector<std::array<std::size_t, 2>> next;
    std::vector<std::array<Symbol, 2>> emit;
  };
  auto t = std::make_shared<const Table>(Table{std::move(next), std::move(emit)});
  return callbackMachine<std::size_t>(
      std::move(id), Alphabet::binary(), Alphabet::binary(), 0,
      [t](std::size_t& state, Symbol s, Emission& out) {
        out.emit(t->emit[state][s]);
        state = t->next[state][s];
      },
      {}, [](std::size_t k) { return k; });
}

/// Random transducer with 1-4 states, optionally followed by bit doubling or a bit flip.
inline MachinePtr randomCantorMachine(Rng& rng, std::size_t index) {
  std::size_t states = 1 + rng() % 4;
  std::vector<std::array<std::size_t, 2>> next(states);
  std::vector<std::array<Symbol, 2>> emit(states);
  for (std::size_t q = 0; q < states; ++q)
    for (Symbol s = 0; s < 2; ++s) {
      next[q][s] = rng() % states;
      emit[q][s] = rng() & 1;
    }
  auto m = mealyMachine("mealy-" + std::to_string(index), std::move(next), std::move(emit));
  switch (rng() % 3) {
    case 0: return composeMachines(bitDoublingMachine(), m);
    case 1: return composeMachines(bitflipMachine(), m);
    default: return m;
  }
}

inline MachinePtr complexityMachineById(const std::string& id) {
  if (id == "identity") return identityMachine();
  if (id == "bitflip") return bitflipMachine();
  if (id == "bit-doubling") return bitDoublingMachine();
  if (id == "padded-delay") return paddedDelayMachine();
  if (id == "pi2") return secondProjection(Alphabet::binary());
  if (id.rfind("fnp:", 0) == 0) return fnpWitness(complexityMachineById(id.substr(4))).g;
  throw std::invalid_argument("unknown machine: " + id);
}

inline std::vector<std::string> shippedComplexityMachineIds() {
  return {"identity", "bitflip", "bit-doubling", "padded-delay", "pi2"};
}

}  // namespace advice_kit
