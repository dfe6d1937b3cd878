#pragma once

// Weihrauch reduction witnesses (K, F) as machines, and the concrete
// witnesses LLPO ≤ SEigen_2, SEigen_n × SEigen_n ≤ SEigen_{n²},
// MLPO_{n+1} ≤ LinEq_{n,n+1}, C_ℕ ≤ PC_ℝ and PC_Cantor ≡ PC_𝕀.

#include "advice_kit/random.hpp"

namespace advice_kit {

struct FactorizationStall : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// f ≤_W g: F⟨x, G(K(x))⟩ solves f for every solver G of g.
struct ReductionWitness {
  std::string id;
  ProblemPtr from;
  ProblemPtr to;
  MachinePtr K;
  MachinePtr F;
  /// Target fixture for K(x): its name is K applied to x; the meaning feeds the target's oracle.
  std::function<Fixture(const Fixture&)> targetFixture;
};

using WitnessPtr = std::shared_ptr<const ReductionWitness>;

/// Solver for the target problem (an oracle variant in tests).
using Solver = std::function<std::optional<Name>(const Fixture&)>;

inline Solver oracleSolver(const ProblemPtr& p, std::size_t variant) {
  return [p, variant](const Fixture& f) { return p->oracle(f, variant); };
}

struct ReductionRun {
  Prefix output;
  bool diverged = false;
  std::uint64_t steps = 0;
};

inline Fixture defaultTargetFixture(const ReductionWitness& w, const Fixture& x) {
  if (w.targetFixture) return w.targetFixture(x);
  return {Name::generated(w.K, x.name), {}, x.label};
}

/// F⟨x, G(K(x))⟩ to k symbols.
inline ReductionRun applyReduction(const ReductionWitness& w, const Solver& g, const Fixture& x, std::size_t k,
                                   Fuel& fuel) {
  Fixture t = defaultTargetFixture(w, x);
  auto answer = g(t);
  if (!answer) throw std::invalid_argument("solver has no answer for " + w.to->id + " fixture " + t.label);
  auto r = runMachine(*w.F, pairNames(x.name, *answer), k, fuel);
  return {std::move(r.output), r.diverged, r.steps};
}

inline ReductionRun applyReduction(const ReductionWitness& w, const Solver& g, const Fixture& x, std::size_t k) {
  Fuel fuel(defaultFuel());
  return applyReduction(w, g, x, k, fuel);
}

// Helpers.

/// ρ₂ value Σ x(i) 2^-(i+1) of an eventually periodic Cantor name.
inline std::optional<Rational> exactBinaryValue(const Name& x) {
  const auto* p = x.asPeriodic();
  if (!p) return std::nullopt;
  Integer a = 0, b = 0;
  for (Symbol s : p->prefix) a = 2 * a + static_cast<long>(s);
  for (Symbol s : p->period) b = 2 * b + static_cast<long>(s);
  long pre = static_cast<long>(p->prefix.size()), q = static_cast<long>(p->period.size());
  return pow2(-pre) * (Rational(a) + Rational(b) / (pow2(q) - 1));
}

/// Exact real components of an n-vector fixture.
inline std::optional<std::vector<Rational>> exactVector(const Fixture& f, std::size_t n) {
  if (const auto* m = std::any_cast<RealVectorMeaning>(&f.meaning)) return m->values;
  std::vector<Rational> out;
  for (std::size_t i = 0; i < n; ++i) {
    auto v = exactRealValue(projectName(f.name, n, i));
    if (!v) return std::nullopt;
    out.push_back(*v);
  }
  return out;
}

inline MachinePtr secondOf(Alphabet a = Alphabet::natural()) { return secondProjection(a); }

/// The trivial witness f ≤_W f.
inline WitnessPtr identityWitness(ProblemPtr p) {
  auto w = std::make_shared<ReductionWitness>();
  w->id = "identity:" + p->id;
  w->from = p;
  w->to = p;
  w->K = identityMachine(Alphabet::natural());
  w->F = secondOf();
  w->targetFixture = [](const Fixture& x) { return x; };
  return w;
}

// LLPO ≤ SEigen_2.

/// Outcome of the two exclusion tests on a unit-vector enclosure.
inline std::optional<Symbol> llpoSeigenDecide(const Interval& v0, const Interval& v1) {
  auto nearInvSqrt2 = [](const Interval& v) {
    Interval a = v.abs();
    return a.lo() * a.lo() * 2 <= 1 && 1 <= a.hi() * a.hi() * 2;
  };
  Interval a0 = v0.abs(), a1 = v1.abs();
  bool axisPossible = (a0.contains(1) && v1.containsZero()) || (v0.containsZero() && a1.contains(1));
  bool diagonalPossible = nearInvSqrt2(v0) && nearInvSqrt2(v1);
  if (!axisPossible) return Symbol{0};
  if (!diagonalPossible) return Symbol{1};
  return std::nullopt;
}

/// Precision-doubling rounds of the LLPO decision: round r reads 2^r digits per component.
class LlpoSeigenRounds {
 public:
  LlpoSeigenRounds(Layout layout, std::size_t leaf0, std::size_t leaf1)
      : reader_(layout), leaf0_(leaf0), leaf1_(leaf1) {}

  /// Returns the answer once decided.
  std::optional<Symbol> feed(Symbol s) {
    if (answer_) return answer_;
    reader_.feed(s);
    std::size_t target = std::size_t{1} << round_;
    if (std::min(reader_.precision(leaf0_), reader_.precision(leaf1_)) < target) return std::nullopt;
    auto i0 = reader_.interval(leaf0_), i1 = reader_.interval(leaf1_);
    if (!i0 || !i1) return std::nullopt;
    answer_ = llpoSeigenDecide(*i0, *i1);
    precision_ = target;
    if (!answer_) ++round_;
    return answer_;
  }

  std::size_t rounds() const { return answer_ ? round_ : round_ - 1; }
  std::size_t precision() const { return precision_; }
  std::optional<Symbol> answer() const { return answer_; }

 private:
  LeafReader reader_;
  std::size_t leaf0_, leaf1_;
  std::size_t round_ = 1;
  std::size_t precision_ = 0;
  std::optional<Symbol> answer_;
};

struct LlpoSeigenReport {
  std::optional<Symbol> answer;
  std::size_t rounds = 0;
  std::size_t precision = 0;
};

/// Runs the decision directly on a unit-vector name, for reports.
inline LlpoSeigenReport llpoSeigenRounds(const Name& v, std::size_t maxRounds, Fuel& fuel) {
  LlpoSeigenRounds r(Layout::repeat(Layout::signedReal(), 2), 0, 1);
  NameCursor cursor(v);
  std::size_t limit = 2 * ((std::size_t{1} << maxRounds) + 72);
  for (std::size_t i = 0; i < limit; ++i) {
    auto s = cursor.next(fuel);
    if (!s) break;
    if (r.feed(*s)) break;
  }
  return {r.answer(), r.answer() ? r.rounds() : maxRounds, r.precision()};
}

namespace detail {

class LlpoSeigenFProcess : public ProcessBase<LlpoSeigenFProcess> {
 public:
  LlpoSeigenFProcess()
      : rounds_(Layout::tuple({Layout::raw(), Layout::repeat(Layout::signedReal(), 2)}), 1, 2) {}

  void feed(Symbol s, Emission& out) override {
    if (emitted_) {
      out.emit(0);
      return;
    }
    out.tick();
    if (auto a = rounds_.feed(s)) {
      out.emit(*a);
      emitted_ = true;
    }
  }

 private:
  LlpoSeigenRounds rounds_;
  bool emitted_ = false;
};

}  // namespace detail

inline WitnessPtr llpoToSeigen2Witness() {
  auto w = std::make_shared<ReductionWitness>();
  w->id = "llpo-seigen2";
  w->from = llpoProblem();
  w->to = seigenProblem(2);
  RealFunction k;
  k.id = "llpo-seigen2.K";
  k.input = Layout::repeat(Layout::unitBinary(), 2);
  k.outputs = 4;
  k.exponents = [](const LeafReader&) { return std::vector<long>{0, 0, 0, 1}; };
  // x A + y B with A = diag(1, 2), B = [[0, 1], [1, 0]].
  k.enclose = [](const LeafReader& r, std::size_t) {
    Interval x = *r.interval(0), y = *r.interval(1);
    return std::vector<Interval>{x, y, y, Rational(2) * x};
  };
  w->K = realFunctionMachine(std::move(k));
  w->F = processMachine<detail::LlpoSeigenFProcess>("llpo-seigen2.F", Alphabet::natural(), Alphabet::natural(),
                                                    std::nullopt);
  auto K = w->K;
  w->targetFixture = [K](const Fixture& x) {
    Fixture t{Name::generated(K, x.name), {}, x.label};
    auto [x0, x1] = unpairName(x.name);
    auto r0 = exactBinaryValue(x0), r1 = exactBinaryValue(x1);
    if (r0 && r1) t.meaning = MatrixMeaning{RationalMatrix(2, 2, {*r0, *r1, *r1, 2 * *r0}), {}};
    return t;
  };
  return w;
}

// SEigen_n × SEigen_n ≤ SEigen_{n²}.

namespace detail {

/// Splits an (n·n)-vector enclosure w ≈ u ⊗ v; block `i0` fixes the sign of v.
inline std::optional<std::pair<std::vector<Interval>, std::vector<Interval>>> factorTensor(
    const std::vector<Interval>& w, std::size_t n, std::size_t i0, std::size_t bits) {
  Interval norm2(0);
  for (std::size_t j = 0; j < n; ++j) norm2 = norm2 + w[i0 * n + j].square();
  if (!norm2.positive()) return std::nullopt;
  Interval norm = sqrtEnclosure(norm2, static_cast<unsigned>(bits));
  std::vector<Interval> v, u;
  for (std::size_t j = 0; j < n; ++j) v.push_back(w[i0 * n + j] / norm);
  for (std::size_t i = 0; i < n; ++i) {
    Interval s(0);
    for (std::size_t j = 0; j < n; ++j) s = s + w[i * n + j] * v[j];
    u.push_back(s);
  }
  return std::make_pair(std::move(u), std::move(v));
}

/// A 2x2 minor provably nonzero: w is not a pure tensor.
inline bool tensorMinorExcludesZero(const std::vector<Interval>& w, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = j + 1; l < n; ++l)
          if ((w[i * n + j] * w[k * n + l] - w[i * n + l] * w[k * n + j]).excludesZero()) return true;
  return false;
}

class TensorFProcess : public ProcessBase<TensorFProcess> {
 public:
  explicit TensorFProcess(std::size_t n)
      : n_(n),
        reader_(Layout::tuple({Layout::raw(), Layout::repeat(Layout::signedReal(), n * n)})),
        emitters_(2 * n, DigitEmitter(0)),
        queues_(2 * n, exponentHeader(0)) {}

  void feed(Symbol s, Emission& out) override {
    reader_.feed(s);
    out.tick();
    std::vector<Interval> w;
    for (std::size_t leaf = 1; leaf <= n_ * n_; ++leaf) {
      auto iv = reader_.interval(leaf);
      if (!iv) return;
      w.push_back(*iv);
    }
    if (tensorMinorExcludesZero(w, n_))
      throw FactorizationStall("returned eigenvector is not a pure tensor at the current precision");
    if (!block_) {
      for (std::size_t i = 0; i < n_ && !block_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
          if (w[i * n_ + j].excludesZero()) block_ = i;
      if (!block_) return;
    }
    std::size_t done = emitters_.front().digits();
    for (const auto& e : emitters_) done = std::min(done, e.digits());
    auto uv = factorTensor(w, n_, *block_, done + 8);
    if (!uv) return;
    // Output ⟨u, v⟩: slot 2c is u_c, slot 2c + 1 is v_c.
    for (std::size_t c = 0; c < n_; ++c) {
      emitters_[2 * c].absorb(uv->first[c], queues_[2 * c]);
      emitters_[2 * c + 1].absorb(uv->second[c], queues_[2 * c + 1]);
    }
    for (;;) {
      for (const auto& q : queues_)
        if (head_ >= q.size()) return;
      for (const auto& q : queues_) out.emit(q[head_]);
      ++head_;
    }
  }

 private:
  std::size_t n_;
  LeafReader reader_;
  std::vector<DigitEmitter> emitters_;
  std::vector<Prefix> queues_;
  std::size_t head_ = 0;
  std::optional<std::size_t> block_;
};

}  // namespace detail

/// Kronecker-product witness; both factors have the same size n.
inline WitnessPtr seigenTensorWitness(std::size_t n) {
  if (n * n > 8) throw std::invalid_argument("tensor witness limited to n^2 <= 8");
  auto w = std::make_shared<ReductionWitness>();
  w->id = "seigen-tensor";
  w->from = seigenPairProblem(n, n);
  w->to = seigenProblem(n * n);
  RealFunction k;
  k.id = "seigen-tensor.K";
  k.input = Layout::tuple({Layout::repeat(Layout::signedReal(), n * n), Layout::repeat(Layout::signedReal(), n * n)});
  k.outputs = n * n * n * n;
  auto entry = [n](std::size_t row, std::size_t col) {
    // (A ⊗ B)[row, col] = A[row / n, col / n] * B[row % n, col % n]
    return std::make_pair((row / n) * n + col / n, n * n + (row % n) * n + col % n);
  };
  k.exponents = [n, entry](const LeafReader& r) -> std::optional<std::vector<long>> {
    auto es = r.exponents();
    if (!es) return std::nullopt;
    std::vector<long> out;
    for (std::size_t row = 0; row < n * n; ++row)
      for (std::size_t col = 0; col < n * n; ++col) {
        auto [a, b] = entry(row, col);
        out.push_back((*es)[a] + (*es)[b]);
      }
    return out;
  };
  k.enclose = [n, entry](const LeafReader& r, std::size_t) -> std::optional<std::vector<Interval>> {
    auto ivs = r.intervals();
    if (!ivs) return std::nullopt;
    std::vector<Interval> out;
    for (std::size_t row = 0; row < n * n; ++row)
      for (std::size_t col = 0; col < n * n; ++col) {
        auto [a, b] = entry(row, col);
        out.push_back((*ivs)[a] * (*ivs)[b]);
      }
    return out;
  };
  w->K = realFunctionMachine(std::move(k));
  w->F = processMachine<detail::TensorFProcess>("seigen-tensor.F", Alphabet::natural(), signedAlphabet(),
                                                std::nullopt, n);
  auto K = w->K;
  w->targetFixture = [K](const Fixture& x) {
    Fixture t{Name::generated(K, x.name), {}, x.label};
    if (const auto* m = std::any_cast<MatrixMeaning>(&x.meaning); m && m->factors)
      t.meaning = MatrixMeaning{kronecker(m->factors->first, m->factors->second), m->factors};
    return t;
  };
  return w;
}

// MLPO_{n+1} ≤ LinEq_{n,n+1}.

namespace detail {

/// Rewires n+1 real names into the bidiagonal n x (n+1) matrix name.
class BidiagonalProcess : public ProcessBase<BidiagonalProcess> {
 public:
  explicit BidiagonalProcess(std::size_t n) : n_(n), buffers_(n + 1), zero_(exponentHeader(0)) {}

  void feed(Symbol s, Emission& out) override {
    buffers_[index_++ % (n_ + 1)].push_back(s);
    for (const auto& b : buffers_)
      if (b.size() <= round_) return;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j <= n_; ++j) {
        if (j == i || j == i + 1) {
          out.emit(buffers_[j][round_]);
        } else {
          out.emit(round_ < zero_.size() ? zero_[round_] : Symbol{1});
        }
      }
    ++round_;
  }

 private:
  std::size_t n_;
  std::vector<Prefix> buffers_;
  Prefix zero_;
  std::size_t index_ = 0, round_ = 0;
};

class NonzeroIndexProcess : public ProcessBase<NonzeroIndexProcess> {
 public:
  explicit NonzeroIndexProcess(std::size_t m)
      : m_(m), reader_(Layout::tuple({Layout::raw(), Layout::repeat(Layout::signedReal(), m)})) {}

  void feed(Symbol s, Emission& out) override {
    if (emitted_) {
      out.emit(0);
      return;
    }
    reader_.feed(s);
    out.tick();
    for (std::size_t i = 0; i < m_; ++i) {
      auto iv = reader_.interval(i + 1);
      if (iv && iv->excludesZero()) {
        out.emit(i + 1);
        emitted_ = true;
        return;
      }
    }
  }

 private:
  std::size_t m_;
  LeafReader reader_;
  bool emitted_ = false;
};

}  // namespace detail

inline RationalMatrix bidiagonalMatrix(const std::vector<Rational>& x) {
  std::size_t n = x.size() - 1;
  RationalMatrix a(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = x[i];
    a(i, i + 1) = x[i + 1];
  }
  return a;
}

inline WitnessPtr mlpoToLinEqWitness(std::size_t n) {
  if (n == 0) throw std::invalid_argument("mlpo-lineq needs n >= 1");
  auto w = std::make_shared<ReductionWitness>();
  w->id = "mlpo-lineq";
  w->from = mlpoProblem(n + 1);
  w->to = linEqProblem(n, n + 1);
  w->K = processMachine<detail::BidiagonalProcess>(
      "mlpo-lineq.K", Alphabet::natural(), signedAlphabet(),
      PrefixMachine::Lookahead([n](std::size_t k) {
        std::size_t per = n * (n + 1);
        return k == 0 ? std::size_t{0} : (n + 1) * ((k + per - 1) / per);
      }),
      n);
  w->F = processMachine<detail::NonzeroIndexProcess>("mlpo-lineq.F", Alphabet::natural(), Alphabet::natural(),
                                                     std::nullopt, n + 1);
  auto K = w->K;
  w->targetFixture = [K, n](const Fixture& x) {
    Fixture t{Name::generated(K, x.name), {}, x.label};
    if (auto v = exactVector(x, n + 1)) t.meaning = MatrixMeaning{bidiagonalMatrix(*v), {}};
    return t;
  };
  return w;
}

// C_ℕ ≤ PC_ℝ.

namespace detail {

/// Excluded naturals n become (n - 1/4, n + 3/4); gaps (t + 1/2, t + 1) and
/// the negative axis are excluded in dovetailed order, leaving ⋃ [n, n + 1/2].
class CnatToPcrProcess : public ProcessBase<CnatToPcrProcess> {
 public:
  void feed(Symbol s, Emission& out) override {
    auto e = parser_.feed(s);
    if (!e) return;
    if (*e && (*e)->size() == 1) {
      Integer n = fromU64((**e)[0]);
      appendEntry(out.symbols, Prefix{zigzag(4 * n + 1), 4, 2});
    } else {
      appendEntry(out.symbols, std::nullopt);
    }
    Integer t = static_cast<unsigned long>(count_);
    appendEntry(out.symbols, Prefix{zigzag(4 * t + 3), 4, 1});
    if (count_ == 0) {
      appendEntry(out.symbols, Prefix{zigzag(Integer(-1)), 2, 1});
    } else {
      appendEntry(out.symbols, Prefix{zigzag(-4 * t - 1), 4, 3});
    }
    ++count_;
    out.tick(3);
  }

 private:
  EntryParser parser_;
  std::size_t count_ = 0;
};

class RoundToNatProcess : public ProcessBase<RoundToNatProcess> {
 public:
  RoundToNatProcess() : reader_(Layout::tuple({Layout::raw(), Layout::signedReal()})) {}

  void feed(Symbol s, Emission& out) override {
    if (emitted_) {
      out.emit(0);
      return;
    }
    reader_.feed(s);
    out.tick();
    auto j = reader_.interval(1);
    if (!j || j->width() >= Rational(1, 4)) return;
    Integer n = floorOf(j->lo() + Rational(1, 4));
    out.emit(n < 0 ? 0 : toU64(n));
    emitted_ = true;
  }

 private:
  LeafReader reader_;
  bool emitted_ = false;
};

}  // namespace detail

/// Members of a natural-number choice fixture, from its answers.
inline std::vector<Symbol> natAnswers(const Fixture& x) {
  std::vector<Symbol> out;
  if (const auto* m = std::any_cast<ChoiceMeaning>(&x.meaning))
    for (const auto& a : m->answers) {
      Fuel fuel(defaultFuel());
      if (auto s = a.at(0, fuel)) out.push_back(*s);
    }
  return out;
}

inline WitnessPtr cnatToPcrWitness() {
  auto w = std::make_shared<ReductionWitness>();
  w->id = "cnat-pcr";
  w->from = closedChoiceNatProblem();
  w->to = positiveChoiceRealProblem(false);
  w->K = processMachine<detail::CnatToPcrProcess>("cnat-pcr.K", Alphabet::natural(), Alphabet::natural(),
                                                  std::nullopt);
  w->F = processMachine<detail::RoundToNatProcess>("cnat-pcr.F", Alphabet::natural(), Alphabet::natural(),
                                                   std::nullopt);
  auto K = w->K;
  w->targetFixture = [K](const Fixture& x) {
    Fixture t{Name::generated(K, x.name), {}, x.label};
    auto members = natAnswers(x);
    if (members.empty()) return t;
    ChoiceMeaning m;
    m.description = "union of [n, n + 1/2] over members n";
    for (Symbol n : members) {
      Rational q(static_cast<long>(n));
      m.pieces.emplace_back(q, q + Rational(1, 2));
      for (Rational off : {Rational(0), Rational(1, 2), Rational(1, 4)}) {
        m.answers.push_back(encodeRational(q + off));
        m.points.push_back(q + off);
      }
    }
    auto pieces = m.pieces;
    m.sample = [pieces](Rng& rng) {
      const auto& p = pieces[rng() % pieces.size()];
      Rational u(static_cast<long>(rng() >> 12), 1);
      u /= pow2(52);
      return encodeRational(p.lo() + u * p.width());
    };
    t.meaning = std::move(m);
    return t;
  };
  return w;
}

// PC_Cantor ≡_W PC_𝕀.

/// PC_Cantor ≤ PC_𝕀 via φ⁻¹ on closed sets and φ on the returned point.
inline WitnessPtr pcCantorToIntervalWitness() {
  auto w = std::make_shared<ReductionWitness>();
  w->id = "pc-cantor-interval";
  w->from = closedChoiceCantorProblem(true);
  w->to = positiveChoiceRealProblem(true);
  w->K = phiInverseClosedMachine();
  w->F = composeMachines(phiForwardMachine(), secondOf());
  auto K = w->K;
  w->targetFixture = [K](const Fixture& x) {
    Fixture t{Name::generated(K, x.name), {}, x.label};
    if (const auto* src = std::any_cast<ChoiceMeaning>(&x.meaning)) {
      ChoiceMeaning m;
      m.description = "phi^-1 of " + src->description;
      for (const auto& a : src->answers) m.answers.push_back(phiInverseName(a));
      if (src->sample) {
        auto s = src->sample;
        m.sample = [s](Rng& rng) { return phiInverseName(s(rng)); };
      }
      t.meaning = std::move(m);
    }
    return t;
  };
  return w;
}

/// PC_𝕀 ≤ PC_Cantor via ρ₂⁻¹ on closed sets and ρ₂ → signed digits on the returned point.
inline WitnessPtr pcIntervalToCantorWitness() {
  auto w = std::make_shared<ReductionWitness>();
  w->id = "pc-interval-cantor";
  w->from = positiveChoiceRealProblem(true);
  w->to = closedChoiceCantorProblem(true);
  w->K = rho2InverseClosedMachine();
  w->F = composeMachines(translateBinaryToSignedMachine(), secondOf());
  auto K = w->K;
  w->targetFixture = [K](const Fixture& x) {
    Fixture t{Name::generated(K, x.name), {}, x.label};
    if (const auto* src = std::any_cast<ChoiceMeaning>(&x.meaning)) {
      ChoiceMeaning m;
      m.description = "rho2^-1 of " + src->description;
      for (const auto& q : src->points) {
        if (q < 0 || q > 1) continue;
        m.answers.push_back(binaryExpansion(q));
        Integer den = q.get_den();
        if (q != 0 && q != 1 && (den & (den - 1)) == 0) m.answers.push_back(binaryExpansion(q, true));
      }
      auto pieces = src->pieces;
      if (!pieces.empty()) {
        m.sample = [pieces](Rng& rng) {
          const auto& p = pieces[rng() % pieces.size()];
          Rational u(static_cast<long>(rng() >> 24), 1);
          u /= pow2(40);
          return binaryExpansion(p.lo() + u * p.width());
        };
      }
      t.meaning = std::move(m);
    }
    return t;
  };
  return w;
}

/// Shipped witnesses by CLI id.
inline WitnessPtr witnessById(const std::string& id, std::size_t n = 2) {
  if (id == "llpo-seigen2") return llpoToSeigen2Witness();
  if (id == "seigen-tensor") return seigenTensorWitness(n);
  if (id == "mlpo-lineq") return mlpoToLinEqWitness(n);
  if (id == "cnat-pcr") return cnatToPcrWitness();
  if (id == "pc-cantor-interval") return pcCantorToIntervalWitness();
  if (id == "pc-interval-cantor") return pcIntervalToCantorWitness();
  throw std::invalid_argument("unknown witness: " + id);
}

}  // namespace advice_kit
