#pragma once

// Measures on advice spaces, samplers, the fat Cantor set, closed-set
// transport along ρ₂ and φ, and Monte-Carlo plumbing.

#include "advice_kit/problems.hpp"

#include <cmath>
#include <set>
#include <thread>

namespace advice_kit {

// Counter-based random bits.

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Fair bits addressed by (seed, stream, index); independent of evaluation order.
class RandomBits {
 public:
  RandomBits(std::uint64_t seed, std::uint64_t stream) : key_(splitmix64(splitmix64(seed) ^ splitmix64(~stream))) {}

  std::uint64_t word(std::uint64_t block) const { return splitmix64(key_ ^ splitmix64(block)); }
  Symbol operator()(std::size_t i) const { return (word(i >> 6) >> (i & 63)) & 1; }

  /// 64-bit seed for a standard engine, e.g. the advice-set samplers.
  std::uint64_t engineSeed() const { return word(~std::uint64_t{0}); }

 private:
  std::uint64_t key_;
};

/// Source of fair bits by index.
using BitSource = std::function<Symbol(std::size_t)>;

inline BitSource bitsOf(const Name& n) {
  return [n](std::size_t i) {
    Fuel fuel(defaultFuel());
    auto s = n.at(i, fuel);
    if (!s) throw std::runtime_error("bit source name did not produce a symbol");
    return *s;
  };
}

/// The bits src(offset), src(offset + 1), ... as a Cantor name.
inline Name randomBitsName(BitSource src, std::size_t offset = 0) {
  auto m = callbackMachine<std::size_t>(
      "random-bits", Alphabet::binary(), Alphabet::binary(), offset,
      [src = std::move(src)](std::size_t& i, Symbol, Emission& out) { out.emit(src(i++)); }, {},
      [](std::size_t k) { return k; });
  return sourceName(m);
}

// Measures.

enum class MeasureKind { CantorUniform, LebesgueUnit, NatGeometric, BaireGeometricProduct, FiniteUniform, LebesgueReal };

struct MeasureSpec {
  MeasureKind kind = MeasureKind::CantorUniform;
  Symbol k = 0;  // FiniteUniform only

  static MeasureSpec cantorUniform() { return {MeasureKind::CantorUniform, 0}; }
  static MeasureSpec lebesgueUnit() { return {MeasureKind::LebesgueUnit, 0}; }
  static MeasureSpec natGeometric() { return {MeasureKind::NatGeometric, 0}; }
  static MeasureSpec baireGeometricProduct() { return {MeasureKind::BaireGeometricProduct, 0}; }
  static MeasureSpec finiteUniform(Symbol k) {
    if (k == 0) throw std::invalid_argument("FiniteUniform(0)");
    return {MeasureKind::FiniteUniform, k};
  }
  /// Sign, geometric integer part and uniform fraction: positive density on all of ℝ.
  static MeasureSpec lebesgueReal() { return {MeasureKind::LebesgueReal, 0}; }

  SpaceDescriptor space() const {
    switch (kind) {
      case MeasureKind::CantorUniform: return SpaceDescriptor::cantor();
      case MeasureKind::LebesgueUnit: return SpaceDescriptor::unitBinary();
      case MeasureKind::NatGeometric: return SpaceDescriptor::nat();
      case MeasureKind::BaireGeometricProduct: return SpaceDescriptor::baire();
      case MeasureKind::FiniteUniform: return SpaceDescriptor::finite(k);
      case MeasureKind::LebesgueReal: return SpaceDescriptor::realSigned();
    }
    return SpaceDescriptor::cantor();
  }

  std::string toString() const {
    switch (kind) {
      case MeasureKind::CantorUniform: return "cantor-uniform";
      case MeasureKind::LebesgueUnit: return "lebesgue-unit";
      case MeasureKind::NatGeometric: return "nat-geometric";
      case MeasureKind::BaireGeometricProduct: return "baire-geometric";
      case MeasureKind::FiniteUniform: return "finite-uniform:" + std::to_string(k);
      case MeasureKind::LebesgueReal: return "lebesgue-real";
    }
    return "?";
  }

  friend bool operator==(const MeasureSpec& a, const MeasureSpec& b) { return a.kind == b.kind && a.k == b.k; }
};

/// Probability of {n} under NatGeometric.
inline Rational natGeometricMass(Symbol n) { return pow2(-static_cast<long>(n) - 1); }

namespace detail {

inline constexpr std::size_t kGeometricCap = 4096;

/// Leading ones of src starting at `pos`; advances pos past the terminating 0.
inline Symbol geometricDraw(const BitSource& src, std::size_t& pos) {
  Symbol n = 0;
  while (src(pos++) == 1) {
    if (++n > kGeometricCap) throw std::runtime_error("geometric draw exceeded the run-length cap");
  }
  return n;
}

}  // namespace detail

/// Turns fair bits into an advice name distributed according to `m`.
inline Name sampleAdvice(const MeasureSpec& m, BitSource src) {
  switch (m.kind) {
    case MeasureKind::CantorUniform: return randomBitsName(std::move(src));
    case MeasureKind::LebesgueUnit: return translateBinaryToSigned(randomBitsName(std::move(src)));
    case MeasureKind::NatGeometric: {
      std::size_t pos = 0;
      return natName(detail::geometricDraw(src, pos));
    }
    case MeasureKind::BaireGeometricProduct: {
      auto mach = callbackMachine<std::size_t>(
          "baire-geometric", Alphabet::binary(), Alphabet::natural(), 0,
          [src = std::move(src)](std::size_t& pos, Symbol, Emission& out) { out.emit(detail::geometricDraw(src, pos)); });
      return sourceName(mach);
    }
    case MeasureKind::FiniteUniform: {
      std::size_t width = 0;
      while ((Symbol{1} << width) < m.k) ++width;
      for (std::size_t pos = 0;;) {
        Symbol v = 0;
        for (std::size_t i = 0; i < width; ++i) v = 2 * v + src(pos++);
        if (v < m.k) return natName(v);
        if (pos > 64 * detail::kGeometricCap) throw std::runtime_error("rejection sampling did not terminate");
      }
    }
    case MeasureKind::LebesgueReal: {
      bool negative = src(0) == 1;
      std::size_t pos = 1;
      Symbol n = detail::geometricDraw(src, pos);
      long e = exponentBound(Rational(static_cast<long>(n) + 1));
      return computableRealName("lebesgue-real", e, [src = std::move(src), pos, n, negative](std::size_t bits) {
        Integer k = 0;
        for (std::size_t i = 0; i < bits; ++i) k = 2 * k + static_cast<long>(src(pos + i));
        Rational scale = pow2(-static_cast<long>(bits));
        Rational lo = Rational(static_cast<long>(n)) + Rational(k) * scale, hi = lo + scale;
        return negative ? Interval(-hi, -lo) : Interval(lo, hi);
      });
    }
  }
  throw std::logic_error("unknown measure");
}

// Binary expansions.

/// ρ₂-name of q in [0, 1]; for dyadic q the `upper` flag selects the expansion ending in 1s.
inline Name binaryExpansion(const Rational& q, bool upper = false) {
  if (q < 0 || q > 1) throw std::invalid_argument("binary expansion outside [0, 1]");
  if (q == 1) return Name::constant(Alphabet::binary(), 1);
  if (q == 0 && upper) throw std::invalid_argument("0 has a single binary expansion");
  Rational r = q;
  Prefix digits;
  std::vector<Rational> seen;
  // Long division; for the upper expansion of a dyadic, step back one ulp.
  if (upper && r.get_den() != 1) {
    Integer den = r.get_den();
    if ((den & (den - 1)) == 0) {
      Prefix pre;
      Rational x = r;
      while (x != 0) {
        x *= 2;
        Symbol b = x >= 1 ? 1 : 0;
        x -= static_cast<long>(b);
        pre.push_back(b);
      }
      pre.back() = 0;
      return Name::periodic(Alphabet::binary(), pre, {1});
    }
  }
  for (;;) {
    for (std::size_t i = 0; i < seen.size(); ++i) {
      if (seen[i] == r) {
        Prefix pre(digits.begin(), digits.begin() + static_cast<long>(i));
        Prefix per(digits.begin() + static_cast<long>(i), digits.end());
        return Name::periodic(Alphabet::binary(), pre, per);
      }
    }
    seen.push_back(r);
    r *= 2;
    Symbol b = r >= 1 ? 1 : 0;
    r -= static_cast<long>(b);
    digits.push_back(b);
    if (digits.size() > 4096) throw std::invalid_argument("binary period too long");
  }
}

inline Interval dyadicInterval(std::span<const Symbol> word) {
  BinaryDecoder d;
  for (Symbol s : word) d.feed(s);
  return d.interval();
}

// Fat Cantor set.

/// Stage-d approximation of Q: 2^d closed intervals with endpoints in 2^-(2d+1) ℤ.
struct FatCantorSet {
  std::size_t depth = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> scaled;  // endpoints times 2^(2d+1)
  Rational measureAtDepth;

  std::size_t size() const { return scaled.size(); }
  Interval interval(std::size_t i) const {
    Rational s = pow2(-2 * static_cast<long>(depth) - 1);
    return {Rational(fromU64(scaled[i].first)) * s, Rational(fromU64(scaled[i].second)) * s};
  }
  std::vector<Interval> intervals() const {
    std::vector<Interval> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back(interval(i));
    return out;
  }
};

inline FatCantorSet buildFatCantor(std::size_t d) {
  if (d > 30) throw std::invalid_argument("fat Cantor stage above 30");
  FatCantorSet q;
  q.depth = d;
  const std::uint64_t one = std::uint64_t{1} << (2 * d + 1);
  q.scaled = {{0, one}};
  for (std::size_t i = 1; i <= d; ++i) {
    // Half the stage-i gap 4^-i, scaled: 2^(2d+1-2i-1).
    std::uint64_t half = std::uint64_t{1} << (2 * (d - i));
    std::vector<std::pair<std::uint64_t, std::uint64_t>> next;
    next.reserve(2 * q.scaled.size());
    for (auto [lo, hi] : q.scaled) {
      std::uint64_t mid = (lo + hi) / 2;
      next.emplace_back(lo, mid - half);
      next.emplace_back(mid + half, hi);
    }
    q.scaled = std::move(next);
  }
  Integer total = 0;
  for (auto [lo, hi] : q.scaled) total += fromU64(hi - lo);
  q.measureAtDepth = Rational(total) * pow2(-2 * static_cast<long>(d) - 1);
  return q;
}

/// Lebesgue measure of φ⁻¹([w]) = Q ∩ I_w: |I_w| minus all later gaps inside I_w.
inline Rational phiInverseCylinderMeasure(std::span<const Symbol> w) {
  long n = static_cast<long>(w.size());
  // Stage i > n removes 2^(i-1-n) gaps of length 4^-i inside I_w; the tail sums to 2^(-2n-1).
  return fatCantorInterval(w).width() - pow2(-2 * n - 1);
}

// Transport of closed sets.

enum class TransportMap { Rho2Inverse, PhiInverse, PhiForward };

inline const char* toString(TransportMap t) {
  switch (t) {
    case TransportMap::Rho2Inverse: return "rho2-inverse";
    case TransportMap::PhiInverse: return "phi-inverse";
    case TransportMap::PhiForward: return "phi-forward";
  }
  return "?";
}

namespace detail {

/// Pulls a closed subset of ℝ back to Cantor space along a map whose
/// cylinder images are the closed intervals `cell(u)`: u is excluded once
/// cell(u) is covered by the excluded balls read so far.
class PullbackProcess : public ProcessBase<PullbackProcess> {
 public:
  using Cell = Interval (*)(std::span<const Symbol>);
  explicit PullbackProcess(Cell cell) : cell_(cell) {}

  void feed(Symbol s, Emission& out) override {
    auto e = parser_.feed(s);
    if (!e) return;
    if (*e) {
      auto b = wordBall(**e);
      balls_.emplace_back(b.lo(), b.hi());
    }
    ++stage_;
    Prefix u;
    search(u, out);
    out.emit(0);
  }

 private:
  void search(Prefix& u, Emission& out) {
    if (excluded_.count(u)) return;
    Interval iv = cell_(u);
    out.tick();
    bool touches = false;
    for (const auto& b : balls_)
      if (b.lo() < iv.hi() && iv.lo() < b.hi()) touches = true;
    if (!touches) return;
    if (coveredByOpenIntervals(iv, balls_)) {
      excluded_.insert(u);
      appendEntry(out.symbols, u);
      return;
    }
    if (u.size() >= stage_) return;
    for (Symbol b : {Symbol{0}, Symbol{1}}) {
      u.push_back(b);
      search(u, out);
      u.pop_back();
    }
  }

  Cell cell_;
  EntryParser parser_;
  std::vector<Interval> balls_;
  std::set<Prefix> excluded_;
  std::size_t stage_ = 0;
};

/// Pushes a closed subset of Cantor space into [0, 1] along φ⁻¹.
class PhiInverseClosedProcess : public ProcessBase<PhiInverseClosedProcess> {
 public:
  void feed(Symbol s, Emission& out) override {
    auto e = parser_.feed(s);
    if (!e) return;
    if (*e) {
      const Prefix& w = **e;
      Interval iv = fatCantorInterval(w);
      Rational pad = pow2(-2 * static_cast<long>(w.size()) - 1);
      appendEntry(out.symbols, ballWord(RationalBall::between(iv.lo() - pad, iv.hi() + pad)));
    } else {
      appendEntry(out.symbols, std::nullopt);
    }
    // One removed gap of Q, in shortlex order of the parent word.
    Prefix u = binaryWord(gaps_++);
    Prefix l = u, r = u;
    l.push_back(0);
    r.push_back(1);
    appendEntry(out.symbols, ballWord(RationalBall::between(fatCantorInterval(l).hi(), fatCantorInterval(r).lo())));
    // Alternating rays (-2^(t+1), 0) and (1, 1 + 2^(t+1)).
    Rational reach = pow2(static_cast<long>(rays_ / 2) + 1);
    if (rays_ % 2 == 0) {
      appendEntry(out.symbols, ballWord(RationalBall::between(-reach, 0)));
    } else {
      appendEntry(out.symbols, ballWord(RationalBall::between(1, 1 + reach)));
    }
    ++rays_;
    out.tick(3);
  }

 private:
  EntryParser parser_;
  std::size_t gaps_ = 0, rays_ = 0;
};

}  // namespace detail

/// ρ₂⁻¹: closed subsets of [0, 1] (excluded balls) to closed subsets of Cantor space.
inline MachinePtr rho2InverseClosedMachine() {
  return processMachine<detail::PullbackProcess>("rho2-inverse-closed", Alphabet::natural(), Alphabet::natural(),
                                                 std::nullopt, &dyadicInterval);
}

/// φ: closed subsets of [0, 1] to the closed subset φ(S ∩ Q) of Cantor space.
inline MachinePtr phiForwardClosedMachine() {
  return processMachine<detail::PullbackProcess>("phi-forward-closed", Alphabet::natural(), Alphabet::natural(),
                                                 std::nullopt, &fatCantorInterval);
}

/// φ⁻¹: closed subsets of Cantor space to closed subsets of ℝ inside Q.
inline MachinePtr phiInverseClosedMachine() {
  return processMachine<detail::PhiInverseClosedProcess>("phi-inverse-closed", Alphabet::natural(),
                                                         Alphabet::natural(), std::nullopt);
}

inline MachinePtr transportMachine(TransportMap map) {
  switch (map) {
    case TransportMap::Rho2Inverse: return rho2InverseClosedMachine();
    case TransportMap::PhiInverse: return phiInverseClosedMachine();
    case TransportMap::PhiForward: return phiForwardClosedMachine();
  }
  throw std::logic_error("unknown transport map");
}

inline Name closedSetTransport(const Name& s, TransportMap map) { return Name::generated(transportMachine(map), s); }

// Measure bounds.

struct MeasureBounds {
  Rational lower, upper;
};

/// Upper bound 1 - λ(union of the excluded cylinders among the first `depth` entries); lower bound 0.
inline MeasureBounds closedMeasureBounds(const Name& s, std::size_t depth) {
  auto words = enumeratedWords(s, depth);
  std::sort(words.begin(), words.end(), [](const Prefix& a, const Prefix& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::vector<Prefix> kept;
  for (const auto& w : words) {
    bool covered = false;
    for (const auto& k : kept)
      if (isPrefixOf(k, w)) covered = true;
    if (!covered) kept.push_back(w);
  }
  Rational mass = 0;
  for (const auto& w : kept) mass += pow2(-static_cast<long>(w.size()));
  return {Rational(0), Rational(1) - mass};
}

// Statistics.

inline constexpr double kWilsonZ99 = 2.5758293035489;

struct Estimate {
  std::uint64_t successes = 0, trials = 0;
  double point = 0, lo = 0, hi = 0;
  bool covers(double p) const { return lo <= p && p <= hi; }
};

inline Estimate wilson99(std::uint64_t successes, std::uint64_t trials) {
  Estimate e;
  e.successes = successes;
  e.trials = trials;
  if (trials == 0) {
    e.hi = 1;
    return e;
  }
  const double n = static_cast<double>(trials), p = static_cast<double>(successes) / n, z = kWilsonZ99;
  const double denom = 1 + z * z / n;
  const double centre = (p + z * z / (2 * n)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom;
  e.point = p;
  e.lo = std::max(0.0, centre - half);
  e.hi = std::min(1.0, centre + half);
  return e;
}

/// |observed - expected| <= 3σ for a binomial count.
inline bool withinThreeSigma(std::uint64_t count, std::uint64_t trials, double p) {
  double n = static_cast<double>(trials);
  double sigma = std::sqrt(n * p * (1 - p));
  return std::abs(static_cast<double>(count) - n * p) <= 3 * sigma;
}

/// Runs fn(i) for i < count on `jobs` threads; results are stored by index.
template <typename T, typename F>
std::vector<T> parallelMap(std::size_t count, unsigned jobs, F fn) {
  std::vector<T> out(count);
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < count; i += jobs) out[i] = fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

/// Success counts of independent trials; trial i sees RandomBits(seed, i).
template <typename Trial>
Estimate monteCarlo(std::uint64_t trials, std::uint64_t seed, unsigned jobs, Trial trial) {
  auto hits = parallelMap<char>(trials, jobs, [&](std::size_t i) { return static_cast<char>(trial(RandomBits(seed, i))); });
  std::uint64_t s = 0;
  for (char h : hits) s += h ? 1 : 0;
  return wilson99(s, trials);
}

}  // namespace advice_kit
