#pragma once

// Monotone prefix machines: the realizer representation for every computable
// map on Baire/Cantor space in this library.
//
// A machine is a factory of write-once processes. A process reads input
// symbols one at a time and may append output symbols; it never retracts
// output, so the induced prefix map is monotone by construction.
//
// Step accounting: one step per input symbol read, one per output symbol
// written, plus whatever internal ticks the process declares.

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace advice_kit {

using Symbol = std::uint64_t;
using Prefix = std::vector<Symbol>;

inline constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

inline std::uint64_t saturatingAdd(std::uint64_t a, std::uint64_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}

inline std::uint64_t saturatingMul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > kSaturated / b ? kSaturated : a * b;
}

class Alphabet {
 public:
  enum class Kind { Binary, Natural, Finite };

  static Alphabet binary() { return {Kind::Binary, 2}; }
  static Alphabet natural() { return {Kind::Natural, 0}; }
  static Alphabet finite(Symbol k) {
    if (k == 0) throw std::invalid_argument("Finite(k) requires k >= 1");
    return {Kind::Finite, k};
  }

  Kind kind() const { return kind_; }
  /// Number of symbols; 0 encodes "countably many".
  Symbol size() const { return size_; }
  bool admits(Symbol s) const { return kind_ == Kind::Natural || s < size_; }
  bool subsumes(const Alphabet& o) const {
    if (kind_ == Kind::Natural) return true;
    if (o.kind_ == Kind::Natural) return false;
    return o.size_ <= size_;
  }

  std::string toString() const {
    switch (kind_) {
      case Kind::Binary: return "bin";
      case Kind::Natural: return "nat";
      case Kind::Finite: return "finite:" + std::to_string(size_);
    }
    return "?";
  }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  Alphabet(Kind k, Symbol n) : kind_(k), size_(n) {}
  Kind kind_;
  Symbol size_;
};

/// Smallest alphabet admitting both (Natural subsumes everything).
inline Alphabet joinAlphabets(const Alphabet& a, const Alphabet& b) {
  if (a.subsumes(b)) return a;
  if (b.subsumes(a)) return b;
  return Alphabet::natural();
}

inline bool isPrefixOf(std::span<const Symbol> p, std::span<const Symbol> q) {
  if (p.size() > q.size()) return false;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != q[i]) return false;
  return true;
}

/// Shared step budget. Exhaustion is how divergence becomes observable.
class Fuel {
 public:
  explicit Fuel(std::uint64_t budget) : budget_(budget), remaining_(budget) {}

  bool spend(std::uint64_t n) {
    if (n > remaining_) {
      remaining_ = 0;
      exhausted_ = true;
      return false;
    }
    remaining_ -= n;
    return true;
  }
  bool exhausted() const { return exhausted_; }
  std::uint64_t budget() const { return budget_; }
  std::uint64_t remaining() const { return remaining_; }
  std::uint64_t used() const { return budget_ - remaining_; }

 private:
  std::uint64_t budget_;
  std::uint64_t remaining_;
  bool exhausted_ = false;
};

/// Default step budget: 10^6, overridable through ADVICE_KIT_FUEL.
inline std::uint64_t defaultFuel() {
  static const std::uint64_t value = [] {
    if (const char* env = std::getenv("ADVICE_KIT_FUEL")) {
      try {
        return static_cast<std::uint64_t>(std::stoull(env));
      } catch (const std::exception&) {
      }
    }
    return std::uint64_t{1'000'000};
  }();
  return value;
}

/// Output produced by one process transition.
struct Emission {
  std::vector<Symbol> symbols;
  std::uint64_t ticks = 0;

  void emit(Symbol s) { symbols.push_back(s); }
  void tick(std::uint64_t n = 1) { ticks = saturatingAdd(ticks, n); }
  std::uint64_t steps() const { return saturatingAdd(symbols.size(), ticks); }
  void clear() {
    symbols.clear();
    ticks = 0;
  }
};

class Process {
 public:
  virtual ~Process() = default;
  virtual void start(Emission&) {}
  virtual void feed(Symbol s, Emission& out) = 0;
  virtual std::unique_ptr<Process> clone() const = 0;
};

template <typename Derived>
class ProcessBase : public Process {
 public:
  std::unique_ptr<Process> clone() const override {
    return std::make_unique<Derived>(static_cast<const Derived&>(*this));
  }
};

class PrefixMachine {
 public:
  using Factory = std::function<std::unique_ptr<Process>()>;
  /// k -> number of input symbols that always suffice for k output symbols.
  using Lookahead = std::function<std::size_t(std::size_t)>;

  PrefixMachine(std::string id, Alphabet in, Alphabet out, Factory factory, std::optional<Lookahead> lookahead = {})
      : id_(std::move(id)), in_(in), out_(out), factory_(std::move(factory)), lookahead_(std::move(lookahead)) {}

  const std::string& id() const { return id_; }
  Alphabet inputAlphabet() const { return in_; }
  Alphabet outputAlphabet() const { return out_; }
  const std::optional<Lookahead>& declaredLookahead() const { return lookahead_; }

  std::unique_ptr<Process> spawn() const { return factory_(); }

  Prefix step(std::span<const Symbol> input) const { return evaluate(input).first; }

  std::uint64_t stepCount(std::span<const Symbol> input) const { return evaluate(input).second; }

  /// Output and step count on a finite input prefix.
  std::pair<Prefix, std::uint64_t> evaluate(std::span<const Symbol> input) const {
    auto proc = spawn();
    Emission em;
    proc->start(em);
    Prefix out = em.symbols;
    std::uint64_t steps = em.steps();
    for (Symbol s : input) {
      em.clear();
      proc->feed(s, em);
      out.insert(out.end(), em.symbols.begin(), em.symbols.end());
      steps = saturatingAdd(steps, saturatingAdd(1, em.steps()));
    }
    return {std::move(out), steps};
  }

 private:
  std::string id_;
  Alphabet in_, out_;
  Factory factory_;
  std::optional<Lookahead> lookahead_;
};

using MachinePtr = std::shared_ptr<const PrefixMachine>;

/// Process driven by plain callbacks over a copyable state.
template <typename State>
class CallbackProcess : public ProcessBase<CallbackProcess<State>> {
 public:
  using StartFn = std::function<void(State&, Emission&)>;
  using FeedFn = std::function<void(State&, Symbol, Emission&)>;

  CallbackProcess(State state, std::shared_ptr<const StartFn> start, std::shared_ptr<const FeedFn> feed)
      : state_(std::move(state)), start_(std::move(start)), feed_(std::move(feed)) {}

  void start(Emission& out) override {
    if (start_ && *start_) (*start_)(state_, out);
  }
  void feed(Symbol s, Emission& out) override { (*feed_)(state_, s, out); }

 private:
  State state_;
  std::shared_ptr<const StartFn> start_;
  std::shared_ptr<const FeedFn> feed_;
};

template <typename State>
MachinePtr callbackMachine(std::string id, Alphabet in, Alphabet out, State init,
                           typename CallbackProcess<State>::FeedFn feed,
                           typename CallbackProcess<State>::StartFn start = {},
                           std::optional<PrefixMachine::Lookahead> lookahead = {}) {
  auto feedPtr = std::make_shared<const typename CallbackProcess<State>::FeedFn>(std::move(feed));
  auto startPtr = std::make_shared<const typename CallbackProcess<State>::StartFn>(std::move(start));
  return std::make_shared<PrefixMachine>(
      std::move(id), in, out,
      [init = std::move(init), feedPtr, startPtr]() -> std::unique_ptr<Process> {
        return std::make_unique<CallbackProcess<State>>(init, startPtr, feedPtr);
      },
      std::move(lookahead));
}

template <typename ProcessT, typename... Args>
MachinePtr processMachine(std::string id, Alphabet in, Alphabet out, std::optional<PrefixMachine::Lookahead> lookahead,
                          Args... args) {
  return std::make_shared<PrefixMachine>(
      std::move(id), in, out, [args...]() -> std::unique_ptr<Process> { return std::make_unique<ProcessT>(args...); },
      std::move(lookahead));
}

namespace detail {

class ComposedProcess : public Process {
 public:
  ComposedProcess(std::unique_ptr<Process> outer, std::unique_ptr<Process> inner)
      : outer_(std::move(outer)), inner_(std::move(inner)) {}

  std::unique_ptr<Process> clone() const override {
    return std::make_unique<ComposedProcess>(outer_->clone(), inner_->clone());
  }

  void start(Emission& out) override {
    outer_->start(out);
    Emission mid;
    inner_->start(mid);
    forward(mid, out);
  }

  void feed(Symbol s, Emission& out) override {
    Emission mid;
    inner_->feed(s, mid);
    forward(mid, out);
  }

 private:
  // Inner writes and inner ticks are charged to the composite, then each
  // intermediate symbol costs the outer process one read.
  void forward(const Emission& mid, Emission& out) {
    out.tick(mid.ticks);
    out.tick(mid.symbols.size());
    for (Symbol t : mid.symbols) {
      out.tick(1);
      outer_->feed(t, out);
    }
  }

  std::unique_ptr<Process> outer_;
  std::unique_ptr<Process> inner_;
};

}  // namespace detail

/// outer after inner, at the prefix level. Steps add up exactly: no glue cost.
inline MachinePtr composeMachines(MachinePtr outer, MachinePtr inner) {
  std::optional<PrefixMachine::Lookahead> lookahead;
  if (outer->declaredLookahead() && inner->declaredLookahead()) {
    lookahead = [lo = *outer->declaredLookahead(), li = *inner->declaredLookahead()](std::size_t k) {
      return li(lo(k));
    };
  }
  std::string id = outer->id() + "∘" + inner->id();
  return std::make_shared<PrefixMachine>(
      std::move(id), inner->inputAlphabet(), outer->outputAlphabet(),
      [outer, inner]() -> std::unique_ptr<Process> {
        return std::make_unique<detail::ComposedProcess>(outer->spawn(), inner->spawn());
      },
      std::move(lookahead));
}

// Elementary machines.

inline MachinePtr identityMachine(Alphabet a = Alphabet::binary()) {
  return callbackMachine<int>(
      "identity", a, a, 0, [](int&, Symbol s, Emission& out) { out.emit(s); }, {},
      [](std::size_t k) { return k; });
}

inline MachinePtr bitflipMachine() {
  return callbackMachine<int>(
      "bitflip", Alphabet::binary(), Alphabet::binary(), 0,
      [](int&, Symbol s, Emission& out) { out.emit(s == 0 ? 1 : 0); }, {}, [](std::size_t k) { return k; });
}

/// Reads forever, never writes: its domain is empty.
inline MachinePtr silentMachine(Alphabet a = Alphabet::binary()) {
  return callbackMachine<int>("silent", a, a, 0, [](int&, Symbol, Emission&) {});
}

/// Output symbol i is input symbol floor(i/2).
inline MachinePtr bitDoublingMachine() {
  return callbackMachine<int>(
      "bit-doubling", Alphabet::binary(), Alphabet::binary(), 0,
      [](int&, Symbol s, Emission& out) {
        out.emit(s);
        out.emit(s);
      },
      {}, [](std::size_t k) { return (k + 1) / 2; });
}

/// Copies its input but declares 2^(2^k) internal ticks before writing bit k
/// (1-based, saturating). Deliberately slow; used to exhibit super-polynomial
/// step counts.
inline MachinePtr paddedDelayMachine() {
  return callbackMachine<std::size_t>(
      "padded-delay", Alphabet::binary(), Alphabet::binary(), 0,
      [](std::size_t& written, Symbol s, Emission& out) {
        std::size_t k = written + 1;
        std::uint64_t ticks = k >= 6 ? kSaturated : (std::uint64_t{1} << (std::uint64_t{1} << k));
        out.tick(ticks);
        out.emit(s);
        ++written;
      });
}

}  // namespace advice_kit
