#pragma once

// Infinite names with finite descriptions, sequential cursors over them, and
// the evaluation semantics of prefix machines on names.

#include "advice_kit/machine.hpp"

#include <numeric>
#include <sstream>
#include <variant>

namespace advice_kit {

class Name {
 public:
  struct Periodic {
    Prefix prefix;
    Prefix period;
  };
  struct Generated {
    MachinePtr machine;
    std::shared_ptr<const Name> input;
  };
  /// k-fold interleaving: symbol k*i + j is symbol i of component j.
  struct Tuple {
    std::vector<Name> components;
  };
  using Source = std::variant<Periodic, Generated, Tuple>;

  static Name periodic(Alphabet alphabet, Prefix prefix, Prefix period) {
    if (period.empty()) throw std::invalid_argument("eventually periodic name needs a non-empty period");
    for (Symbol s : prefix)
      if (!alphabet.admits(s)) throw std::invalid_argument("symbol outside the name's alphabet");
    for (Symbol s : period)
      if (!alphabet.admits(s)) throw std::invalid_argument("symbol outside the name's alphabet");
    return Name(alphabet, Periodic{std::move(prefix), std::move(period)});
  }

  static Name constant(Alphabet alphabet, Symbol s) { return periodic(alphabet, {}, {s}); }
  static Name zeros(Alphabet alphabet = Alphabet::binary()) { return constant(alphabet, 0); }

  static Name generated(MachinePtr machine, Name input) {
    Alphabet a = machine->outputAlphabet();
    return Name(a, Generated{std::move(machine), std::make_shared<const Name>(std::move(input))});
  }

  static Name tuple(std::vector<Name> components) {
    if (components.empty()) throw std::invalid_argument("empty tuple of names");
    Alphabet a = components.front().alphabet();
    for (const auto& c : components) a = joinAlphabets(a, c.alphabet());
    return Name(a, Tuple{std::move(components)});
  }

  Alphabet alphabet() const { return impl_->alphabet; }
  const Source& source() const { return impl_->source; }
  bool isPeriodic() const { return std::holds_alternative<Periodic>(impl_->source); }
  const Periodic* asPeriodic() const { return std::get_if<Periodic>(&impl_->source); }
  const Generated* asGenerated() const { return std::get_if<Generated>(&impl_->source); }
  const Tuple* asTuple() const { return std::get_if<Tuple>(&impl_->source); }

  /// Direct symbol access for eventually periodic names.
  Symbol periodicAt(std::size_t i) const {
    const auto& p = std::get<Periodic>(impl_->source);
    if (i < p.prefix.size()) return p.prefix[i];
    return p.period[(i - p.prefix.size()) % p.period.size()];
  }

  std::optional<Prefix> prefix(std::size_t n, Fuel& fuel) const;
  std::optional<Prefix> prefix(std::size_t n) const {
    Fuel fuel(defaultFuel());
    return prefix(n, fuel);
  }
  std::optional<Symbol> at(std::size_t i, Fuel& fuel) const {
    auto p = prefix(i + 1, fuel);
    if (!p) return std::nullopt;
    return p->back();
  }

  /// Name literal (`alphabet:bin;prefix:...;period:...`) for periodic names.
  std::string literal() const {
    const auto* p = asPeriodic();
    if (!p) return "<generated>";
    auto join = [](const Prefix& xs) {
      std::ostringstream os;
      for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
      return os.str();
    };
    std::string a = alphabet().kind() == Alphabet::Kind::Binary ? "bin" : "nat";
    return "alphabet:" + a + ";prefix:" + join(p->prefix) + ";period:" + join(p->period);
  }

 private:
  struct Impl {
    Alphabet alphabet;
    Source source;
  };
  Name(Alphabet a, Source s) : impl_(std::make_shared<const Impl>(Impl{a, std::move(s)})) {}
  std::shared_ptr<const Impl> impl_;
};

/// Sequential reader of a name. Generated names are produced lazily by
/// running their machine; every read, write and tick is charged to the fuel.
class NameCursor {
 public:
  explicit NameCursor(const Name& name) : name_(name) {
    if (const auto* g = name.asGenerated()) {
      process_ = g->machine->spawn();
      input_ = std::make_unique<NameCursor>(*g->input);
    } else if (const auto* t = name.asTuple()) {
      for (const auto& c : t->components) parts_.emplace_back(c);
    }
  }

  NameCursor(NameCursor&&) noexcept = default;
  NameCursor& operator=(NameCursor&&) noexcept = default;

  std::size_t position() const { return pos_; }

  std::optional<Symbol> next(Fuel& fuel) {
    if (name_.isPeriodic()) {
      if (!fuel.spend(1)) return std::nullopt;
      return name_.periodicAt(pos_++);
    }
    if (!parts_.empty()) {
      auto s = parts_[pos_ % parts_.size()].next(fuel);
      if (s) ++pos_;
      return s;
    }
    while (pendingIndex_ >= pending_.symbols.size()) {
      pending_.clear();
      pendingIndex_ = 0;
      if (!started_) {
        started_ = true;
        process_->start(pending_);
      } else {
        auto s = input_->next(fuel);
        if (!s) return std::nullopt;
        if (!fuel.spend(1)) return std::nullopt;
        process_->feed(*s, pending_);
      }
      if (!fuel.spend(pending_.steps())) return std::nullopt;
    }
    ++pos_;
    return pending_.symbols[pendingIndex_++];
  }

  std::optional<Prefix> take(std::size_t n, Fuel& fuel) {
    Prefix out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto s = next(fuel);
      if (!s) return std::nullopt;
      out.push_back(*s);
    }
    return out;
  }

 private:
  Name name_;
  std::size_t pos_ = 0;
  std::unique_ptr<Process> process_;
  std::unique_ptr<NameCursor> input_;
  bool started_ = false;
  Emission pending_;
  std::size_t pendingIndex_ = 0;
  std::vector<NameCursor> parts_;
};

inline std::optional<Prefix> Name::prefix(std::size_t n, Fuel& fuel) const {
  if (const auto* p = asPeriodic()) {
    if (!fuel.spend(n)) return std::nullopt;
    Prefix out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = periodicAt(i);
    (void)p;
    return out;
  }
  NameCursor cursor(*this);
  return cursor.take(n, fuel);
}

/// Outcome of running a machine. `diverged` conflates "needs more fuel" and
/// "input outside the domain"; the two are indistinguishable in finite time.
struct RunResult {
  Prefix output;
  std::uint64_t steps = 0;      // the machine's own reads, writes and ticks
  std::size_t consumed = 0;     // input symbols read
  bool diverged = false;

  explicit operator bool() const { return !diverged; }
};

/// Feeds increasing prefixes of x until at least k output symbols exist.
inline RunResult runMachine(const PrefixMachine& m, const Name& x, std::size_t k, Fuel& fuel) {
  RunResult r;
  auto proc = m.spawn();
  Emission em;
  proc->start(em);
  r.steps = em.steps();
  if (!fuel.spend(em.steps())) {
    r.diverged = true;
    return r;
  }
  r.output = em.symbols;
  NameCursor in(x);
  while (r.output.size() < k) {
    auto s = in.next(fuel);
    if (!s || !fuel.spend(1)) {
      r.diverged = true;
      return r;
    }
    ++r.consumed;
    em.clear();
    proc->feed(*s, em);
    r.steps = saturatingAdd(r.steps, saturatingAdd(1, em.steps()));
    if (!fuel.spend(em.steps())) {
      r.diverged = true;
      return r;
    }
    r.output.insert(r.output.end(), em.symbols.begin(), em.symbols.end());
  }
  return r;
}

inline RunResult runMachine(const PrefixMachine& m, const Name& x, std::size_t k, std::uint64_t fuelBudget) {
  Fuel fuel(fuelBudget);
  return runMachine(m, x, k, fuel);
}

inline RunResult runMachine(const MachinePtr& m, const Name& x, std::size_t k, std::uint64_t fuelBudget) {
  return runMachine(*m, x, k, fuelBudget);
}

// Pairing and tupling.

namespace detail {

inline std::size_t lcmSize(std::size_t a, std::size_t b) { return a / std::gcd(a, b) * b; }

}  // namespace detail

/// ⟨p_0, ..., p_{k-1}⟩ with symbol k*i + j = p_j(i). Eventually periodic
/// components give an eventually periodic result.
inline Name tupleNames(const std::vector<Name>& parts) {
  if (parts.empty()) throw std::invalid_argument("empty tuple of names");
  bool allPeriodic = true;
  std::size_t pre = 0, per = 1;
  for (const auto& p : parts) {
    const auto* pp = p.asPeriodic();
    if (!pp) {
      allPeriodic = false;
      break;
    }
    pre = std::max(pre, pp->prefix.size());
    per = detail::lcmSize(per, pp->period.size());
    if (per > 4096) {
      allPeriodic = false;
      break;
    }
  }
  if (!allPeriodic) return Name::tuple(parts);
  Alphabet a = parts.front().alphabet();
  for (const auto& p : parts) a = joinAlphabets(a, p.alphabet());
  Prefix prefix, period;
  for (std::size_t i = 0; i < pre; ++i)
    for (const auto& p : parts) prefix.push_back(p.periodicAt(i));
  for (std::size_t i = pre; i < pre + per; ++i)
    for (const auto& p : parts) period.push_back(p.periodicAt(i));
  return Name::periodic(a, std::move(prefix), std::move(period));
}

inline Name pairNames(const Name& p, const Name& q) { return tupleNames({p, q}); }

/// Component j of a k-tuple, symbol by symbol.
inline MachinePtr projectionMachine(std::size_t k, std::size_t j, Alphabet a = Alphabet::natural()) {
  if (j >= k) throw std::invalid_argument("projection index out of range");
  return callbackMachine<std::size_t>(
      "π" + std::to_string(j + 1) + "/" + std::to_string(k), a, a, 0,
      [k, j](std::size_t& index, Symbol s, Emission& out) {
        if (index % k == j) out.emit(s);
        ++index;
      },
      {}, [k, j](std::size_t n) { return n == 0 ? 0 : k * (n - 1) + j + 1; });
}

inline MachinePtr firstProjection(Alphabet a = Alphabet::natural()) { return projectionMachine(2, 0, a); }
inline MachinePtr secondProjection(Alphabet a = Alphabet::natural()) { return projectionMachine(2, 1, a); }

/// Component j of a tuple name, without running a machine when the
/// description allows it.
inline Name projectName(const Name& x, std::size_t k, std::size_t j) {
  if (const auto* t = x.asTuple(); t && t->components.size() == k) return t->components[j];
  if (const auto* p = x.asPeriodic()) {
    // Symbols of component j sit at k*i + j.
    std::size_t pre = (p->prefix.size() + k - 1) / k;
    std::size_t per = detail::lcmSize(p->period.size(), k) / k;
    Prefix prefix, period;
    for (std::size_t i = 0; i < pre; ++i) prefix.push_back(x.periodicAt(k * i + j));
    for (std::size_t i = pre; i < pre + per; ++i) period.push_back(x.periodicAt(k * i + j));
    return Name::periodic(x.alphabet(), std::move(prefix), std::move(period));
  }
  return Name::generated(projectionMachine(k, j, x.alphabet()), x);
}

inline std::pair<Name, Name> unpairName(const Name& x) { return {projectName(x, 2, 0), projectName(x, 2, 1)}; }

namespace detail {

class TupleMachinesProcess : public Process {
 public:
  explicit TupleMachinesProcess(std::vector<std::unique_ptr<Process>> parts)
      : parts_(std::move(parts)), pending_(parts_.size()) {}

  std::unique_ptr<Process> clone() const override {
    std::vector<std::unique_ptr<Process>> copies;
    for (const auto& p : parts_) copies.push_back(p->clone());
    auto c = std::make_unique<TupleMachinesProcess>(std::move(copies));
    c->pending_ = pending_;
    return c;
  }

  void start(Emission& out) override {
    for (std::size_t j = 0; j < parts_.size(); ++j) {
      Emission e;
      parts_[j]->start(e);
      out.tick(e.steps());
      pending_[j].insert(pending_[j].end(), e.symbols.begin(), e.symbols.end());
    }
    flush(out);
  }

  void feed(Symbol s, Emission& out) override {
    for (std::size_t j = 0; j < parts_.size(); ++j) {
      Emission e;
      parts_[j]->feed(s, e);
      out.tick(saturatingAdd(1, e.steps()));
      pending_[j].insert(pending_[j].end(), e.symbols.begin(), e.symbols.end());
    }
    out.tick(parts_.size() > 0 ? parts_.size() - 1 : 0);
    flush(out);
  }

 private:
  void flush(Emission& out) {
    for (;;) {
      for (const auto& q : pending_)
        if (q.empty()) return;
      for (auto& q : pending_) {
        out.emit(q.front());
        q.erase(q.begin());
      }
    }
  }

  std::vector<std::unique_ptr<Process>> parts_;
  std::vector<std::vector<Symbol>> pending_;
};

}  // namespace detail

/// p ↦ ⟨m_0(p), ..., m_{k-1}(p)⟩.
inline MachinePtr tupleMachines(std::vector<MachinePtr> parts) {
  std::string id = "⟨";
  for (std::size_t i = 0; i < parts.size(); ++i) id += (i ? "," : "") + parts[i]->id();
  id += "⟩";
  Alphabet out = parts.front()->outputAlphabet();
  for (const auto& p : parts) out = joinAlphabets(out, p->outputAlphabet());
  return std::make_shared<PrefixMachine>(std::move(id), parts.front()->inputAlphabet(), out,
                                         [parts]() -> std::unique_ptr<Process> {
                                           std::vector<std::unique_ptr<Process>> procs;
                                           for (const auto& p : parts) procs.push_back(p->spawn());
                                           return std::make_unique<detail::TupleMachinesProcess>(std::move(procs));
                                         });
}

inline MachinePtr pairMachines(MachinePtr a, MachinePtr b) { return tupleMachines({std::move(a), std::move(b)}); }

/// Runs `m` on a constant input: names produced this way depend only on the machine.
inline Name sourceName(MachinePtr m) { return Name::generated(std::move(m), Name::zeros()); }

}  // namespace advice_kit
