#pragma once

// Signed-digit names for reals, binary names for the unit interval, and
// machines computing real functions from interval enclosures.
//
// Layout of a signed-digit name: sign bit (0: e >= 0), |e| ones, a 0
// terminator, then digits d_i in {-1,0,1} stored as symbols d_i + 1.
// The named value is 2^e * sum_i d_i 2^-i.

#include "advice_kit/interval.hpp"
#include "advice_kit/name.hpp"

#include <map>

namespace advice_kit {

struct MalformedName : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Alphabet signedAlphabet() { return Alphabet::finite(3); }

inline Prefix exponentHeader(long e) {
  Prefix h{static_cast<Symbol>(e < 0 ? 1 : 0)};
  h.insert(h.end(), static_cast<std::size_t>(e < 0 ? -e : e), 1);
  h.push_back(0);
  return h;
}

/// Incremental parser of a signed-digit name.
class SignedDecoder {
 public:
  void feed(Symbol s) {
    switch (phase_) {
      case Phase::Sign:
        if (s > 1) throw MalformedName("exponent sign must be 0 or 1");
        negative_ = s == 1;
        phase_ = Phase::Magnitude;
        return;
      case Phase::Magnitude:
        if (s > 1) throw MalformedName("exponent magnitude must be unary over {0,1}");
        if (s == 1) {
          ++magnitude_;
        } else {
          phase_ = Phase::Digits;
        }
        return;
      case Phase::Digits:
        if (s > 2) throw MalformedName("signed digit outside {-1,0,1}");
        numerator_ = 2 * numerator_ + (static_cast<long>(s) - 1);
        ++digits_;
        return;
    }
  }

  bool headerComplete() const { return phase_ == Phase::Digits; }
  long exponent() const { return negative_ ? -magnitude_ : magnitude_; }
  std::size_t digits() const { return digits_; }
  const Integer& numerator() const { return numerator_; }

  /// Tightest interval containing every completion; nullopt before the header ends.
  std::optional<Interval> interval() const {
    if (!headerComplete()) return std::nullopt;
    Rational scale = pow2(exponent() - static_cast<long>(digits_));
    return Interval(Rational(numerator_ - 1) * scale, Rational(numerator_ + 1) * scale);
  }

 private:
  enum class Phase { Sign, Magnitude, Digits };
  Phase phase_ = Phase::Sign;
  bool negative_ = false;
  long magnitude_ = 0;
  Integer numerator_ = 0;
  std::size_t digits_ = 0;
};

/// Interval named by a finite signed-digit prefix; nullopt while the header is incomplete.
inline std::optional<Interval> decodeRealPrefix(std::span<const Symbol> p) {
  SignedDecoder d;
  for (Symbol s : p) d.feed(s);
  return d.interval();
}

/// Binary expansion of a point of [0,1]: after n bits the point lies in [N/2^n, (N+1)/2^n].
class BinaryDecoder {
 public:
  void feed(Symbol s) {
    if (s > 1) throw MalformedName("binary name symbol outside {0,1}");
    numerator_ = 2 * numerator_ + static_cast<long>(s);
    ++bits_;
  }
  std::size_t bits() const { return bits_; }
  Interval interval() const {
    Rational scale = pow2(-static_cast<long>(bits_));
    return {Rational(numerator_) * scale, Rational(numerator_ + 1) * scale};
  }

 private:
  Integer numerator_ = 0;
  std::size_t bits_ = 0;
};

/// Stage intervals of the fat Cantor set: from each stage-d interval a
/// centred open gap of length 4^-(d+1) is removed at stage d+1.
class FatCantorDecoder {
 public:
  void feed(Symbol s) {
    if (s > 1) throw MalformedName("Cantor name symbol outside {0,1}");
    Rational half = pow2(-2 * static_cast<long>(depth_ + 1) - 1);
    Rational mid = (lo_ + hi_) / 2;
    if (s == 0) {
      hi_ = mid - half;
    } else {
      lo_ = mid + half;
    }
    ++depth_;
  }
  std::size_t depth() const { return depth_; }
  Interval interval() const { return {lo_, hi_}; }

 private:
  Rational lo_ = 0, hi_ = 1;
  std::size_t depth_ = 0;
};

inline Interval fatCantorInterval(std::span<const Symbol> word) {
  FatCantorDecoder d;
  for (Symbol s : word) d.feed(s);
  return d.interval();
}

/// Produces signed digits for a fixed exponent from a stream of enclosures.
class DigitEmitter {
 public:
  explicit DigitEmitter(long exponent = 0) : exponent_(exponent), scale_(pow2(-exponent)) {}

  long exponent() const { return exponent_; }
  std::size_t digits() const { return digits_; }

  /// Current named interval (absolute coordinates).
  Interval interval() const {
    Rational s = pow2(exponent_ - static_cast<long>(digits_));
    return {Rational(numerator_ - 1) * s, Rational(numerator_ + 1) * s};
  }

  /// Appends every digit the enclosure justifies, at most `cap` of them.
  void absorb(const Interval& enclosure, Prefix& out, std::size_t cap = 4) {
    auto clipped = enclosure.intersect(interval());
    if (!clipped) return;  // inconsistent enclosure; emit nothing
    Interval v = scale_ * *clipped;
    for (std::size_t emitted = 0; emitted < cap; ++emitted) {
      Rational unit = pow2(static_cast<long>(digits_) + 1);
      Rational a = v.lo() * unit - Rational(2 * numerator_);
      Rational b = v.hi() * unit - Rational(2 * numerator_);
      int d;
      if (a >= -1 && b <= 1) {
        d = 0;
      } else if (a >= 0 && b <= 2) {
        d = 1;
      } else if (a >= -2 && b <= 0) {
        d = -1;
      } else {
        return;
      }
      numerator_ = 2 * numerator_ + d;
      ++digits_;
      out.push_back(static_cast<Symbol>(d + 1));
    }
  }

 private:
  long exponent_;
  Rational scale_;
  Integer numerator_ = 0;
  std::size_t digits_ = 0;
};

/// Shape of a machine input: nested tuples whose leaves are decoded independently.
struct Layout {
  enum class Kind { Tuple, SignedReal, UnitBinary, FatCantor, Raw };
  Kind kind = Kind::Raw;
  std::vector<Layout> children;

  static Layout signedReal() { return {Kind::SignedReal, {}}; }
  static Layout unitBinary() { return {Kind::UnitBinary, {}}; }
  static Layout fatCantor() { return {Kind::FatCantor, {}}; }
  static Layout raw() { return {Kind::Raw, {}}; }
  static Layout tuple(std::vector<Layout> c) { return {Kind::Tuple, std::move(c)}; }
  static Layout repeat(const Layout& leaf, std::size_t k) { return tuple(std::vector<Layout>(k, leaf)); }

  std::size_t leafCount() const {
    if (kind != Kind::Tuple) return 1;
    std::size_t n = 0;
    for (const auto& c : children) n += c.leafCount();
    return n;
  }

  void collectLeaves(std::vector<Kind>& out) const {
    if (kind != Kind::Tuple) {
      out.push_back(kind);
      return;
    }
    for (const auto& c : children) c.collectLeaves(out);
  }
};

/// Decoding state of every leaf of a layout.
class LeafReader {
 public:
  explicit LeafReader(const Layout& layout) : layout_(std::make_shared<const Layout>(layout)) {
    layout.collectLeaves(kinds_);
    leaves_.resize(kinds_.size());
  }

  void feed(Symbol s) {
    std::size_t leaf = route(index_++);
    auto& st = leaves_[leaf];
    ++st.count;
    switch (kinds_[leaf]) {
      case Layout::Kind::SignedReal: st.sd.feed(s); break;
      case Layout::Kind::UnitBinary: st.bd.feed(s); break;
      case Layout::Kind::FatCantor: st.fd.feed(s); break;
      default: st.raw.push_back(s); break;
    }
  }

  std::size_t leafCount() const { return kinds_.size(); }
  std::size_t symbolsRead() const { return index_; }
  std::size_t count(std::size_t leaf) const { return leaves_[leaf].count; }

  std::optional<Interval> interval(std::size_t leaf) const {
    const auto& st = leaves_[leaf];
    switch (kinds_[leaf]) {
      case Layout::Kind::SignedReal: return st.sd.interval();
      case Layout::Kind::UnitBinary: return st.bd.interval();
      case Layout::Kind::FatCantor: return st.fd.interval();
      default: return std::nullopt;
    }
  }

  /// Exponent bound of a leaf: |value| <= 2^e once known.
  std::optional<long> exponent(std::size_t leaf) const {
    const auto& st = leaves_[leaf];
    if (kinds_[leaf] == Layout::Kind::SignedReal) {
      if (!st.sd.headerComplete()) return std::nullopt;
      return st.sd.exponent();
    }
    if (kinds_[leaf] == Layout::Kind::Raw) return std::nullopt;
    return 0;
  }

  /// Digits (or bits) read so far for real leaves.
  std::size_t precision(std::size_t leaf) const {
    const auto& st = leaves_[leaf];
    switch (kinds_[leaf]) {
      case Layout::Kind::SignedReal: return st.sd.digits();
      case Layout::Kind::UnitBinary: return st.bd.bits();
      case Layout::Kind::FatCantor: return st.fd.depth();
      default: return st.raw.size();
    }
  }

  const Prefix& raw(std::size_t leaf) const { return leaves_[leaf].raw; }

  /// All leaf intervals, or nullopt while some real header is incomplete.
  std::optional<std::vector<Interval>> intervals() const {
    std::vector<Interval> out;
    for (std::size_t i = 0; i < kinds_.size(); ++i) {
      if (kinds_[i] == Layout::Kind::Raw) continue;
      auto iv = interval(i);
      if (!iv) return std::nullopt;
      out.push_back(*iv);
    }
    return out;
  }

  std::optional<std::vector<long>> exponents() const {
    std::vector<long> out;
    for (std::size_t i = 0; i < kinds_.size(); ++i) {
      if (kinds_[i] == Layout::Kind::Raw) continue;
      auto e = exponent(i);
      if (!e) return std::nullopt;
      out.push_back(*e);
    }
    return out;
  }

  std::size_t minPrecision() const {
    std::size_t m = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 0; i < kinds_.size(); ++i)
      if (kinds_[i] != Layout::Kind::Raw) m = std::min(m, precision(i));
    return m == std::numeric_limits<std::size_t>::max() ? 0 : m;
  }

 private:
  std::size_t route(std::size_t index) const {
    const Layout* node = layout_.get();
    std::size_t offset = 0;
    while (node->kind == Layout::Kind::Tuple) {
      std::size_t k = node->children.size();
      std::size_t j = index % k;
      index /= k;
      for (std::size_t c = 0; c < j; ++c) offset += node->children[c].leafCount();
      node = &node->children[j];
    }
    return offset;
  }

  struct LeafState {
    SignedDecoder sd;
    BinaryDecoder bd;
    FatCantorDecoder fd;
    Prefix raw;
    std::size_t count = 0;
  };

  std::shared_ptr<const Layout> layout_;
  std::vector<Layout::Kind> kinds_;
  std::vector<LeafState> leaves_;
  std::size_t index_ = 0;
};

/// Specification of a real-valued (vector) function for `realFunctionMachine`.
struct RealFunction {
  std::string id;
  Layout input;
  std::size_t outputs = 1;
  /// Output exponents once enough of the input is known.
  std::function<std::optional<std::vector<long>>(const LeafReader&)> exponents;
  /// Output enclosures from the current input information; `bits` is a
  /// precision hint for sources that compute enclosures on demand.
  std::function<std::optional<std::vector<Interval>>(const LeafReader&, std::size_t bits)> enclose;
  std::size_t digitsPerStep = 4;
};

namespace detail {

class RealFunctionProcess : public ProcessBase<RealFunctionProcess> {
 public:
  explicit RealFunctionProcess(std::shared_ptr<const RealFunction> f)
      : f_(std::move(f)), reader_(f_->input), queues_(f_->outputs) {}

  void start(Emission& out) override { advance(out); }

  void feed(Symbol s, Emission& out) override {
    reader_.feed(s);
    advance(out);
  }

 private:
  void advance(Emission& out) {
    if (emitters_.empty()) {
      auto es = f_->exponents(reader_);
      if (!es) return;
      out.tick();
      for (std::size_t o = 0; o < f_->outputs; ++o) {
        emitters_.emplace_back((*es)[o]);
        auto h = exponentHeader((*es)[o]);
        queues_[o].insert(queues_[o].end(), h.begin(), h.end());
      }
    }
    std::size_t done = emitters_.front().digits();
    for (const auto& e : emitters_) done = std::min(done, e.digits());
    auto encl = f_->enclose(reader_, done + 4);
    out.tick();
    if (encl) {
      for (std::size_t o = 0; o < f_->outputs; ++o) emitters_[o].absorb((*encl)[o], queues_[o], f_->digitsPerStep);
    }
    flush(out);
  }

  void flush(Emission& out) {
    for (;;) {
      for (const auto& q : queues_)
        if (head_ >= q.size()) return compact();
      for (const auto& q : queues_) out.emit(q[head_]);
      ++head_;
    }
  }

  void compact() {
    if (head_ < 64) return;
    for (auto& q : queues_) q.erase(q.begin(), q.begin() + static_cast<long>(head_));
    head_ = 0;
  }

  std::shared_ptr<const RealFunction> f_;
  LeafReader reader_;
  std::vector<DigitEmitter> emitters_;
  std::vector<Prefix> queues_;
  std::size_t head_ = 0;
};

}  // namespace detail

/// Machine emitting the signed-digit names (interleaved if several) of f's outputs.
inline MachinePtr realFunctionMachine(RealFunction f, std::optional<PrefixMachine::Lookahead> lookahead = {}) {
  auto shared = std::make_shared<const RealFunction>(std::move(f));
  return std::make_shared<PrefixMachine>(
      shared->id, Alphabet::natural(), signedAlphabet(),
      [shared]() -> std::unique_ptr<Process> { return std::make_unique<detail::RealFunctionProcess>(shared); },
      std::move(lookahead));
}

/// Name of a computable real given by enclosures of width <= 2^-bits and a bound |x| <= 2^exponent.
inline Name computableRealName(std::string id, long exponent, std::function<Interval(std::size_t bits)> enclose) {
  RealFunction f;
  f.id = std::move(id);
  f.input = Layout::raw();
  f.exponents = [exponent](const LeafReader&) { return std::vector<long>{exponent}; };
  f.enclose = [enclose = std::move(enclose), exponent](const LeafReader&, std::size_t bits) {
    return std::vector<Interval>{enclose(bits + static_cast<std::size_t>(std::max(0L, exponent)) + 2)};
  };
  return sourceName(realFunctionMachine(std::move(f)));
}

/// Several computable reals as one interleaved name (vectors, matrices).
inline Name computableVectorName(std::string id, std::vector<long> exponents,
                                 std::function<std::vector<Interval>(std::size_t bits)> enclose) {
  RealFunction f;
  f.id = std::move(id);
  f.input = Layout::raw();
  f.outputs = exponents.size();
  long maxE = 0;
  for (long e : exponents) maxE = std::max(maxE, e);
  f.exponents = [exponents](const LeafReader&) { return exponents; };
  f.enclose = [enclose = std::move(enclose), maxE](const LeafReader&, std::size_t bits) {
    return std::optional<std::vector<Interval>>(enclose(bits + static_cast<std::size_t>(maxE) + 2));
  };
  return sourceName(realFunctionMachine(std::move(f)));
}

/// Least e >= 0 with |q| <= 2^e.
inline long exponentBound(const Rational& q) {
  Rational a = abs(q);
  long e = 0;
  while (a > pow2(e)) ++e;
  return e;
}

inline long exponentBound(const Interval& iv) { return std::max(exponentBound(iv.lo()), exponentBound(iv.hi())); }

/// Total signed-digit name of q: minimal exponent, greedy digits, eventually
/// periodic whenever the digit cycle is short enough to store.
inline Name encodeRational(const Rational& q) {
  long e = exponentBound(q);
  Rational r = q / pow2(e);
  Prefix digits;
  std::map<Rational, std::size_t> seen;
  const Rational half(1, 2);
  constexpr std::size_t kMaxCycle = 4096;
  while (digits.size() < kMaxCycle) {
    if (auto it = seen.find(r); it != seen.end()) {
      Prefix prefix = exponentHeader(e);
      prefix.insert(prefix.end(), digits.begin(), digits.begin() + static_cast<long>(it->second));
      Prefix period(digits.begin() + static_cast<long>(it->second), digits.end());
      return Name::periodic(signedAlphabet(), std::move(prefix), std::move(period));
    }
    seen.emplace(r, digits.size());
    Rational twice = 2 * r;
    int d = twice > half ? 1 : (twice < -half ? -1 : 0);
    digits.push_back(static_cast<Symbol>(d + 1));
    r = twice - d;
  }
  return computableRealName("rational " + q.get_str(), e, [q](std::size_t) { return Interval(q); });
}

/// Enclosure of a real name's value from its first `symbols` symbols.
inline std::optional<Interval> realEnclosure(const Name& x, std::size_t symbols, Fuel& fuel) {
  auto p = x.prefix(symbols, fuel);
  if (!p) return std::nullopt;
  return decodeRealPrefix(*p);
}

/// ρ₂-names of [0,1] to signed-digit names; output digit i needs input bit i.
inline MachinePtr translateBinaryToSignedMachine() {
  RealFunction f;
  f.id = "rho2-to-rho";
  f.input = Layout::unitBinary();
  f.exponents = [](const LeafReader&) { return std::vector<long>{0}; };
  f.enclose = [](const LeafReader& r, std::size_t) { return std::vector<Interval>{*r.interval(0)}; };
  return realFunctionMachine(std::move(f), [](std::size_t k) { return k > 2 ? k - 2 : std::size_t{0}; });
}

inline Name translateBinaryToSigned(const Name& b) { return Name::generated(translateBinaryToSignedMachine(), b); }

/// Signed-digit name of the point of the fat Cantor set addressed by a Cantor name.
inline MachinePtr phiInverseMachine() {
  RealFunction f;
  f.id = "phi-inverse";
  f.input = Layout::fatCantor();
  f.exponents = [](const LeafReader&) { return std::vector<long>{0}; };
  f.enclose = [](const LeafReader& r, std::size_t) { return std::vector<Interval>{*r.interval(0)}; };
  return realFunctionMachine(std::move(f));
}

inline Name phiInverseName(const Name& c) { return Name::generated(phiInverseMachine(), c); }

namespace detail {

/// Reads a signed-digit name of a point of the fat Cantor set and emits its address bits.
class PhiForwardProcess : public ProcessBase<PhiForwardProcess> {
 public:
  void feed(Symbol s, Emission& out) override {
    decoder_.feed(s);
    auto iv = decoder_.interval();
    if (!iv) return;
    out.tick();
    for (;;) {
      FatCantorDecoder left = stage_, right = stage_;
      left.feed(0);
      right.feed(1);
      if (iv->hi() < right.interval().lo()) {
        stage_ = left;
        out.emit(0);
      } else if (iv->lo() > left.interval().hi()) {
        stage_ = right;
        out.emit(1);
      } else {
        return;
      }
    }
  }

 private:
  SignedDecoder decoder_;
  FatCantorDecoder stage_;
};

}  // namespace detail

/// φ: Q -> Cantor space, the inverse of `phiInverseName` on the fat Cantor set.
inline MachinePtr phiForwardMachine() {
  return std::make_shared<PrefixMachine>("phi-forward", signedAlphabet(), Alphabet::binary(),
                                         [] { return std::make_unique<detail::PhiForwardProcess>(); });
}

}  // namespace advice_kit
