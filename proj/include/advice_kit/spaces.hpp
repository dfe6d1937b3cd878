#pragma once

// Represented spaces and hyperspaces of open/closed sets.
//
// Open-set names enumerate basic open sets. Each entry is either the pad
// symbol 0 or a word [L+1, s_1, ..., s_L]:
//   Cantor/Baire:  s is the finite word of a cylinder;
//   Nat/Finite:    L = 1 and s_1 is the listed point;
//   RealSigned/UnitBinary: L = 3, s = (zigzag(c), q, r), the open interval
//                  with centre c/q and radius r/q.
// A closed set is named by a name of its complement.

#include "advice_kit/reals.hpp"

#include <set>

namespace advice_kit {

class SpaceDescriptor {
 public:
  enum class Kind { Nat, Finite, Cantor, Baire, Sierpinski, RealSigned, UnitBinary, Open, Closed, Product, Coproduct };

  static SpaceDescriptor nat() { return SpaceDescriptor(Kind::Nat); }
  static SpaceDescriptor finite(Symbol k) {
    if (k == 0) throw std::invalid_argument("Finite(k) requires k >= 1");
    SpaceDescriptor d(Kind::Finite);
    d.size_ = k;
    return d;
  }
  static SpaceDescriptor cantor() { return SpaceDescriptor(Kind::Cantor); }
  static SpaceDescriptor baire() { return SpaceDescriptor(Kind::Baire); }
  static SpaceDescriptor sierpinski() { return SpaceDescriptor(Kind::Sierpinski); }
  static SpaceDescriptor realSigned() { return SpaceDescriptor(Kind::RealSigned); }
  static SpaceDescriptor unitBinary() { return SpaceDescriptor(Kind::UnitBinary); }
  static SpaceDescriptor open(const SpaceDescriptor& of) { return hyper(Kind::Open, of); }
  static SpaceDescriptor closed(const SpaceDescriptor& of) { return hyper(Kind::Closed, of); }
  static SpaceDescriptor product(const SpaceDescriptor& l, const SpaceDescriptor& r) { return binary(Kind::Product, l, r); }
  static SpaceDescriptor coproduct(const SpaceDescriptor& l, const SpaceDescriptor& r) {
    return binary(Kind::Coproduct, l, r);
  }
  /// X^n as a left-nested product; n = 1 gives X.
  static SpaceDescriptor power(const SpaceDescriptor& x, std::size_t n) {
    SpaceDescriptor out = x;
    for (std::size_t i = 1; i < n; ++i) out = product(out, x);
    return out;
  }

  Kind kind() const { return kind_; }
  Symbol size() const { return size_; }
  const SpaceDescriptor& left() const { return children_->at(0); }
  const SpaceDescriptor& right() const { return children_->at(1); }
  const SpaceDescriptor& of() const { return children_->at(0); }

  /// Whether every point has exactly one name.
  bool injective() const {
    switch (kind_) {
      case Kind::Nat:
      case Kind::Finite:
      case Kind::Cantor:
      case Kind::Baire: return true;
      case Kind::Product:
      case Kind::Coproduct: return left().injective() && right().injective();
      default: return false;
    }
  }

  bool metric() const {
    return kind_ == Kind::RealSigned || kind_ == Kind::UnitBinary || kind_ == Kind::Cantor || kind_ == Kind::Baire ||
           kind_ == Kind::Nat || kind_ == Kind::Finite;
  }

  std::string toString() const {
    switch (kind_) {
      case Kind::Nat: return "N";
      case Kind::Finite: return "{1.." + std::to_string(size_) + "}";
      case Kind::Cantor: return "Cantor";
      case Kind::Baire: return "Baire";
      case Kind::Sierpinski: return "Sierpinski";
      case Kind::RealSigned: return "R";
      case Kind::UnitBinary: return "I";
      case Kind::Open: return "O(" + of().toString() + ")";
      case Kind::Closed: return "A(" + of().toString() + ")";
      case Kind::Product: return "(" + left().toString() + " x " + right().toString() + ")";
      case Kind::Coproduct: return "(" + left().toString() + " + " + right().toString() + ")";
    }
    return "?";
  }

  friend bool operator==(const SpaceDescriptor& a, const SpaceDescriptor& b) { return a.toString() == b.toString(); }

 private:
  explicit SpaceDescriptor(Kind k) : kind_(k) {}

  static SpaceDescriptor hyper(Kind k, const SpaceDescriptor& of) {
    switch (of.kind()) {
      case Kind::Cantor:
      case Kind::Baire:
      case Kind::RealSigned:
      case Kind::UnitBinary:
      case Kind::Nat:
      case Kind::Finite: break;
      default: throw std::invalid_argument("hyperspaces are supported over Nat, Finite, Cantor, Baire, R and I only");
    }
    SpaceDescriptor d(k);
    d.children_ = std::make_shared<std::vector<SpaceDescriptor>>(std::vector<SpaceDescriptor>{of});
    return d;
  }

  static SpaceDescriptor binary(Kind k, const SpaceDescriptor& l, const SpaceDescriptor& r) {
    SpaceDescriptor d(k);
    d.children_ = std::make_shared<std::vector<SpaceDescriptor>>(std::vector<SpaceDescriptor>{l, r});
    return d;
  }

  Kind kind_;
  Symbol size_ = 0;
  std::shared_ptr<const std::vector<SpaceDescriptor>> children_;
};

// Discrete points.

/// Name of n in N (or in a finite space): n followed by zeros.
inline Name natName(Symbol n) { return Name::periodic(Alphabet::natural(), {n}, {0}); }

// Basic open sets of the real line.

/// Open interval (c - r, c + r) with c = centre/den and r = radius/den.
struct RationalBall {
  Integer centre;
  Integer den;
  Integer radius;

  Rational lo() const { return quotient(centre - radius); }
  Rational hi() const { return quotient(centre + radius); }
  Interval closure() const { return {lo(), hi()}; }
  bool contains(const Rational& x) const { return lo() < x && x < hi(); }

 private:
  Rational quotient(const Integer& num) const {
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

 public:

  /// Ball with the given open endpoints (a < b).
  static RationalBall between(const Rational& a, const Rational& b) {
    if (!(a < b)) throw std::invalid_argument("empty open interval");
    Rational c = (a + b) / 2, r = (b - a) / 2;
    Integer den;
    mpz_lcm(den.get_mpz_t(), c.get_den_mpz_t(), r.get_den_mpz_t());
    return {Integer(c * den), den, Integer(r * den)};
  }
};

inline Prefix ballWord(const RationalBall& b) {
  return {zigzag(b.centre), toU64(b.den), toU64(b.radius)};
}

inline RationalBall wordBall(std::span<const Symbol> w) {
  if (w.size() != 3 || w[1] == 0) throw MalformedName("real basic open set needs (centre, denominator, radius)");
  return {unzigzag(w[0]), fromU64(w[1]), fromU64(w[2])};
}

// Entry streams.

/// Appends one enumeration entry: a word (length-prefixed) or, for nullopt, a pad.
inline void appendEntry(Prefix& out, const std::optional<Prefix>& word) {
  if (!word) {
    out.push_back(0);
    return;
  }
  out.push_back(word->size() + 1);
  out.insert(out.end(), word->begin(), word->end());
}

/// Incremental parser of an entry stream.
class EntryParser {
 public:
  /// Returns a completed entry (nullopt inside = pad) when `s` finishes one.
  std::optional<std::optional<Prefix>> feed(Symbol s) {
    if (!open_) {
      if (s == 0) return std::optional<Prefix>();
      remaining_ = s - 1;
      open_ = true;
      word_.clear();
      if (remaining_ == 0) {
        open_ = false;
        return std::optional<Prefix>(Prefix{});
      }
      return std::nullopt;
    }
    word_.push_back(s);
    if (--remaining_ == 0) {
      open_ = false;
      return std::optional<Prefix>(word_);
    }
    return std::nullopt;
  }

 private:
  bool open_ = false;
  std::uint64_t remaining_ = 0;
  Prefix word_;
};

/// Reads entries from an enumeration name.
class EntryReader {
 public:
  explicit EntryReader(const Name& enumeration) : cursor_(enumeration) {}

  /// Next entry (inner nullopt = pad); outer nullopt when fuel runs out.
  std::optional<std::optional<Prefix>> next(Fuel& fuel) {
    for (;;) {
      auto s = cursor_.next(fuel);
      if (!s) return std::nullopt;
      if (auto e = parser_.feed(*s)) return e;
    }
  }

  /// First `count` entries; words only.
  std::optional<std::vector<Prefix>> words(std::size_t count, Fuel& fuel) {
    std::vector<Prefix> out;
    for (std::size_t i = 0; i < count; ++i) {
      auto e = next(fuel);
      if (!e) return std::nullopt;
      if (*e) out.push_back(**e);
    }
    return out;
  }

 private:
  NameCursor cursor_;
  EntryParser parser_;
};

/// Words among the first `depth` entries of an enumeration (fewer if fuel runs out).
inline std::vector<Prefix> enumeratedWords(const Name& enumeration, std::size_t depth, Fuel& fuel) {
  EntryReader reader(enumeration);
  std::vector<Prefix> out;
  for (std::size_t i = 0; i < depth; ++i) {
    auto e = reader.next(fuel);
    if (!e) break;
    if (*e) out.push_back(**e);
  }
  return out;
}

inline std::vector<Prefix> enumeratedWords(const Name& enumeration, std::size_t depth) {
  Fuel fuel(defaultFuel());
  return enumeratedWords(enumeration, depth, fuel);
}

/// Open-set name listing `words` once and padding forever.
inline Name openSetName(const std::vector<Prefix>& words) {
  Prefix body;
  for (const auto& w : words) appendEntry(body, w);
  return Name::periodic(Alphabet::natural(), std::move(body), {0});
}

/// Closed-set name: the complement's enumeration.
inline Name closedSetName(const std::vector<Prefix>& excludedWords) { return openSetName(excludedWords); }

inline Name openSetOfBalls(const std::vector<RationalBall>& balls) {
  std::vector<Prefix> words;
  for (const auto& b : balls) words.push_back(ballWord(b));
  return openSetName(words);
}

/// Enumeration produced by a generator of entries (one generator call per input read).
inline Name enumerationName(std::string id, std::function<std::optional<Prefix>(std::size_t index)> entry) {
  auto m = callbackMachine<std::size_t>(
      std::move(id), Alphabet::binary(), Alphabet::natural(), 0,
      [entry = std::move(entry)](std::size_t& index, Symbol, Emission& out) {
        Prefix p;
        appendEntry(p, entry(index++));
        for (Symbol s : p) out.emit(s);
      });
  return sourceName(m);
}

// Choice from open sets.

namespace detail {

class OpenChoiceProcess : public ProcessBase<OpenChoiceProcess> {
 public:
  void feed(Symbol s, Emission& out) override {
    auto e = parser_.feed(s);
    if (!e || !*e) return;
    seen_.push_back(**e);
    // Follow any strict extension of the current output, repeatedly.
    bool extended = true;
    while (extended) {
      extended = false;
      for (const auto& w : seen_) {
        if (w.size() > current_.size() && isPrefixOf(current_, w)) {
          out.tick(w.size());
          for (std::size_t i = current_.size(); i < w.size(); ++i) out.emit(w[i]);
          current_ = w;
          extended = true;
          break;
        }
      }
    }
  }

 private:
  EntryParser parser_;
  std::vector<Prefix> seen_;
  Prefix current_;
};

}  // namespace detail

inline MachinePtr openChoiceMachine() {
  return std::make_shared<PrefixMachine>("open-choice", Alphabet::natural(), Alphabet::natural(),
                                         [] { return std::make_unique<detail::OpenChoiceProcess>(); });
}

/// A point of the open set: follows listed words, always to a strict extension.
inline Name openChoice(const Name& u) { return Name::generated(openChoiceMachine(), u); }

// Negative information.

enum class Membership { Consistent, Excluded };

inline const char* toString(Membership m) { return m == Membership::Consistent ? "consistent" : "excluded"; }

/// Excluded iff some listed word among the first `depth` entries is a prefix of w.
inline Membership closedConsistentAtDepth(const Name& c, std::span<const Symbol> w, std::size_t depth, Fuel& fuel) {
  EntryReader reader(c);
  for (std::size_t i = 0; i < depth; ++i) {
    auto e = reader.next(fuel);
    if (!e) break;
    if (*e && isPrefixOf(**e, w)) return Membership::Excluded;
  }
  return Membership::Consistent;
}

inline Membership closedConsistentAtDepth(const Name& c, std::span<const Symbol> w, std::size_t depth) {
  Fuel fuel(defaultFuel());
  return closedConsistentAtDepth(c, w, depth, fuel);
}

/// Excluded iff the point set J (an enclosure) is covered by the balls among the first `depth` entries.
inline Membership closedRealConsistentAtDepth(const Name& c, const Interval& j, std::size_t depth, Fuel& fuel) {
  std::vector<Interval> cover;
  for (const auto& w : enumeratedWords(c, depth, fuel)) cover.push_back(wordBall(w).closure());
  return coveredByOpenIntervals(j, cover) ? Membership::Excluded : Membership::Consistent;
}

inline Membership closedNatConsistentAtDepth(const Name& c, Symbol n, std::size_t depth, Fuel& fuel) {
  for (const auto& w : enumeratedWords(c, depth, fuel))
    if (w.size() == 1 && w[0] == n) return Membership::Excluded;
  return Membership::Consistent;
}

// Dense sequences.

struct DenseSequence {
  SpaceDescriptor space;
  std::function<Rational(std::size_t)> realPoint;   // RealSigned / UnitBinary
  std::function<Prefix(std::size_t)> wordPoint;     // Cantor / Baire: finite word, completed by zeros
};

/// 0, 1, 1/2, 1/4, 3/4, 1/8, 3/8, 5/8, 7/8, ...
inline Rational dyadicPoint(std::size_t n) {
  if (n == 0) return 0;
  if (n == 1) return 1;
  std::size_t m = n - 2;  // m-th odd fraction of levels 1, 2, 3, ...
  long level = 1;
  std::size_t count = 1;
  while (m >= count) {
    m -= count;
    ++level;
    count *= 2;
  }
  return Rational(static_cast<long>(2 * m + 1)) * pow2(-level);
}

inline DenseSequence dyadicUnitSequence() {
  return {SpaceDescriptor::unitBinary(), dyadicPoint, {}};
}

/// Finite binary words in length-lexicographic order: ε, 0, 1, 00, 01, ...
inline Prefix binaryWord(std::size_t n) {
  std::size_t len = 0;
  while (n >= (std::size_t{1} << len)) {
    n -= std::size_t{1} << len;
    ++len;
  }
  Prefix w(len);
  for (std::size_t i = 0; i < len; ++i) w[len - 1 - i] = (n >> i) & 1;
  return w;
}

inline DenseSequence cantorWordSequence() { return {SpaceDescriptor::cantor(), {}, binaryWord}; }

/// Least n (in dovetailed scan order) with ν(n) inside a listed basic set.
inline std::optional<std::size_t> denseWitness(const Name& u, const DenseSequence& nu, Fuel& fuel) {
  EntryReader reader(u);
  std::vector<Prefix> words;
  bool real = nu.space.kind() == SpaceDescriptor::Kind::RealSigned ||
              nu.space.kind() == SpaceDescriptor::Kind::UnitBinary;
  auto inside = [&](std::size_t n, const Prefix& w) {
    if (real) return wordBall(w).contains(nu.realPoint(n));
    Prefix p = nu.wordPoint(n);
    if (p.size() < w.size()) p.resize(w.size(), 0);
    return isPrefixOf(w, p);
  };
  for (std::size_t stage = 0;; ++stage) {
    auto e = reader.next(fuel);
    if (!e) return std::nullopt;
    if (*e) words.push_back(**e);
    for (std::size_t n = 0; n <= stage; ++n) {
      if (!fuel.spend(words.size())) return std::nullopt;
      for (const auto& w : words)
        if (inside(n, w)) return n;
    }
  }
}

// Sierpiński space: a binary name denotes ⊤ iff some symbol is 1.

inline Name sierpinskiTop(std::size_t delay = 0) {
  return Name::periodic(Alphabet::binary(), Prefix(delay, 0), {1});
}
inline Name sierpinskiBottom() { return Name::zeros(); }
/// ⊤ is observable after finitely many symbols; ⊥ never is.
inline bool sierpinskiObservedTop(std::span<const Symbol> p) {
  return std::find(p.begin(), p.end(), Symbol{1}) != p.end();
}

}  // namespace advice_kit
