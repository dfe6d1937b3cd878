#pragma once

// Multivalued problems with finite-depth verifiers and test oracles.
//
// Input depth `d` means: d symbols of every component name (entries for
// set-valued components). Verifiers answer Consistent or Refuted, never
// "accepted", and are monotone in the depth and in the candidate prefix.

#include "advice_kit/linalg.hpp"
#include "advice_kit/spaces.hpp"

#include <any>
#include <random>

namespace advice_kit {

enum class Verdict { Consistent, Refuted };
enum class DomainStatus { ConsistentSoFar, DomainViolated };

inline const char* toString(Verdict v) { return v == Verdict::Consistent ? "consistent" : "refuted"; }
inline const char* toString(DomainStatus s) {
  return s == DomainStatus::ConsistentSoFar ? "consistent-so-far" : "domain-violated";
}

struct DomainViolated : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An input name together with what it denotes, for oracles and advice families.
struct Fixture {
  Name name;
  std::any meaning;
  std::string label;
};

using Rng = std::mt19937_64;

// Meanings.

struct RealVectorMeaning {
  std::vector<Rational> values;
};

struct MatrixMeaning {
  RationalMatrix matrix;
  /// Set when the matrix was built as a Kronecker product of the two factors.
  std::optional<std::pair<RationalMatrix, RationalMatrix>> factors;
};

/// Semantics of a set-valued input: valid answers and membership.
struct ChoiceMeaning {
  std::vector<Name> answers;                                  // adversarial spread of valid outputs
  std::function<Name(Rng&)> sample;                           // draw a member
  std::function<bool(const Name&, std::size_t)> consistent;   // member test at finite depth
  std::optional<Rational> measure;                            // exact measure when known
  std::string description;
  std::vector<Interval> pieces;                               // real sets: closed intervals whose union is the set
  std::vector<Rational> points;                               // real sets: rational members behind `answers`
};

/// Circle example input: whether the named point is rational.
struct CirclePoint {
  bool rational = false;
};

struct MultiProblem {
  std::string id;
  SpaceDescriptor inputSpace = SpaceDescriptor::cantor();
  SpaceDescriptor outputSpace = SpaceDescriptor::nat();
  std::function<DomainStatus(const Name&, std::size_t)> domainCheck;
  std::function<Verdict(const Name&, const Prefix&, std::size_t)> verify;
  /// Output symbols a candidate needs for verification at depth d.
  std::function<std::size_t(std::size_t)> outputLength = [](std::size_t) { return std::size_t{1}; };
  std::vector<std::string> oracleVariants;
  std::function<std::optional<Name>(const Fixture&, std::size_t)> oracle;

  bool hasOracle() const { return static_cast<bool>(oracle); }
};

using ProblemPtr = std::shared_ptr<const MultiProblem>;

// Reading inputs.

/// De-interleaves the first k*d symbols of a k-tuple name.
inline std::optional<std::vector<Prefix>> componentPrefixes(const Name& x, std::size_t k, std::size_t d, Fuel& fuel) {
  if (k == 1) {
    auto p = x.prefix(d, fuel);
    if (!p) return std::nullopt;
    return std::vector<Prefix>{*p};
  }
  if (const auto* t = x.asTuple(); t && t->components.size() == k) {
    std::vector<Prefix> out;
    for (const auto& c : t->components) {
      auto p = c.prefix(d, fuel);
      if (!p) return std::nullopt;
      out.push_back(*p);
    }
    return out;
  }
  auto p = x.prefix(k * d, fuel);
  if (!p) return std::nullopt;
  std::vector<Prefix> out(k);
  for (std::size_t i = 0; i < p->size(); ++i) out[i % k].push_back((*p)[i]);
  return out;
}

inline std::optional<std::vector<Prefix>> componentPrefixes(const Name& x, std::size_t k, std::size_t d) {
  Fuel fuel(defaultFuel());
  return componentPrefixes(x, k, d, fuel);
}

/// Splits a finite prefix of a k-tuple.
inline std::vector<Prefix> splitPrefix(std::span<const Symbol> p, std::size_t k) {
  std::vector<Prefix> out(k);
  for (std::size_t i = 0; i < p.size(); ++i) out[i % k].push_back(p[i]);
  return out;
}

inline bool containsOne(std::span<const Symbol> p) { return std::find(p.begin(), p.end(), Symbol{1}) != p.end(); }

/// Zeroness of an eventually periodic Cantor name; nullopt for generated names.
inline std::optional<bool> isZeroName(const Name& x) {
  const auto* p = x.asPeriodic();
  if (!p) return std::nullopt;
  for (Symbol s : p->prefix)
    if (s != 0) return false;
  for (Symbol s : p->period)
    if (s != 0) return false;
  return true;
}

/// Exact value of an eventually periodic signed-digit name.
inline std::optional<Rational> exactRealValue(const Name& x) {
  const auto* p = x.asPeriodic();
  if (!p) return std::nullopt;
  SignedDecoder dec;
  std::size_t h = 0;
  const std::size_t limit = p->prefix.size() + p->period.size() + 1;
  while (!dec.headerComplete()) {
    if (h > limit) throw MalformedName("periodic name without a complete exponent header");
    dec.feed(x.periodicAt(h++));
  }
  std::size_t start = std::max(h, p->prefix.size());
  Integer a = 0;
  for (std::size_t i = h; i < start; ++i) a = 2 * a + (static_cast<long>(x.periodicAt(i)) - 1);
  Integer b = 0;
  const std::size_t q = p->period.size();
  for (std::size_t i = start; i < start + q; ++i) b = 2 * b + (static_cast<long>(x.periodicAt(i)) - 1);
  long pre = static_cast<long>(start - h);
  Rational tail = Rational(b) / (pow2(static_cast<long>(q)) - 1);
  return pow2(dec.exponent() - pre) * (Rational(a) + tail);
}

inline std::optional<Interval> prefixInterval(std::span<const Symbol> p) { return decodeRealPrefix(p); }

// LPO family.

enum class LpoKind { Lpo, LpoN, Llpo, LlpoN, Mlpo };

/// Reference answers for the omniscience principles from finite descriptions.
/// LPO answers 0 for the zero sequence and 1 otherwise; LLPO and MLPO return
/// the least valid index (MLPO indices are 1-based).
inline Prefix solveLpoFamily(LpoKind kind, const Name& x, std::size_t n, std::size_t precision) {
  auto zero = [](const Name& c) {
    auto z = isZeroName(c);
    if (!z) throw std::invalid_argument("oracle needs eventually periodic components");
    return *z;
  };
  Prefix answers;
  switch (kind) {
    case LpoKind::Lpo: answers.push_back(zero(x) ? 0 : 1); break;
    case LpoKind::LpoN:
      for (std::size_t i = 0; i < n; ++i) answers.push_back(zero(projectName(x, n, i)) ? 0 : 1);
      break;
    case LpoKind::Llpo:
    case LpoKind::LlpoN: {
      std::size_t pairs = kind == LpoKind::Llpo ? 1 : n;
      for (std::size_t i = 0; i < pairs; ++i) {
        Name pair = pairs == 1 ? x : projectName(x, pairs, i);
        auto [x0, x1] = unpairName(pair);
        bool z0 = zero(x0), z1 = zero(x1);
        if (!z0 && !z1) throw DomainViolated("LLPO: both sequences contain a 1");
        answers.push_back(z0 ? 0 : 1);
      }
      break;
    }
    case LpoKind::Mlpo: {
      std::optional<Symbol> found;
      for (std::size_t i = 0; i < n && !found; ++i) {
        auto v = exactRealValue(projectName(x, n, i));
        if (!v) throw std::invalid_argument("oracle needs eventually periodic components");
        if (*v == 0) found = i + 1;
      }
      if (!found) throw DomainViolated("MLPO: no component is zero");
      answers.push_back(*found);
      break;
    }
  }
  Prefix out = answers;
  while (out.size() < precision) out.push_back(0);
  out.resize(std::max(precision, answers.size()));
  return out;
}

/// Canonical separator: z(i) = 1 iff x(i) = 1.
inline Prefix sepSolve(const Name& x, const Name& y, std::size_t precision) {
  auto px = x.prefix(precision), py = y.prefix(precision);
  if (!px || !py) throw std::runtime_error("sepSolve: input names did not produce enough symbols");
  Prefix z(precision, 0);
  for (std::size_t i = 0; i < precision; ++i) {
    if ((*px)[i] == 1 && (*py)[i] == 1) throw DomainViolated("Sep: x(i) = y(i) = 1 at i = " + std::to_string(i));
    z[i] = (*px)[i] == 1 ? 1 : 0;
  }
  return z;
}

// Verifier building blocks.

namespace detail {

inline Verdict refutedIf(bool b) { return b ? Verdict::Refuted : Verdict::Consistent; }

/// Answers of a discrete product: the first `count` symbols.
inline bool discreteAnswers(const Prefix& cand, std::size_t count) { return cand.size() >= count; }

/// v = candidate unit eigenvector of m: norm^2 contains 1 and Av is parallel to v.
inline bool eigenRefuted(const IntervalMatrix& m, const std::vector<Interval>& v) {
  Interval n2(0);
  for (const auto& x : v) n2 = n2 + x.square();
  if (!n2.contains(1)) return true;
  auto av = multiply(m, v);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if ((av[i] * v[j] - av[j] * v[i]).excludesZero()) return true;
  return false;
}

/// Enclosures of reals from their prefixes, nullopt while some header is incomplete.
inline std::optional<std::vector<Interval>> intervalsOf(const std::vector<Prefix>& ps) {
  std::vector<Interval> out;
  for (const auto& p : ps) {
    auto iv = decodeRealPrefix(p);
    if (!iv) return std::nullopt;
    out.push_back(*iv);
  }
  return out;
}

/// Output length of a k-vector of reals at precision d (headers up to 8 symbols).
inline std::function<std::size_t(std::size_t)> realVectorLength(std::size_t k) {
  return [k](std::size_t d) { return k * (d + 8); };
}

inline bool sameEntries(const Interval& a, const Interval& b) { return a.intersects(b); }

}  // namespace detail

// Catalog.

inline ProblemPtr lpoProblem() {
  auto p = std::make_shared<MultiProblem>();
  p->id = "LPO";
  p->inputSpace = SpaceDescriptor::cantor();
  p->outputSpace = SpaceDescriptor::finite(2);
  p->domainCheck = [](const Name&, std::size_t) { return DomainStatus::ConsistentSoFar; };
  p->verify = [](const Name& x, const Prefix& cand, std::size_t d) {
    if (cand.empty()) return Verdict::Consistent;
    if (cand[0] > 1) return Verdict::Refuted;
    auto px = x.prefix(d);
    return detail::refutedIf(cand[0] == 0 && px && containsOne(*px));
  };
  p->oracleVariants = {"exact"};
  p->oracle = [](const Fixture& f, std::size_t) -> std::optional<Name> {
    return natName(solveLpoFamily(LpoKind::Lpo, f.name, 1, 1)[0]);
  };
  return p;
}

/// LPO^n: n-tuple of Cantor names, output the n answers.
inline ProblemPtr lpoPowerProblem(std::size_t n) {
  auto p = std::make_shared<MultiProblem>();
  p->id = "LPO^" + std::to_string(n);
  p->inputSpace = SpaceDescriptor::power(SpaceDescriptor::cantor(), n);
  p->outputSpace = SpaceDescriptor::power(SpaceDescriptor::finite(2), n);
  p->outputLength = [n](std::size_t) { return n; };
  p->domainCheck = [](const Name&, std::size_t) { return DomainStatus::ConsistentSoFar; };
  p->verify = [n](const Name& x, const Prefix& cand, std::size_t d) {
    auto comps = componentPrefixes(x, n, d);
    for (std::size_t i = 0; i < std::min(n, cand.size()); ++i) {
      if (cand[i] > 1) return Verdict::Refuted;
      if (comps && cand[i] == 0 && containsOne((*comps)[i])) return Verdict::Refuted;
    }
    return Verdict::Consistent;
  };
  p->oracleVariants = {"exact"};
  p->oracle = [n](const Fixture& f, std::size_t) -> std::optional<Name> {
    auto a = solveLpoFamily(LpoKind::LpoN, f.name, n, n);
    return Name::periodic(Alphabet::natural(), a, {0});
  };
  return p;
}

namespace detail {

inline DomainStatus llpoDomain(const Prefix& x0, const Prefix& x1) {
  return containsOne(x0) && containsOne(x1) ? DomainStatus::DomainViolated : DomainStatus::ConsistentSoFar;
}

inline Verdict llpoVerify(const Prefix& x0, const Prefix& x1, Symbol answer) {
  if (answer > 1) return Verdict::Refuted;
  return refutedIf(containsOne(answer == 0 ? x0 : x1));
}

}  // namespace detail

/// LLPO^n for n >= 1 (n = 1 is LLPO): n-tuple of pairs ⟨x0, x1⟩.
inline ProblemPtr llpoPowerProblem(std::size_t n) {
  auto p = std::make_shared<MultiProblem>();
  p->id = n == 1 ? "LLPO" : "LLPO^" + std::to_string(n);
  auto pairSpace = SpaceDescriptor::product(SpaceDescriptor::cantor(), SpaceDescriptor::cantor());
  p->inputSpace = SpaceDescriptor::power(pairSpace, n);
  p->outputSpace = SpaceDescriptor::power(SpaceDescriptor::finite(2), n);
  p->outputLength = [n](std::size_t) { return n; };
  auto split = [n](const Name& x, std::size_t d) -> std::optional<std::vector<Prefix>> {
    // Component j of pair i sits at index 2n*t + 2i + j... after flattening the
    // n-tuple of pairs, pair i occupies indices ≡ i (mod n) and its halves alternate.
    auto pairs = componentPrefixes(x, n, 2 * d);
    if (!pairs) return std::nullopt;
    std::vector<Prefix> out;
    for (const auto& pp : *pairs) {
      auto halves = splitPrefix(pp, 2);
      out.push_back(halves[0]);
      out.push_back(halves[1]);
    }
    return out;
  };
  p->domainCheck = [n, split](const Name& x, std::size_t d) {
    auto c = split(x, d);
    if (!c) return DomainStatus::ConsistentSoFar;
    for (std::size_t i = 0; i < n; ++i)
      if (detail::llpoDomain((*c)[2 * i], (*c)[2 * i + 1]) == DomainStatus::DomainViolated)
        return DomainStatus::DomainViolated;
    return DomainStatus::ConsistentSoFar;
  };
  p->verify = [n, split](const Name& x, const Prefix& cand, std::size_t d) {
    auto c = split(x, d);
    for (std::size_t i = 0; i < std::min(n, cand.size()); ++i) {
      if (cand[i] > 1) return Verdict::Refuted;
      if (c && detail::llpoVerify((*c)[2 * i], (*c)[2 * i + 1], cand[i]) == Verdict::Refuted) return Verdict::Refuted;
    }
    return Verdict::Consistent;
  };
  p->oracleVariants = {"least-valid", "greatest-valid"};
  p->oracle = [n](const Fixture& f, std::size_t variant) -> std::optional<Name> {
    Prefix a;
    for (std::size_t i = 0; i < n; ++i) {
      Name pair = n == 1 ? f.name : projectName(f.name, n, i);
      auto [x0, x1] = unpairName(pair);
      auto z0 = isZeroName(x0), z1 = isZeroName(x1);
      if (!z0 || !z1) return std::nullopt;
      if (!*z0 && !*z1) throw DomainViolated("LLPO: both sequences contain a 1");
      if (variant % 2 == 1) {
        a.push_back(*z1 ? 1 : 0);
      } else {
        a.push_back(*z0 ? 0 : 1);
      }
    }
    return Name::periodic(Alphabet::natural(), a, {0});
  };
  return p;
}

inline ProblemPtr llpoProblem() { return llpoPowerProblem(1); }

/// MLPO_n over reals: answer i (1-based) is valid iff x_i = 0.
inline ProblemPtr mlpoProblem(std::size_t n) {
  auto p = std::make_shared<MultiProblem>();
  p->id = "MLPO_" + std::to_string(n);
  p->inputSpace = SpaceDescriptor::power(SpaceDescriptor::realSigned(), n);
  p->outputSpace = SpaceDescriptor::finite(n);
  p->domainCheck = [n](const Name& x, std::size_t d) {
    auto c = componentPrefixes(x, n, d);
    if (!c) return DomainStatus::ConsistentSoFar;
    for (const auto& comp : *c) {
      auto iv = decodeRealPrefix(comp);
      if (!iv || iv->containsZero()) return DomainStatus::ConsistentSoFar;
    }
    return DomainStatus::DomainViolated;
  };
  p->verify = [n](const Name& x, const Prefix& cand, std::size_t d) {
    if (cand.empty()) return Verdict::Consistent;
    if (cand[0] < 1 || cand[0] > n) return Verdict::Refuted;
    auto c = componentPrefixes(x, n, d);
    if (!c) return Verdict::Consistent;
    auto iv = decodeRealPrefix((*c)[cand[0] - 1]);
    return detail::refutedIf(iv && iv->excludesZero());
  };
  p->oracleVariants = {"least-zero", "greatest-zero"};
  p->oracle = [n](const Fixture& f, std::size_t variant) -> std::optional<Name> {
    std::vector<Rational> values;
    if (const auto* m = std::any_cast<RealVectorMeaning>(&f.meaning)) {
      values = m->values;
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        auto v = exactRealValue(projectName(f.name, n, i));
        if (!v) return std::nullopt;
        values.push_back(*v);
      }
    }
    std::vector<Symbol> zeros;
    for (std::size_t i = 0; i < n; ++i)
      if (values[i] == 0) zeros.push_back(i + 1);
    if (zeros.empty()) throw DomainViolated("MLPO: no component is zero");
    return natName(variant % 2 == 0 ? zeros.front() : zeros.back());
  };
  return p;
}

/// Sep: characteristic sequences x, y of disjoint sets; output z ⊇ x disjoint from y.
inline ProblemPtr sepProblem() {
  auto p = std::make_shared<MultiProblem>();
  p->id = "Sep";
  p->inputSpace = SpaceDescriptor::product(SpaceDescriptor::cantor(), SpaceDescriptor::cantor());
  p->outputSpace = SpaceDescriptor::cantor();
  p->outputLength = [](std::size_t d) { return d; };
  p->domainCheck = [](const Name& x, std::size_t d) {
    auto c = componentPrefixes(x, 2, d);
    if (!c) return DomainStatus::ConsistentSoFar;
    for (std::size_t i = 0; i < d; ++i)
      if ((*c)[0][i] == 1 && (*c)[1][i] == 1) return DomainStatus::DomainViolated;
    return DomainStatus::ConsistentSoFar;
  };
  p->verify = [](const Name& x, const Prefix& z, std::size_t d) {
    auto c = componentPrefixes(x, 2, d);
    if (!c) return Verdict::Consistent;
    for (std::size_t i = 0; i < std::min(d, z.size()); ++i) {
      if (z[i] > 1) return Verdict::Refuted;
      if ((*c)[0][i] == 1 && z[i] == 0) return Verdict::Refuted;
      if ((*c)[1][i] == 1 && z[i] == 1) return Verdict::Refuted;
    }
    return Verdict::Consistent;
  };
  p->oracleVariants = {"least-separator", "greatest-separator"};
  p->oracle = [](const Fixture& f, std::size_t variant) -> std::optional<Name> {
    auto [x, y] = unpairName(f.name);
    const auto* px = x.asPeriodic();
    const auto* py = y.asPeriodic();
    if (!px || !py) return std::nullopt;
    // Both inputs are eventually periodic, so is the separator.
    Name t = pairNames(x, y);
    const auto* pt = t.asPeriodic();
    if (!pt) return std::nullopt;
    auto pick = [variant](Symbol a, Symbol b) -> Symbol {
      if (a == 1 && b == 1) throw DomainViolated("Sep: x(i) = y(i) = 1");
      if (variant % 2 == 0) return a == 1 ? 1 : 0;
      return b == 1 ? 0 : 1;
    };
    Prefix pre, per;
    for (std::size_t i = 0; i + 1 < pt->prefix.size(); i += 2) pre.push_back(pick(pt->prefix[i], pt->prefix[i + 1]));
    for (std::size_t i = 0; i + 1 < pt->period.size(); i += 2) per.push_back(pick(pt->period[i], pt->period[i + 1]));
    if (pt->period.size() % 2 == 1) {
      per.clear();
      std::size_t start = pt->prefix.size() / 2;
      for (std::size_t i = 0; i < pt->period.size(); ++i)
        per.push_back(pick(t.periodicAt(2 * (start + i)), t.periodicAt(2 * (start + i) + 1)));
    }
    return Name::periodic(Alphabet::binary(), pre, per);
  };
  return p;
}

// Choice problems.

namespace detail {

inline std::optional<Name> choiceOracle(const Fixture& f, std::size_t variant) {
  const auto* m = std::any_cast<ChoiceMeaning>(&f.meaning);
  if (!m || m->answers.empty()) return std::nullopt;
  return m->answers[variant % m->answers.size()];
}

/// Whether the listed cylinders cover Cantor space (decidable by compactness).
inline bool cylindersCoverCantor(const std::vector<Prefix>& words) {
  // Recursive check on the binary tree, bounded by the longest word.
  std::function<bool(const Prefix&)> covered = [&](const Prefix& w) {
    for (const auto& u : words)
      if (isPrefixOf(u, w)) return true;
    bool longer = false;
    for (const auto& u : words)
      if (u.size() > w.size() && isPrefixOf(w, u)) longer = true;
    if (!longer) return false;
    Prefix l = w, r = w;
    l.push_back(0);
    r.push_back(1);
    return covered(l) && covered(r);
  };
  return covered({});
}

}  // namespace detail

inline ProblemPtr closedChoiceNatProblem() {
  auto p = std::make_shared<MultiProblem>();
  p->id = "C_N";
  p->inputSpace = SpaceDescriptor::closed(SpaceDescriptor::nat());
  p->outputSpace = SpaceDescriptor::nat();
  p->domainCheck = [](const Name&, std::size_t) { return DomainStatus::ConsistentSoFar; };
  p->verify = [](const Name& x, const Prefix& cand, std::size_t d) {
    if (cand.empty()) return Verdict::Consistent;
    Fuel fuel(defaultFuel());
    return detail::refutedIf(closedNatConsistentAtDepth(x, cand[0], d, fuel) == Membership::Excluded);
  };
  p->oracleVariants = {"answer-0", "answer-1", "answer-2"};
  p->oracle = detail::choiceOracle;
  return p;
}

/// C_Cantor, or PC_Cantor when `positive` (the domain additionally requires positive measure).
inline ProblemPtr closedChoiceCantorProblem(bool positive = false) {
  auto p = std::make_shared<MultiProblem>();
  p->id = positive ? "PC_Cantor" : "C_Cantor";
  p->inputSpace = SpaceDescriptor::closed(SpaceDescriptor::cantor());
  p->outputSpace = SpaceDescriptor::cantor();
  p->outputLength = [](std::size_t d) { return d; };
  p->domainCheck = [](const Name& x, std::size_t d) {
    return detail::cylindersCoverCantor(enumeratedWords(x, d)) ? DomainStatus::DomainViolated
                                                               : DomainStatus::ConsistentSoFar;
  };
  p->verify = [](const Name& x, const Prefix& cand, std::size_t d) {
    for (Symbol s : cand)
      if (s > 1) return Verdict::Refuted;
    return detail::refutedIf(closedConsistentAtDepth(x, cand, d) == Membership::Excluded);
  };
  p->oracleVariants = {"answer-0", "answer-1", "answer-2"};
  p->oracle = detail::choiceOracle;
  return p;
}

/// PC over the reals (`unit` restricts to [0,1]): output a signed-digit point of the set.
inline ProblemPtr positiveChoiceRealProblem(bool unit) {
  auto p = std::make_shared<MultiProblem>();
  p->id = unit ? "PC_I" : "PC_R";
  p->inputSpace = SpaceDescriptor::closed(unit ? SpaceDescriptor::unitBinary() : SpaceDescriptor::realSigned());
  p->outputSpace = SpaceDescriptor::realSigned();
  p->outputLength = [](std::size_t d) { return d + 8; };
  p->domainCheck = [unit](const Name& x, std::size_t d) {
    if (!unit) return DomainStatus::ConsistentSoFar;
    Fuel fuel(defaultFuel());
    return closedRealConsistentAtDepth(x, Interval(0, 1), d, fuel) == Membership::Excluded
               ? DomainStatus::DomainViolated
               : DomainStatus::ConsistentSoFar;
  };
  p->verify = [unit](const Name& x, const Prefix& cand, std::size_t d) {
    std::optional<Interval> j;
    try {
      j = decodeRealPrefix(cand);
    } catch (const MalformedName&) {
      return Verdict::Refuted;
    }
    if (!j) return Verdict::Consistent;
    if (unit) {
      j = j->intersect(Interval(0, 1));
      if (!j) return Verdict::Refuted;
    }
    Fuel fuel(defaultFuel());
    return detail::refutedIf(closedRealConsistentAtDepth(x, *j, d, fuel) == Membership::Excluded);
  };
  p->oracleVariants = {"answer-0", "answer-1", "answer-2"};
  p->oracle = detail::choiceOracle;
  return p;
}

// Linear algebra problems.

namespace detail {

inline std::optional<IntervalMatrix> matrixAt(const Name& x, std::size_t rows, std::size_t cols, std::size_t d) {
  auto c = componentPrefixes(x, rows * cols, d);
  if (!c) return std::nullopt;
  auto ivs = intervalsOf(*c);
  if (!ivs) return std::nullopt;
  return IntervalMatrix(rows, cols, std::move(*ivs));
}

inline std::optional<std::vector<Interval>> vectorOf(const Prefix& cand, std::size_t k) {
  return intervalsOf(splitPrefix(cand, k));
}

/// Unit eigenvectors for a rational symmetric matrix whose eigenvectors the oracle can produce exactly.
inline std::optional<Name> eigenOracle(const MatrixMeaning& m, std::size_t variant);

}  // namespace detail

inline ProblemPtr seigenProblem(std::size_t n) {
  auto p = std::make_shared<MultiProblem>();
  p->id = "SEigen_" + std::to_string(n);
  p->inputSpace = SpaceDescriptor::power(SpaceDescriptor::realSigned(), n * n);
  p->outputSpace = SpaceDescriptor::power(SpaceDescriptor::realSigned(), n);
  p->outputLength = detail::realVectorLength(n);
  p->domainCheck = [n](const Name& x, std::size_t d) {
    auto m = detail::matrixAt(x, n, n, d);
    if (!m) return DomainStatus::ConsistentSoFar;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (!(*m)(i, j).intersects((*m)(j, i))) return DomainStatus::DomainViolated;
    return DomainStatus::ConsistentSoFar;
  };
  p->verify = [n](const Name& x, const Prefix& cand, std::size_t d) {
    std::optional<std::vector<Interval>> v;
    try {
      v = detail::vectorOf(cand, n);
    } catch (const MalformedName&) {
      return Verdict::Refuted;
    }
    if (!v) return Verdict::Consistent;
    auto m = detail::matrixAt(x, n, n, d);
    if (!m) return Verdict::Consistent;
    return detail::refutedIf(detail::eigenRefuted(*m, *v));
  };
  p->oracleVariants = {"least-plus", "least-minus", "greatest-plus", "greatest-minus"};
  p->oracle = [](const Fixture& f, std::size_t variant) -> std::optional<Name> {
    const auto* m = std::any_cast<MatrixMeaning>(&f.meaning);
    if (!m) return std::nullopt;
    return detail::eigenOracle(*m, variant);
  };
  return p;
}

/// SEigen_n x SEigen_m: input ⟨A, B⟩, output ⟨u, v⟩.
inline ProblemPtr seigenPairProblem(std::size_t n, std::size_t m) {
  auto a = seigenProblem(n), b = seigenProblem(m);
  auto p = std::make_shared<MultiProblem>();
  p->id = a->id + "xSEigen_" + std::to_string(m);
  p->inputSpace = SpaceDescriptor::product(a->inputSpace, b->inputSpace);
  p->outputSpace = SpaceDescriptor::product(a->outputSpace, b->outputSpace);
  p->outputLength = [n, m](std::size_t d) { return 2 * std::max(n, m) * (d + 8); };
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
  p->oracleVariants = {"least-plus", "greatest-minus"};
  p->oracle = [a, b](const Fixture& f, std::size_t variant) -> std::optional<Name> {
    const auto* m = std::any_cast<MatrixMeaning>(&f.meaning);
    if (!m || !m->factors) return std::nullopt;
    auto u = detail::eigenOracle({m->factors->first, {}}, variant * 3);
    auto v = detail::eigenOracle({m->factors->second, {}}, variant * 3);
    if (!u || !v) return std::nullopt;
    return pairNames(*u, *v);
  };
  return p;
}

/// LinEq_{n,m}: n x m matrix of rank <= min(n, m-1); output v != 0 with Av = 0.
inline ProblemPtr linEqProblem(std::size_t n, std::size_t m) {
  auto p = std::make_shared<MultiProblem>();
  p->id = "LinEq_" + std::to_string(n) + "," + std::to_string(m);
  p->inputSpace = SpaceDescriptor::power(SpaceDescriptor::realSigned(), n * m);
  p->outputSpace = SpaceDescriptor::power(SpaceDescriptor::realSigned(), m);
  p->outputLength = detail::realVectorLength(m);
  p->domainCheck = [](const Name&, std::size_t) { return DomainStatus::ConsistentSoFar; };
  p->verify = [n, m](const Name& x, const Prefix& cand, std::size_t d) {
    std::optional<std::vector<Interval>> v;
    try {
      v = detail::vectorOf(cand, m);
    } catch (const MalformedName&) {
      return Verdict::Refuted;
    }
    if (!v) return Verdict::Consistent;
    auto a = detail::matrixAt(x, n, m, d);
    if (!a) return Verdict::Consistent;
    for (const auto& r : multiply(*a, *v))
      if (r.excludesZero()) return Verdict::Refuted;
    return Verdict::Consistent;
  };
  p->oracleVariants = {"first-basis", "last-basis", "negated-sum", "scaled-first"};
  p->oracle = [m](const Fixture& f, std::size_t variant) -> std::optional<Name> {
    const auto* mm = std::any_cast<MatrixMeaning>(&f.meaning);
    if (!mm) return std::nullopt;
    auto basis = kernelBasis(mm->matrix);
    if (basis.empty()) throw DomainViolated("LinEq: matrix has full column rank");
    std::vector<Rational> v;
    switch (variant % 4) {
      case 0: v = basis.front(); break;
      case 1: v = basis.back(); break;
      case 2:
        v.assign(m, Rational(0));
        for (std::size_t k = 0; k < basis.size(); ++k)
          for (std::size_t i = 0; i < m; ++i) v[i] -= Rational(static_cast<long>(k + 1)) * basis[k][i];
        break;
      default:
        v = basis.front();
        for (auto& x : v) x *= Rational(-3, 7);
        break;
    }
    std::vector<Name> parts;
    for (const auto& x : v) parts.push_back(encodeRational(x));
    return tupleNames(parts);
  };
  return p;
}

namespace detail {

/// Name of a fixed unit vector given by an enclosure function.
inline Name unitVectorName(std::size_t n, std::function<std::vector<Interval>(std::size_t)> enclose) {
  return computableVectorName("eigenvector", std::vector<long>(n, 0), std::move(enclose));
}

inline std::optional<Name> eigenOracle(const MatrixMeaning& m, std::size_t variant) {
  const RationalMatrix& a = m.matrix;
  bool greatest = (variant / 2) % 2 == 1;
  bool negate = variant % 2 == 1;
  Rational sign = negate ? -1 : 1;
  if (a.rows() == 2) {
    if (a(0, 1) == 0 && a(0, 0) == a(1, 1)) {
      // Scalar matrix: every unit vector qualifies; rotate through rational points
      // of the circle, ((1-t^2), 2t)/(1+t^2) for t = variant/4.
      Rational t = ratio(static_cast<long>(variant % 16), 4);
      t -= 2;
      Rational den = 1 + t * t;
      std::vector<Rational> v{(1 - t * t) / den, 2 * t / den};
      return tupleNames({encodeRational(v[0]), encodeRational(v[1])});
    }
    std::size_t which = greatest ? 1 : 0;
    RationalMatrix copy = a;
    return unitVectorName(2, [copy, which, sign](std::size_t bits) {
      auto vs = *eigenvectors2(copy, static_cast<unsigned>(bits));
      return std::vector<Interval>{sign * vs[which][0], sign * vs[which][1]};
    });
  }
  if (m.factors && m.factors->first.rows() == 2 && m.factors->second.rows() == 2) {
    // u ⊗ v from the factors: a valid unit eigenvector of the Kronecker product.
    RationalMatrix fa = m.factors->first, fb = m.factors->second;
    bool scalarA = fa(0, 1) == 0 && fa(0, 0) == fa(1, 1);
    bool scalarB = fb(0, 1) == 0 && fb(0, 0) == fb(1, 1);
    if (scalarA || scalarB) return std::nullopt;
    std::size_t wa = greatest ? 1 : 0, wb = (variant / 4) % 2;
    return unitVectorName(4, [fa, fb, wa, wb, sign](std::size_t bits) {
      auto u = (*eigenvectors2(fa, static_cast<unsigned>(bits + 2)))[wa];
      auto v = (*eigenvectors2(fb, static_cast<unsigned>(bits + 2)))[wb];
      std::vector<Interval> out;
      for (const auto& x : u)
        for (const auto& y : v) out.push_back(sign * (x * y));
      return out;
    });
  }
  return std::nullopt;
}

}  // namespace detail

// Further problems used by the examples.

/// The circle example: f(ι(x)) = x - 1 for irrational x, x for rational x in [0, 1).
inline ProblemPtr circleProblem() {
  auto p = std::make_shared<MultiProblem>();
  p->id = "circle";
  p->inputSpace = SpaceDescriptor::realSigned();
  p->outputSpace = SpaceDescriptor::realSigned();
  p->outputLength = [](std::size_t d) { return d + 8; };
  p->domainCheck = [](const Name& x, std::size_t d) {
    auto px = x.prefix(d);
    if (!px) return DomainStatus::ConsistentSoFar;
    auto iv = decodeRealPrefix(*px);
    return iv && !iv->intersects(Interval(0, 1)) ? DomainStatus::DomainViolated : DomainStatus::ConsistentSoFar;
  };
  p->verify = [](const Name& x, const Prefix& cand, std::size_t d) {
    auto j = decodeRealPrefix(cand);
    auto px = x.prefix(d);
    if (!j || !px) return Verdict::Consistent;
    auto iv = decodeRealPrefix(*px);
    if (!iv) return Verdict::Consistent;
    Interval shifted = *iv - Interval(1);
    return detail::refutedIf(!j->intersects(*iv) && !j->intersects(shifted));
  };
  return p;
}

/// Identity on Cantor space (unique advice examples).
inline ProblemPtr identityProblem() {
  auto p = std::make_shared<MultiProblem>();
  p->id = "id_Cantor";
  p->inputSpace = SpaceDescriptor::cantor();
  p->outputSpace = SpaceDescriptor::cantor();
  p->outputLength = [](std::size_t d) { return d; };
  p->domainCheck = [](const Name&, std::size_t) { return DomainStatus::ConsistentSoFar; };
  p->verify = [](const Name& x, const Prefix& cand, std::size_t d) {
    auto px = x.prefix(std::min(d, cand.size()));
    if (!px) return Verdict::Consistent;
    return detail::refutedIf(!isPrefixOf(*px, cand));
  };
  p->oracleVariants = {"exact"};
  p->oracle = [](const Fixture& f, std::size_t) -> std::optional<Name> { return f.name; };
  return p;
}

/// Single-valued problem of a total machine m: the only answer is m(x).
inline ProblemPtr machineProblem(MachinePtr m) {
  auto p = std::make_shared<MultiProblem>();
  p->id = "fn:" + m->id();
  p->inputSpace = SpaceDescriptor::cantor();
  p->outputSpace = SpaceDescriptor::cantor();
  p->outputLength = [](std::size_t d) { return d; };
  p->domainCheck = [](const Name&, std::size_t) { return DomainStatus::ConsistentSoFar; };
  p->verify = [m](const Name& x, const Prefix& cand, std::size_t d) {
    auto px = x.prefix(d);
    if (!px) return Verdict::Consistent;
    auto out = m->step(*px);
    std::size_t k = std::min(out.size(), cand.size());
    for (std::size_t i = 0; i < k; ++i)
      if (out[i] != cand[i]) return Verdict::Refuted;
    return Verdict::Consistent;
  };
  p->oracleVariants = {"exact"};
  p->oracle = [m](const Fixture& f, std::size_t) -> std::optional<Name> { return Name::generated(m, f.name); };
  return p;
}

/// cond-flip: ⟨x, y⟩ ↦ y if x = 0^ω, else the bitwise complement of y.
inline Name condFlip(const Name& x, const Name& y) {
  auto z = isZeroName(x);
  if (!z) throw std::invalid_argument("cond-flip needs an eventually periodic x");
  if (*z) return y;
  if (const auto* py = y.asPeriodic()) {
    auto flip = [](Prefix w) {
      for (auto& s : w) s = 1 - s;
      return w;
    };
    return Name::periodic(Alphabet::binary(), flip(py->prefix), flip(py->period));
  }
  return Name::generated(bitflipMachine(), y);
}

inline ProblemPtr condFlipProblem() {
  auto p = std::make_shared<MultiProblem>();
  p->id = "cond-flip";
  p->inputSpace = SpaceDescriptor::product(SpaceDescriptor::cantor(), SpaceDescriptor::cantor());
  p->outputSpace = SpaceDescriptor::cantor();
  p->outputLength = [](std::size_t d) { return d; };
  p->domainCheck = [](const Name&, std::size_t) { return DomainStatus::ConsistentSoFar; };
  p->verify = [](const Name& x, const Prefix& cand, std::size_t d) {
    auto c = componentPrefixes(x, 2, d);
    if (!c) return Verdict::Consistent;
    const Prefix& px = (*c)[0];
    const Prefix& py = (*c)[1];
    std::size_t k = std::min(cand.size(), py.size());
    bool matchesY = true, matchesFlip = true;
    for (std::size_t i = 0; i < k; ++i) {
      if (cand[i] != py[i]) matchesY = false;
      if (cand[i] != 1 - py[i]) matchesFlip = false;
    }
    // A visible 1 in x rules out the unflipped answer.
    if (containsOne(px)) matchesY = false;
    return detail::refutedIf(!matchesY && !matchesFlip);
  };
  p->oracleVariants = {"exact"};
  p->oracle = [](const Fixture& f, std::size_t) -> std::optional<Name> {
    auto [x, y] = unpairName(f.name);
    return condFlip(x, y);
  };
  return p;
}

/// LPO applied to cond-flip's output: the composed problem of the composition example.
inline ProblemPtr lpoAfterCondFlipProblem() {
  auto p = std::make_shared<MultiProblem>();
  p->id = "LPO.cond-flip";
  p->inputSpace = SpaceDescriptor::product(SpaceDescriptor::cantor(), SpaceDescriptor::cantor());
  p->outputSpace = SpaceDescriptor::finite(2);
  p->domainCheck = [](const Name&, std::size_t) { return DomainStatus::ConsistentSoFar; };
  p->verify = [](const Name& x, const Prefix& cand, std::size_t d) {
    if (cand.empty()) return Verdict::Consistent;
    if (cand[0] > 1) return Verdict::Refuted;
    if (cand[0] == 1) return Verdict::Consistent;
    auto c = componentPrefixes(x, 2, d);
    if (!c) return Verdict::Consistent;
    const Prefix& px = (*c)[0];
    const Prefix& py = (*c)[1];
    bool yHasOne = containsOne(py);
    bool flipHasOne = std::find(py.begin(), py.end(), Symbol{0}) != py.end();
    // Answer 0 claims cond-flip(x, y) = 0^ω.
    if (containsOne(px)) return detail::refutedIf(flipHasOne);
    return detail::refutedIf(yHasOne && flipHasOne);
  };
  p->oracleVariants = {"exact"};
  p->oracle = [](const Fixture& f, std::size_t) -> std::optional<Name> {
    auto [x, y] = unpairName(f.name);
    auto zx = isZeroName(x);
    const auto* py = y.asPeriodic();
    if (!zx || !py) return std::nullopt;
    auto all = [py](Symbol v) {
      return std::all_of(py->prefix.begin(), py->prefix.end(), [v](Symbol s) { return s == v; }) &&
             std::all_of(py->period.begin(), py->period.end(), [v](Symbol s) { return s == v; });
    };
    bool zeroOut = *zx ? all(0) : all(1);
    return natName(zeroOut ? 0 : 1);
  };
  return p;
}

// Running verifiers on names.

/// Verdict of a candidate name at depth d: Refuted if any probe refutes.
inline Verdict verifyName(const MultiProblem& p, const Name& x, const Name& candidate, std::size_t depth,
                          Fuel& fuel) {
  auto cand = candidate.prefix(p.outputLength(depth), fuel);
  if (!cand) return Verdict::Consistent;
  return p.verify(x, *cand, depth);
}

/// Consistent at every probed depth up to `depth`.
inline bool consistentUpTo(const MultiProblem& p, const Name& x, const Prefix& cand, std::size_t depth,
                           std::size_t stride = 8) {
  for (std::size_t d = 0; d <= depth; d += stride)
    if (p.verify(x, cand, d) == Verdict::Refuted) return false;
  return p.verify(x, cand, depth) == Verdict::Consistent;
}

}  // namespace advice_kit
