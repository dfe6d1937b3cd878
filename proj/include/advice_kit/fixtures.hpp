#pragma once

// Random in-domain fixtures for the shipped problems.

#include "advice_kit/reductions.hpp"

namespace advice_kit::fixtures {

inline Rational randomRational(Rng& rng, long maxAbsNum, long maxDen) {
  long den = 1 + static_cast<long>(rng() % static_cast<std::uint64_t>(maxDen));
  long num = static_cast<long>(rng() % static_cast<std::uint64_t>(2 * maxAbsNum + 1)) - maxAbsNum;
  return ratio(num, den);
}

inline Prefix randomWord(Rng& rng, std::size_t len) {
  Prefix w(len);
  for (auto& s : w) s = rng() & 1;
  return w;
}

/// Eventually periodic Cantor name: zero, or first 1 at a random position.
inline Name randomCantorName(Rng& rng, bool zero) {
  if (zero) return Name::zeros();
  Prefix pre(rng() % 24, 0);
  pre.push_back(1);
  auto tail = randomWord(rng, rng() % 5);
  pre.insert(pre.end(), tail.begin(), tail.end());
  Prefix period = randomWord(rng, 1 + rng() % 4);
  return Name::periodic(Alphabet::binary(), pre, period);
}

/// LLPO input: at most one side contains a 1.
inline Fixture llpo(Rng& rng) {
  int kind = static_cast<int>(rng() % 3);
  Name x0 = randomCantorName(rng, kind != 1);
  Name x1 = randomCantorName(rng, kind != 2);
  static const char* labels[] = {"both-zero", "left-nonzero", "right-nonzero"};
  return {pairNames(x0, x1), {}, labels[kind]};
}

inline Name rationalVectorName(const std::vector<Rational>& v) {
  std::vector<Name> parts;
  for (const auto& q : v) parts.push_back(encodeRational(q));
  return tupleNames(parts);
}

inline Name matrixName(const RationalMatrix& a) {
  std::vector<Rational> v;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) v.push_back(a(i, j));
  return rationalVectorName(v);
}

inline RationalMatrix randomSymmetric2(Rng& rng) {
  for (;;) {
    Rational a = randomRational(rng, 6, 4), b = randomRational(rng, 6, 4), d = randomRational(rng, 6, 4);
    if (b != 0 || a != d) return RationalMatrix(2, 2, {a, b, b, d});
  }
}

/// Eigenvalue products λ_i μ_j pairwise distinct: every eigenvector of A ⊗ B is a pure tensor.
inline bool distinctProducts(const RationalMatrix& a, const RationalMatrix& b) {
  auto la = symmetricEigen2(pointMatrix(a), 96), lb = symmetricEigen2(pointMatrix(b), 96);
  if (la.undetermined || lb.undetermined) return false;
  std::vector<Interval> prods;
  for (const auto& x : la.pairs)
    for (const auto& y : lb.pairs) prods.push_back(x.value * y.value);
  for (std::size_t i = 0; i < prods.size(); ++i)
    for (std::size_t j = i + 1; j < prods.size(); ++j)
      if (prods[i].intersects(prods[j])) return false;
  return true;
}

inline Fixture seigenPair(Rng& rng) {
  for (;;) {
    auto a = randomSymmetric2(rng), b = randomSymmetric2(rng);
    if (!distinctProducts(a, b)) continue;
    MatrixMeaning m{kronecker(a, b), std::make_pair(a, b)};
    return {pairNames(matrixName(a), matrixName(b)), m, "symmetric pair"};
  }
}

/// n reals, at least one of them zero; nonzero entries may be tiny.
inline Fixture mlpo(Rng& rng, std::size_t n) {
  std::vector<Rational> v(n);
  for (auto& q : v) {
    switch (rng() % 4) {
      case 0: q = 0; break;
      case 1: q = pow2(-static_cast<long>(4 + rng() % 12)) * ((rng() & 1) ? 1 : -1); break;
      default: q = randomRational(rng, 5, 7); break;
    }
  }
  v[rng() % n] = 0;
  return {rationalVectorName(v), RealVectorMeaning{v}, "mlpo"};
}

/// Closed subset S of ℕ with finitely many members below 16, given by its complement.
inline Fixture closedNat(Rng& rng) {
  std::vector<Symbol> members;
  for (Symbol n = 0; n < 16; ++n)
    if (rng() % 5 == 0) members.push_back(n);
  if (members.empty()) members.push_back(rng() % 16);
  auto mem = std::make_shared<std::vector<Symbol>>(members);
  Name name = enumerationName("closed-nat", [mem](std::size_t i) -> std::optional<Prefix> {
    if (std::find(mem->begin(), mem->end(), i) != mem->end()) return std::nullopt;
    return Prefix{static_cast<Symbol>(i)};
  });
  ChoiceMeaning m;
  m.description = "finite subset of N";
  for (Symbol n : members) m.answers.push_back(natName(n));
  // Spread the adversarial answers: greatest member first.
  std::reverse(m.answers.begin(), m.answers.end());
  m.sample = [mem](Rng& r) { return natName((*mem)[r() % mem->size()]); };
  m.consistent = [mem](const Name& c, std::size_t) {
    Fuel fuel(defaultFuel());
    auto s = c.at(0, fuel);
    return !s || std::find(mem->begin(), mem->end(), *s) != mem->end();
  };
  return {name, std::move(m), "closed-nat"};
}

/// Complement of finitely many cylinders of length <= 4, not covering Cantor space.
inline Fixture positiveCantor(Rng& rng) {
  std::vector<Prefix> excluded;
  std::size_t count = rng() % 5;
  for (std::size_t i = 0; i < count; ++i) excluded.push_back(randomWord(rng, 1 + rng() % 4));
  auto blocked = [&](const Prefix& w) {
    for (const auto& u : excluded)
      if (isPrefixOf(u, w)) return true;
    return false;
  };
  std::vector<Prefix> leaves;
  for (std::size_t i = 0; i < 32; ++i) {
    Prefix w(5);
    for (std::size_t b = 0; b < 5; ++b) w[b] = (i >> (4 - b)) & 1;
    if (!blocked(w)) leaves.push_back(w);
  }
  if (leaves.empty()) return positiveCantor(rng);
  ChoiceMeaning m;
  m.description = "complement of " + std::to_string(excluded.size()) + " cylinders";
  m.measure = ratio(static_cast<long>(leaves.size()), 32);
  for (std::size_t k : {std::size_t{0}, leaves.size() - 1, leaves.size() / 2}) {
    m.answers.push_back(Name::periodic(Alphabet::binary(), leaves[k], {k % 2}));
  }
  m.answers.push_back(Name::periodic(Alphabet::binary(), leaves.back(), {0, 1}));
  m.sample = [leaves](Rng& r) {
    return Name::periodic(Alphabet::binary(), leaves[r() % leaves.size()], randomWord(r, 1 + r() % 8));
  };
  auto ex = excluded;
  m.consistent = [ex](const Name& c, std::size_t d) {
    Fuel fuel(defaultFuel());
    auto p = c.prefix(d, fuel);
    if (!p) return true;
    for (const auto& u : ex)
      if (isPrefixOf(u, *p)) return false;
    return true;
  };
  return {closedSetName(excluded), std::move(m), "positive-cantor"};
}

/// Closed set given as a finite union of disjoint rational intervals: inner gaps
/// first, then the two rays in widening balls.
inline Name unionOfPiecesName(const std::vector<Interval>& pieces) {
  auto ps = std::make_shared<std::vector<Interval>>(pieces);
  return enumerationName("pieces", [ps](std::size_t i) -> std::optional<Prefix> {
    std::size_t gaps = ps->size() - 1;
    if (i < gaps) return ballWord(RationalBall::between((*ps)[i].hi(), (*ps)[i + 1].lo()));
    std::size_t t = (i - gaps) / 2;
    Rational reach = pow2(static_cast<long>(t) + 1);
    if ((i - gaps) % 2 == 0) return ballWord(RationalBall::between(ps->front().lo() - reach, ps->front().lo()));
    return ballWord(RationalBall::between(ps->back().hi(), ps->back().hi() + reach));
  });
}

/// Union of 1-3 disjoint rational intervals of positive length inside [0, 1].
inline Fixture positiveInterval(Rng& rng) {
  std::size_t k = 1 + rng() % 3;
  std::vector<Rational> cuts;
  while (cuts.size() < 2 * k) {
    Rational q = ratio(static_cast<long>(rng() % 65), 64);
    if (std::find(cuts.begin(), cuts.end(), q) == cuts.end()) cuts.push_back(q);
  }
  std::sort(cuts.begin(), cuts.end());
  ChoiceMeaning m;
  m.description = "union of " + std::to_string(k) + " intervals";
  Rational total = 0;
  for (std::size_t i = 0; i < k; ++i) {
    Interval piece(cuts[2 * i], cuts[2 * i + 1]);
    m.pieces.push_back(piece);
    total += piece.width();
    for (const auto& q : {piece.lo(), piece.hi(), piece.midpoint()}) {
      m.points.push_back(q);
      m.answers.push_back(encodeRational(q));
    }
  }
  m.measure = total;
  auto pieces = m.pieces;
  m.sample = [pieces](Rng& r) {
    const auto& p = pieces[r() % pieces.size()];
    Rational u(static_cast<long>(r() >> 24), 1);
    u /= pow2(40);
    return encodeRational(p.lo() + u * p.width());
  };
  return {unionOfPiecesName(m.pieces), std::move(m), "positive-interval"};
}

/// Random source fixture for a shipped witness.
inline Fixture forWitness(const ReductionWitness& w, Rng& rng) {
  const std::string& id = w.from->id;
  if (id == "LLPO") return llpo(rng);
  if (id.rfind("MLPO_", 0) == 0) return mlpo(rng, std::stoul(id.substr(5)));
  if (id == "C_N") return closedNat(rng);
  if (id == "PC_Cantor") return positiveCantor(rng);
  if (id == "PC_I") return positiveInterval(rng);
  if (id.rfind("SEigen_2xSEigen_2", 0) == 0) return seigenPair(rng);
  throw std::invalid_argument("no fixture generator for " + id);
}

}  // namespace advice_kit::fixtures

namespace advice_kit {

struct ReductionCheck {
  Verdict verdict = Verdict::Consistent;
  bool diverged = false;
  std::size_t symbols = 0;
};

/// Runs F⟨x, G(K(x))⟩ for the depth-d output length and verifies it against the source problem.
inline ReductionCheck checkReduction(const ReductionWitness& w, const Solver& g, const Fixture& x, std::size_t depth) {
  std::size_t k = w.from->outputLength(depth);
  auto run = applyReduction(w, g, x, k);
  ReductionCheck c;
  c.diverged = run.diverged || run.output.size() < k;
  c.symbols = run.output.size();
  c.verdict = w.from->verify(x.name, run.output, depth);
  return c;
}

}  // namespace advice_kit
