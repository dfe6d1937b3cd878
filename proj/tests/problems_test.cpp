#include <advice_kit/problems.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace advice_kit;

namespace {

Name bits(Prefix pre, Prefix per) { return Name::periodic(Alphabet::binary(), std::move(pre), std::move(per)); }

Prefix first(const Name& n, std::size_t k) { return *n.prefix(k); }

RationalMatrix randomIntMatrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  RationalMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

std::vector<Rational> exactProduct(const RationalMatrix& a, const std::vector<Rational>& v) {
  std::vector<Rational> out(a.rows(), Rational(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
  return out;
}

Name matrixName(const RationalMatrix& m) {
  std::vector<Name> parts;
  for (const auto& x : m.data()) parts.push_back(encodeRational(x));
  return tupleNames(parts);
}

}  // namespace

// Linear algebra.

TEST(RationalKernel, Examples) {
  auto v = rationalKernel(parseMatrix("0,1,0;0,1,1"));
  ASSERT_TRUE(v);
  EXPECT_EQ(*v, (std::vector<Rational>{1, 0, 0}));
  EXPECT_EQ(*rationalKernel(parseMatrix("1,0")), (std::vector<Rational>{0, 1}));
  EXPECT_EQ(*rationalKernel(parseMatrix("0,0")), (std::vector<Rational>{1, 0}));
  EXPECT_FALSE(rationalKernel(parseMatrix("1,0;0,1")));
}

TEST(RationalKernel, BasisVectorsAreExactAndIndependentOfRank) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 5;
    auto a = randomIntMatrix(rng, r, c, -2, 2);
    auto basis = kernelBasis(a);
    for (const auto& v : basis) {
      for (const auto& x : exactProduct(a, v)) EXPECT_EQ(x, 0);
      EXPECT_TRUE(std::any_of(v.begin(), v.end(), [](const Rational& x) { return x != 0; }));
    }
    // rank + nullity = columns; rank computed independently by fraction-free elimination.
    auto m = a;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < c && rank < r; ++col) {
      std::size_t piv = rank;
      while (piv < r && m(piv, col) == 0) ++piv;
      if (piv == r) continue;
      for (std::size_t j = 0; j < c; ++j) std::swap(m(rank, j), m(piv, j));
      for (std::size_t i = rank + 1; i < r; ++i) {
        Rational f = m(i, col) / m(rank, col);
        for (std::size_t j = 0; j < c; ++j) m(i, j) -= f * m(rank, j);
      }
      ++rank;
    }
    EXPECT_EQ(basis.size(), c - rank);
  }
}

TEST(SymmetricEigen2, DiagonalAndSwap) {
  auto d = eigenvectors2(parseMatrix("1,0;0,3"), 30);
  ASSERT_TRUE(d);
  // Eigenvectors are determined up to sign.
  EXPECT_TRUE((*d)[0][0].abs().contains(1) && (*d)[0][1].contains(0));
  EXPECT_TRUE((*d)[1][0].contains(0) && (*d)[1][1].abs().contains(1));
  auto s = eigenvectors2(parseMatrix("0,1;1,0"), 30);
  ASSERT_TRUE(s);
  // least eigenvalue -1: (1,-1)/sqrt2 up to sign
  auto prod = (*s)[0][0] * (*s)[0][1];
  EXPECT_TRUE(prod.contains(Rational(-1, 2)) || prod.width() < Rational(1, 1000));
  EXPECT_LT(prod.hi(), 0);
  EXPECT_FALSE(eigenvectors2(parseMatrix("2,0;0,2"), 30));
}

TEST(SymmetricEigen2, RandomResidualsContainZero) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    auto a = randomIntMatrix(rng, 2, 2, -5, 5);
    a(1, 0) = a(0, 1);
    auto vs = eigenvectors2(a, 40);
    if (!vs) {
      EXPECT_TRUE(a(0, 1) == 0 && a(0, 0) == a(1, 1));
      continue;
    }
    auto m = pointMatrix(a);
    for (const auto& v : *vs) {
      std::vector<Interval> vv{v[0], v[1]};
      EXPECT_FALSE(detail::eigenRefuted(m, vv));
      EXPECT_LT(v[0].width(), pow2(-39));
    }
  }
}

TEST(Jacobi, Examples) {
  auto d = jacobiEigen(toDouble(parseMatrix("3,0;0,1")), 1e-12);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_NEAR(d[0].value, 1.0, 1e-12);
  EXPECT_NEAR(d[1].value, 3.0, 1e-12);
  auto s = jacobiEigen(toDouble(parseMatrix("0,1;1,0")), 1e-12);
  EXPECT_NEAR(s[0].value, -1.0, 1e-12);
  EXPECT_NEAR(std::abs(s[0].vector[0]), std::sqrt(0.5), 1e-9);
  auto k = jacobiEigen(toDouble(kronecker(parseMatrix("1,1;1,2"), parseMatrix("0,1;1,0"))), 1e-12);
  ASSERT_EQ(k.size(), 4u);
  // Products of {(3-sqrt5)/2, (3+sqrt5)/2} and {-1, 1}.
  double a = (3 - std::sqrt(5.0)) / 2, b = (3 + std::sqrt(5.0)) / 2;
  std::vector<double> want{-b, -a, a, b};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(k[i].value, want[i], 1e-9);
}

TEST(Jacobi, ResidualProperty) {
  std::mt19937_64 rng(9);
  const double tol = std::ldexp(1.0, -40);
  for (int t = 0; t < 100; ++t) {
    std::size_t n = 2 + rng() % 4;
    auto a = randomIntMatrix(rng, n, n, -4, 4);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) a(i, j) = a(j, i);
    auto m = toDouble(a);
    auto pairs = jacobiEigen(m, tol);
    double scale = 0;
    for (double x : m.data()) scale = std::max(scale, std::abs(x));
    for (const auto& p : pairs) {
      double norm = 0;
      for (double x : p.vector) norm += x * x;
      EXPECT_NEAR(norm, 1.0, 1e-9);
      for (std::size_t i = 0; i < n; ++i) {
        double r = -p.value * p.vector[i];
        for (std::size_t j = 0; j < n; ++j) r += m(i, j) * p.vector[j];
        EXPECT_LE(std::abs(r), 10 * tol * std::max(1.0, scale) * n);
      }
    }
    for (std::size_t i = 1; i < pairs.size(); ++i) EXPECT_LE(pairs[i - 1].value, pairs[i].value);
  }
}

TEST(Kronecker, MixedProductProperty) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    auto a = randomIntMatrix(rng, 2, 2, -3, 3), b = randomIntMatrix(rng, 2, 2, -3, 3);
    std::vector<Rational> u{Rational(static_cast<long>(rng() % 7) - 3), 1}, v{2, Rational(static_cast<long>(rng() % 5))};
    auto lhs = multiply(kronecker(a, b), kronecker(u, v));
    auto rhs = kronecker(multiply(a, u), multiply(b, v));
    EXPECT_EQ(lhs, rhs);
  }
}

// Reading inputs.

TEST(ExactRealValue, MatchesEncodeRational) {
  for (auto q : {Rational(0), Rational(1, 2), Rational(-3), Rational(1, 3), Rational(-22, 7), Rational(5, 12)}) {
    auto v = exactRealValue(encodeRational(q));
    ASSERT_TRUE(v) << q;
    EXPECT_EQ(*v, q);
  }
}

TEST(ComponentPrefixes, TupleAndInterleavedAgree) {
  Name a = bits({1}, {0}), b = bits({}, {1, 0});
  Name t = Name::tuple({a, b});
  Name flat = tupleNames({a, b});
  auto c1 = componentPrefixes(t, 2, 5), c2 = componentPrefixes(flat, 2, 5);
  ASSERT_TRUE(c1 && c2);
  EXPECT_EQ(*c1, *c2);
  EXPECT_EQ((*c1)[0], (Prefix{1, 0, 0, 0, 0}));
  EXPECT_EQ((*c1)[1], (Prefix{1, 0, 1, 0, 1}));
}

// LPO family.

TEST(Lpo, VerifierAndOracle) {
  auto p = lpoProblem();
  Name z = Name::zeros(), one = bits({0, 0, 0, 1}, {0});
  EXPECT_EQ(p->verify(z, {0}, 100), Verdict::Consistent);
  EXPECT_EQ(p->verify(one, {0}, 3), Verdict::Consistent);
  EXPECT_EQ(p->verify(one, {0}, 4), Verdict::Refuted);
  EXPECT_EQ(p->verify(one, {1}, 100), Verdict::Consistent);
  EXPECT_EQ(first(*p->oracle({z, {}, "z"}, 0), 1), Prefix{0});
  EXPECT_EQ(first(*p->oracle({one, {}, "one"}, 0), 1), Prefix{1});
}

TEST(Lpo, VerifierIsMonotoneInDepth) {
  auto p = lpoPowerProblem(3);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 200; ++t) {
    std::vector<Name> parts;
    for (int i = 0; i < 3; ++i) {
      Prefix pre(rng() % 6);
      for (auto& s : pre) s = rng() % 4 == 0;
      parts.push_back(bits(pre, {0}));
    }
    Name x = tupleNames(parts);
    Prefix cand{rng() % 2, rng() % 2, rng() % 2};
    bool refuted = false;
    for (std::size_t d = 0; d < 12; ++d) {
      bool r = p->verify(x, cand, d) == Verdict::Refuted;
      EXPECT_TRUE(!refuted || r);
      refuted = r;
    }
    auto oracle = first(*p->oracle({x, {}, ""}, 0), 3);
    EXPECT_TRUE(consistentUpTo(*p, x, oracle, 16, 1));
  }
}

TEST(Llpo, DomainAndVerifier) {
  auto p = llpoProblem();
  Name ok = pairNames(bits({0, 1}, {0}), Name::zeros());
  Name bad = pairNames(bits({1}, {0}), bits({0, 1}, {0}));
  EXPECT_EQ(p->domainCheck(ok, 10), DomainStatus::ConsistentSoFar);
  EXPECT_EQ(p->domainCheck(bad, 1), DomainStatus::ConsistentSoFar);
  EXPECT_EQ(p->domainCheck(bad, 2), DomainStatus::DomainViolated);
  // Several ones on a single side stay in the domain.
  Name manyOnes = pairNames(bits({1, 1, 0, 1}, {1}), Name::zeros());
  EXPECT_EQ(p->domainCheck(manyOnes, 16), DomainStatus::ConsistentSoFar);
  EXPECT_EQ(p->verify(ok, {0}, 10), Verdict::Refuted);
  EXPECT_EQ(p->verify(ok, {1}, 10), Verdict::Consistent);
  EXPECT_EQ(first(*p->oracle({ok, {}, ""}, 0), 1), Prefix{1});
  Name both = pairNames(Name::zeros(), Name::zeros());
  EXPECT_EQ(first(*p->oracle({both, {}, ""}, 0), 1), Prefix{0});
  EXPECT_EQ(first(*p->oracle({both, {}, ""}, 1), 1), Prefix{1});
  EXPECT_THROW(p->oracle({bad, {}, ""}, 0), DomainViolated);
}

TEST(Llpo, PowerSplitsPairs) {
  auto p = llpoPowerProblem(2);
  Name pair0 = pairNames(Name::zeros(), bits({1}, {0}));
  Name pair1 = pairNames(bits({0, 0, 1}, {0}), Name::zeros());
  Name x = tupleNames({pair0, pair1});
  EXPECT_EQ(p->verify(x, {0, 1}, 10), Verdict::Consistent);
  EXPECT_EQ(p->verify(x, {1, 1}, 10), Verdict::Refuted);
  EXPECT_EQ(p->verify(x, {0, 0}, 2), Verdict::Consistent);
  EXPECT_EQ(p->verify(x, {0, 0}, 3), Verdict::Refuted);
}

TEST(Mlpo, OracleReturnsOneBasedZeroIndex) {
  auto p = mlpoProblem(3);
  Name x = tupleNames({encodeRational(1), encodeRational(0), encodeRational(0)});
  EXPECT_EQ(first(*p->oracle({x, {}, ""}, 0), 1), Prefix{2});
  EXPECT_EQ(first(*p->oracle({x, {}, ""}, 1), 1), Prefix{3});
  EXPECT_EQ(p->verify(x, {1}, 20), Verdict::Refuted);
  EXPECT_EQ(p->verify(x, {2}, 20), Verdict::Consistent);
  EXPECT_EQ(p->verify(x, {4}, 20), Verdict::Refuted);
  Name none = tupleNames({encodeRational(1), encodeRational(-1), encodeRational(Rational(1, 2))});
  EXPECT_EQ(p->domainCheck(none, 20), DomainStatus::DomainViolated);
  EXPECT_THROW(p->oracle({none, {}, ""}, 0), DomainViolated);
}

TEST(SolveLpoFamily, ReferenceAnswers) {
  EXPECT_EQ(solveLpoFamily(LpoKind::Lpo, Name::zeros(), 1, 1), Prefix{0});
  Name x = tupleNames({Name::zeros(), bits({1}, {0}), Name::zeros()});
  EXPECT_EQ(solveLpoFamily(LpoKind::LpoN, x, 3, 3), (Prefix{0, 1, 0}));
  EXPECT_EQ(solveLpoFamily(LpoKind::Lpo, bits({1}, {0}), 1, 4), (Prefix{1, 0, 0, 0}));
}

TEST(Sep, ExamplesAndOracle) {
  Name x = bits({1, 0, 0}, {0}), y = bits({0, 1, 0}, {0, 1});
  auto z = sepSolve(x, y, 6);
  EXPECT_EQ(z, (Prefix{1, 0, 0, 0, 0, 0}));
  auto p = sepProblem();
  Name in = pairNames(x, y);
  EXPECT_EQ(p->verify(in, z, 6), Verdict::Consistent);
  EXPECT_EQ(p->verify(in, {0}, 6), Verdict::Refuted);
  for (std::size_t v = 0; v < 2; ++v) {
    auto o = first(*p->oracle({in, {}, ""}, v), 40);
    EXPECT_EQ(p->verify(in, o, 40), Verdict::Consistent);
  }
  EXPECT_THROW(sepSolve(x, bits({1}, {0}), 3), DomainViolated);
}

TEST(Sep, VerifierIsAntitoneInCandidateExtension) {
  auto p = sepProblem();
  std::mt19937_64 rng(4);
  for (int t = 0; t < 100; ++t) {
    Prefix a(8), b(8);
    for (std::size_t i = 0; i < 8; ++i) {
      int r = rng() % 3;
      a[i] = r == 1;
      b[i] = r == 2;
    }
    Name in = pairNames(bits(a, {0}), bits(b, {0}));
    Prefix z(8);
    for (auto& s : z) s = rng() % 2;
    for (std::size_t k = 0; k < 8; ++k) {
      Prefix shortZ(z.begin(), z.begin() + k), longZ(z.begin(), z.begin() + k + 1);
      if (p->verify(in, shortZ, 8) == Verdict::Refuted) {
        EXPECT_EQ(p->verify(in, longZ, 8), Verdict::Refuted);
      }
    }
  }
}

// Choice problems.

TEST(ClosedChoiceCantor, CoverDetection) {
  EXPECT_TRUE(detail::cylindersCoverCantor({{0}, {1}}));
  EXPECT_TRUE(detail::cylindersCoverCantor({{0}, {1, 0}, {1, 1}}));
  EXPECT_FALSE(detail::cylindersCoverCantor({{0}, {1, 0}}));
  EXPECT_TRUE(detail::cylindersCoverCantor({{}}));
  EXPECT_FALSE(detail::cylindersCoverCantor({}));
}

TEST(ClosedChoiceCantor, VerifierUsesComplementEnumeration) {
  auto p = closedChoiceCantorProblem();
  Name c = closedSetName({{0}, {1, 1}});
  EXPECT_EQ(p->verify(c, {0, 1}, 5), Verdict::Refuted);
  EXPECT_EQ(p->verify(c, {1, 0, 1}, 5), Verdict::Consistent);
  EXPECT_EQ(p->domainCheck(c, 5), DomainStatus::ConsistentSoFar);
  Name all = closedSetName({{0}, {1}});
  EXPECT_EQ(p->domainCheck(all, 1), DomainStatus::ConsistentSoFar);
  EXPECT_EQ(p->domainCheck(all, 2), DomainStatus::DomainViolated);
}

TEST(ClosedChoiceNat, Verifier) {
  auto p = closedChoiceNatProblem();
  Name c = closedSetName({{0}, {2}});
  EXPECT_EQ(p->verify(c, {0}, 5), Verdict::Refuted);
  EXPECT_EQ(p->verify(c, {1}, 5), Verdict::Consistent);
  EXPECT_EQ(p->verify(c, {2}, 1), Verdict::Consistent);
  EXPECT_EQ(p->verify(c, {2}, 2), Verdict::Refuted);
}

// Linear algebra problems.

TEST(SEigen, OracleOutputsPassVerifier) {
  auto p = seigenProblem(2);
  for (auto text : {"1,2;2,1", "0,1;1,0", "3,0;0,1", "2,0;0,2", "1,1;1,2"}) {
    auto a = parseMatrix(text);
    Fixture f{matrixName(a), MatrixMeaning{a, {}}, text};
    EXPECT_EQ(p->domainCheck(f.name, 30), DomainStatus::ConsistentSoFar);
    for (std::size_t v = 0; v < p->oracleVariants.size(); ++v) {
      auto out = p->oracle(f, v);
      ASSERT_TRUE(out) << text;
      auto cand = out->prefix(p->outputLength(24));
      ASSERT_TRUE(cand);
      EXPECT_EQ(p->verify(f.name, *cand, 24), Verdict::Consistent) << text << " variant " << v;
    }
  }
}

TEST(SEigen, RefutesNonEigenvector) {
  auto p = seigenProblem(2);
  auto a = parseMatrix("1,2;2,1");
  Name x = matrixName(a);
  Name wrong = tupleNames({encodeRational(1), encodeRational(0)});
  EXPECT_EQ(p->verify(x, *wrong.prefix(p->outputLength(20)), 20), Verdict::Refuted);
  Name notUnit = tupleNames({encodeRational(1), encodeRational(1)});
  EXPECT_EQ(p->verify(x, *notUnit.prefix(p->outputLength(20)), 20), Verdict::Refuted);
}

TEST(SEigen, DomainViolatedForAsymmetricMatrix) {
  auto p = seigenProblem(2);
  EXPECT_EQ(p->domainCheck(matrixName(parseMatrix("1,2;3,1")), 20), DomainStatus::DomainViolated);
}

TEST(SEigen, KroneckerOracle) {
  auto p = seigenProblem(4);
  auto a = parseMatrix("1,1;1,2"), b = parseMatrix("0,1;1,0");
  auto k = kronecker(a, b);
  Fixture f{matrixName(k), MatrixMeaning{k, std::make_pair(a, b)}, "kron"};
  for (std::size_t v = 0; v < p->oracleVariants.size(); ++v) {
    auto out = p->oracle(f, v);
    ASSERT_TRUE(out);
    auto cand = out->prefix(p->outputLength(20));
    ASSERT_TRUE(cand);
    EXPECT_EQ(p->verify(f.name, *cand, 20), Verdict::Consistent);
  }
}

TEST(LinEq, OracleVariantsPassVerifier) {
  auto p = linEqProblem(2, 3);
  auto a = parseMatrix("1,2,3;2,4,6");
  Fixture f{matrixName(a), MatrixMeaning{a, {}}, "rank1"};
  for (std::size_t v = 0; v < 4; ++v) {
    auto out = p->oracle(f, v);
    ASSERT_TRUE(out);
    auto cand = out->prefix(p->outputLength(20));
    ASSERT_TRUE(cand);
    EXPECT_EQ(p->verify(f.name, *cand, 20), Verdict::Consistent);
  }
  Name bad = tupleNames({encodeRational(1), encodeRational(0), encodeRational(0)});
  EXPECT_EQ(p->verify(f.name, *bad.prefix(p->outputLength(20)), 20), Verdict::Refuted);
  auto full = parseMatrix("1,0,0;0,1,0;0,0,1");
  auto q = linEqProblem(3, 3);
  EXPECT_THROW(q->oracle({matrixName(full), MatrixMeaning{full, {}}, ""}, 0), DomainViolated);
}

// Other examples.

TEST(CondFlip, CompositionVerifier) {
  auto p = lpoAfterCondFlipProblem();
  Name zeroX = Name::zeros(), oneX = bits({1}, {0});
  Name ones = Name::constant(Alphabet::binary(), 1);
  EXPECT_EQ(first(*p->oracle({pairNames(zeroX, Name::zeros()), {}, ""}, 0), 1), Prefix{0});
  EXPECT_EQ(first(*p->oracle({pairNames(oneX, ones), {}, ""}, 0), 1), Prefix{0});
  EXPECT_EQ(first(*p->oracle({pairNames(oneX, Name::zeros()), {}, ""}, 0), 1), Prefix{1});
  EXPECT_EQ(p->verify(pairNames(oneX, Name::zeros()), {0}, 4), Verdict::Refuted);
  EXPECT_EQ(p->verify(pairNames(oneX, ones), {0}, 4), Verdict::Consistent);
  auto cf = condFlipProblem();
  EXPECT_EQ(cf->verify(pairNames(oneX, Name::zeros()), {0, 0}, 4), Verdict::Refuted);
  EXPECT_EQ(cf->verify(pairNames(oneX, Name::zeros()), {1, 1}, 4), Verdict::Consistent);
}

TEST(Circle, Verifier) {
  auto p = circleProblem();
  Name x = encodeRational(Rational(1, 3));
  EXPECT_EQ(p->verify(x, *encodeRational(Rational(1, 3)).prefix(30), 30), Verdict::Consistent);
  EXPECT_EQ(p->verify(x, *encodeRational(Rational(-2, 3)).prefix(30), 30), Verdict::Consistent);
  EXPECT_EQ(p->verify(x, *encodeRational(Rational(1, 7)).prefix(30), 30), Verdict::Refuted);
}
