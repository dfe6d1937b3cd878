#include <gtest/gtest.h>

#include <map>

#include "advice_kit/random.hpp"

using namespace advice_kit;

namespace {

Symbol firstSymbol(const Name& n) {
  Fuel fuel(defaultFuel());
  return *n.at(0, fuel);
}

Name bitsName(Prefix pre, Prefix period = {0}) { return Name::periodic(Alphabet::binary(), pre, period); }

// Stage-D mass of the fat Cantor part below [w]: the cell reached after |w|
// stages, minus the 2^(stage-|w|-1) gaps of length 4^-stage cut at each later stage.
Rational fatCantorMassBelow(const Prefix& w, std::size_t depth) {
  Interval cell(0, 1);
  for (std::size_t stage = 1; stage <= w.size(); ++stage) {
    Rational gap = pow2(-2 * static_cast<long>(stage));
    Rational mid = cell.midpoint();
    cell = w[stage - 1] == 0 ? Interval(cell.lo(), mid - gap / 2) : Interval(mid + gap / 2, cell.hi());
  }
  Rational mass = cell.width();
  for (std::size_t stage = w.size() + 1; stage <= depth; ++stage)
    mass -= pow2(static_cast<long>(stage - w.size() - 1)) * pow2(-2 * static_cast<long>(stage));
  return mass;
}

}  // namespace

TEST(RandomBits, DeterministicPerSeedAndStream) {
  RandomBits a(1, 7), b(1, 7), c(2, 7), d(1, 8);
  int diffSeed = 0, diffStream = 0;
  for (std::size_t i = 0; i < 256; ++i) {
    EXPECT_EQ(a(i), b(i));
    diffSeed += a(i) != c(i);
    diffStream += a(i) != d(i);
  }
  EXPECT_GT(diffSeed, 64);
  EXPECT_GT(diffStream, 64);
}

TEST(NatGeometric, HandExamples) {
  auto m = MeasureSpec::natGeometric();
  EXPECT_EQ(firstSymbol(sampleAdvice(m, bitsOf(bitsName({})))), 0u);
  EXPECT_EQ(firstSymbol(sampleAdvice(m, bitsOf(bitsName({1, 1, 0})))), 2u);
  EXPECT_EQ(firstSymbol(sampleAdvice(m, bitsOf(bitsName({0, 1, 1})))), 0u);
}

TEST(NatGeometric, FrequenciesWithinThreeSigma) {
  constexpr std::uint64_t kTrials = 100000;
  auto m = MeasureSpec::natGeometric();
  std::map<Symbol, std::uint64_t> counts;
  for (std::uint64_t t = 0; t < kTrials; ++t) {
    RandomBits bits(11, t);
    ++counts[firstSymbol(sampleAdvice(m, bits))];
  }
  for (Symbol n = 0; n <= 8; ++n)
    EXPECT_TRUE(withinThreeSigma(counts[n], kTrials, toDouble(natGeometricMass(n)))) << "n=" << n;
}

TEST(CantorUniform, CylinderFrequency) {
  auto m = MeasureSpec::cantorUniform();
  auto est = monteCarlo(20000, 5, 1, [&](RandomBits bits) {
    Fuel fuel(defaultFuel());
    auto p = sampleAdvice(m, bits).prefix(2, fuel);
    return (*p)[0] == 1 && (*p)[1] == 0;
  });
  EXPECT_TRUE(est.covers(0.25)) << est.lo << " " << est.hi;
}

TEST(Wilson, KnownValues) {
  auto e = wilson99(50, 100);
  EXPECT_NEAR(e.point, 0.5, 1e-12);
  EXPECT_NEAR(e.lo, 0.3753, 1e-3);
  EXPECT_NEAR(e.hi, 0.6247, 1e-3);
  auto z = wilson99(0, 100);
  EXPECT_EQ(z.lo, 0.0);
  EXPECT_GT(z.hi, 0.0);
}

TEST(ParallelMap, IndexOrderedAcrossJobCounts) {
  auto sq = [](std::size_t i) { return static_cast<long>(i * i); };
  EXPECT_EQ(parallelMap<long>(1000, 1, sq), parallelMap<long>(1000, 8, sq));
  auto a = monteCarlo(5000, 3, 1, [](RandomBits b) { return b(0) == 1; });
  auto b = monteCarlo(5000, 3, 8, [](RandomBits b) { return b(0) == 1; });
  EXPECT_EQ(a.successes, b.successes);
}

TEST(BinaryExpansion, DyadicBothExpansions) {
  auto lower = binaryExpansion(Rational(1, 4));
  auto upper = binaryExpansion(Rational(1, 4), true);
  Fuel fuel(defaultFuel());
  EXPECT_EQ(*lower.prefix(5, fuel), (Prefix{0, 1, 0, 0, 0}));
  EXPECT_EQ(*upper.prefix(5, fuel), (Prefix{0, 0, 1, 1, 1}));
  auto third = binaryExpansion(Rational(1, 3));
  EXPECT_EQ(*third.prefix(6, fuel), (Prefix{0, 1, 0, 1, 0, 1}));
}

TEST(FatCantor, FirstStages) {
  auto s0 = buildFatCantor(0);
  EXPECT_EQ(s0.measureAtDepth, Rational(1));
  auto s1 = buildFatCantor(1);
  ASSERT_EQ(s1.intervals().size(), 2u);
  EXPECT_EQ(s1.interval(0).lo(), Rational(0));
  EXPECT_EQ(s1.interval(0).hi(), Rational(3, 8));
  EXPECT_EQ(s1.interval(1).lo(), Rational(5, 8));
  EXPECT_EQ(s1.measureAtDepth, Rational(3, 4));
}

TEST(FatCantor, MeasureFormulaUpToTwenty) {
  for (std::size_t d = 0; d <= 20; ++d)
    EXPECT_EQ(buildFatCantor(d).measureAtDepth, Rational(1, 2) + pow2(-static_cast<long>(d) - 1)) << d;
}

TEST(FatCantor, StagesAreNested) {
  auto outer = buildFatCantor(4), inner = buildFatCantor(5);
  for (std::size_t i = 0; i < inner.intervals().size(); ++i)
    EXPECT_TRUE(inner.interval(i).subsetOf(outer.interval(i / 2)));
}

TEST(FatCantor, CylinderMeasureMatchesStageLimit) {
  for (std::size_t n = 0; n <= 4; ++n) {
    for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) {
      Prefix w(n);
      for (std::size_t b = 0; b < n; ++b) w[b] = (i >> (n - 1 - b)) & 1;
      Rational expected = pow2(-static_cast<long>(n) - 1);
      EXPECT_EQ(phiInverseCylinderMeasure(w), expected);
      // m_D(w) = 2^(-n-1) + 2^(-n-D-1) at every finite stage D.
      for (std::size_t depth : {n + 1, n + 4, n + 9})
        EXPECT_EQ(fatCantorMassBelow(w, depth), expected + pow2(-static_cast<long>(n + depth) - 1));
    }
  }
}

TEST(ClosedMeasureBounds, Examples) {
  EXPECT_EQ(closedMeasureBounds(closedSetName({}), 8).upper, Rational(1));
  EXPECT_EQ(closedMeasureBounds(closedSetName({{0}}), 8).upper, Rational(1, 2));
  EXPECT_EQ(closedMeasureBounds(closedSetName({{0}, {0, 1}, {1, 1}}), 8).upper, Rational(1, 4));
  EXPECT_EQ(closedMeasureBounds(closedSetName({{0}}), 8).lower, Rational(0));
}

TEST(Transport, FullSpaceStaysFull) {
  Name full = closedSetName({});
  for (auto map : {TransportMap::Rho2Inverse, TransportMap::PhiForward}) {
    auto words = enumeratedWords(closedSetTransport(full, map), 12);
    EXPECT_TRUE(words.empty()) << toString(map);
  }
}

TEST(Transport, Rho2InverseOfUpperHalf) {
  // Removing (-1, 1/2) and (1, 3) leaves [1/2, 1] inside the unit interval.
  Name s = openSetOfBalls({RationalBall::between(Rational(-1), Rational(1, 2)),
                           RationalBall::between(Rational(1), Rational(3))});
  Name t = closedSetTransport(s, TransportMap::Rho2Inverse);
  Fuel fuel(defaultFuel());
  EXPECT_EQ(closedConsistentAtDepth(t, Prefix{0, 0}, 16, fuel), Membership::Excluded);
  EXPECT_EQ(closedConsistentAtDepth(t, Prefix{1, 0}, 16, fuel), Membership::Consistent);
  // 0111... names 1/2, which stays.
  EXPECT_EQ(closedConsistentAtDepth(t, Prefix{0, 1, 1, 1}, 16, fuel), Membership::Consistent);
}

TEST(Transport, PhiInverseOfCylinderZero) {
  // Image of [0] lies in [0, 3/8]; points right of it are excluded eventually.
  Name t = closedSetTransport(closedSetName({{1}}), TransportMap::PhiInverse);
  Fuel fuel(defaultFuel());
  EXPECT_EQ(closedRealConsistentAtDepth(t, Interval(Rational(1, 2)), 40, fuel), Membership::Excluded);
  EXPECT_EQ(closedRealConsistentAtDepth(t, Interval(Rational(-1, 8)), 40, fuel), Membership::Excluded);
  EXPECT_EQ(closedRealConsistentAtDepth(t, Interval(Rational(3, 8)), 40, fuel), Membership::Consistent);
  EXPECT_EQ(closedRealConsistentAtDepth(t, Interval(Rational(0)), 40, fuel), Membership::Consistent);
}

TEST(Samplers, LebesgueRealSignAndScale) {
  auto m = MeasureSpec::lebesgueReal();
  int negative = 0;
  for (std::uint64_t t = 0; t < 200; ++t) {
    Fuel fuel(defaultFuel());
    auto iv = realEnclosure(sampleAdvice(m, RandomBits(4, t)), 40, fuel);
    ASSERT_TRUE(iv);
    negative += iv->hi() < 0;
    EXPECT_LT(iv->width(), Rational(1, 16));
  }
  EXPECT_GT(negative, 60);
  EXPECT_LT(negative, 140);
}
