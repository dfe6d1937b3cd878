#include <gtest/gtest.h>

#include "advice_kit/catalog.hpp"

using namespace advice_kit;

namespace {

Name cantor(Prefix pre, Prefix period = {0}) { return Name::periodic(Alphabet::binary(), pre, period); }

Interval outputEnclosure(const AdviceMachine& am, const Name& x, const Name& w, std::size_t symbols) {
  auto r = runWithAdvice(am, x, w, symbols);
  EXPECT_FALSE(r.diverged);
  auto iv = decodeRealPrefix(r.output);
  EXPECT_TRUE(iv);
  return iv ? *iv : Interval(-1000, 1000);
}

// Every representative of A_x succeeds on every fixture.
void expectRepresentativesSucceed(const AdviceMachinePtr& am, std::size_t fixtures, std::size_t depth,
                                  std::uint64_t seed) {
  Rng rng(seed);
  for (std::size_t i = 0; i < fixtures; ++i) {
    Fixture x = am->fixtures(rng);
    AdviceSet a = am->adviceFamily(x);
    ASSERT_FALSE(a.representatives.empty()) << am->id;
    for (const auto& w : a.representatives) {
      EXPECT_TRUE(a.contains(w, depth)) << am->id << " " << x.label;
      EXPECT_TRUE(adviceRunSucceeds(*am, x, w, depth)) << am->id << " fixture " << i << " (" << x.label << ")";
    }
    Name s = a.sample(rng);
    EXPECT_TRUE(adviceRunSucceeds(*am, x, s, depth)) << am->id << " sampled advice on " << x.label;
  }
}

}  // namespace

TEST(AdviceScheme, ParsesLiterals) {
  EXPECT_EQ(parseAdviceScheme("advice:finite:3").space.toString(), SpaceDescriptor::finite(3).toString());
  EXPECT_EQ(parseAdviceScheme("advice:closed-effective:nat").family, AdviceFamilyKind::EffectiveClosed);
  auto r = parseAdviceScheme("advice:random-cantor");
  ASSERT_TRUE(r.measure);
  EXPECT_EQ(r.measure->kind, MeasureKind::CantorUniform);
  EXPECT_THROW(parseAdviceScheme("advice:finite"), std::invalid_argument);
  EXPECT_THROW(parseAdviceScheme("random-cantor"), std::invalid_argument);
}

TEST(AdviceScheme, MeasureMustLiveOnAdviceSpace) {
  AdviceScheme s{SpaceDescriptor::nat(), AdviceFamilyKind::RandomPositive, MeasureSpec::cantorUniform()};
  EXPECT_THROW(s.validate(), SchemeMismatch);
  AdviceScheme t{SpaceDescriptor::nat(), AdviceFamilyKind::RandomPositive, std::nullopt};
  EXPECT_THROW(t.validate(), SchemeMismatch);
}

TEST(Circle, RationalThirdKeepsValue) {
  auto am = circleAdviceMachine();
  auto iv = outputEnclosure(*am, encodeRational(Rational(1, 3)), natName(1), 40);
  EXPECT_TRUE(iv.contains(Rational(1, 3)));
  EXPECT_LT(iv.width(), Rational(1, 1000));
}

TEST(Circle, SqrtTwoMinusOneShiftsDown) {
  auto am = circleAdviceMachine();
  Name x = computableRealName("sqrt2-1", 0, [](std::size_t bits) {
    return sqrtEnclosure(Rational(2), static_cast<unsigned>(bits)) - Interval(1);
  });
  auto iv = outputEnclosure(*am, x, natName(0), 40);
  // √2 - 2 ∈ (-0.5858, -0.5857)
  EXPECT_TRUE(iv.subsetOf(Interval(ratio(-5858, 10000), ratio(-5857, 10000)))) << iv.lo() << " " << iv.hi();
}

TEST(Circle, RepresentativesSucceed) { expectRepresentativesSucceed(circleAdviceMachine(), 20, 24, 1); }

TEST(Catalog, ShippedMachinesSucceedWithTheirAdvice) {
  std::uint64_t seed = 100;
  for (const auto& id : shippedAdviceMachineIds()) {
    SCOPED_TRACE(id);
    auto am = adviceMachineById(id);
    EXPECT_NO_THROW(am->scheme.validate());
    expectRepresentativesSucceed(am, 8, 24, seed++);
  }
}

TEST(Catalog, UnknownIdThrows) { EXPECT_THROW(adviceMachineById("nope"), std::invalid_argument); }

TEST(LpoCount, WrongCountStalls) {
  auto am = lpoCountAdviceMachine(2);
  Name x = tupleNames({Name::zeros(), cantor({0, 1})});
  auto good = runWithAdvice(*am, x, natName(1), 2);
  EXPECT_EQ(good.output, (Prefix{0, 1}));
  Fuel fuel(20000);
  auto bad = runWithAdvice(*am, x, natName(0), 2, fuel);
  EXPECT_TRUE(bad.diverged);
}

TEST(CondFlip, AdviceSelectsBranch) {
  auto am = condFlipAdviceMachine();
  Name x = pairNames(cantor({1}), cantor({0, 1}, {1, 0}));
  EXPECT_EQ(runWithAdvice(*am, x, natName(1), 4).output, (Prefix{1, 0, 0, 1}));
  EXPECT_EQ(runWithAdvice(*am, x, natName(0), 4).output, (Prefix{0, 1, 1, 0}));
}

TEST(Compose, LpoAfterCondFlip) {
  auto am = composeAdviceMachines(lpoAdviceMachine(), condFlipAdviceMachine(), lpoAfterCondFlipProblem());
  EXPECT_EQ(am->scheme.space.toString(),
            SpaceDescriptor::product(SpaceDescriptor::finite(2), SpaceDescriptor::finite(2)).toString());
  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    Fixture x = fixtures::condFlip(rng);
    AdviceSet a = am->adviceFamily(x);
    ASSERT_FALSE(a.representatives.empty());
    for (const auto& w : a.representatives) {
      EXPECT_TRUE(adviceRunSucceeds(*am, x, w, 48)) << x.label << " " << i;
      // Single-valued composite: agrees with the exact answer.
      auto r = runWithAdvice(*am, x.name, w, 1);
      ASSERT_EQ(r.output.size(), 1u);
      Fuel fuel(defaultFuel());
      EXPECT_EQ(r.output[0], *am->problem->oracle(x, 0)->at(0, fuel));
    }
  }
}

TEST(Compose, NonInjectiveInnerSpaceIsRejected) {
  auto inner = std::make_shared<AdviceMachine>(*condFlipAdviceMachine());
  inner->scheme.space = SpaceDescriptor::realSigned();
  EXPECT_THROW(composeAdviceMachines(lpoAdviceMachine(), inner, lpoAfterCondFlipProblem()), SchemeMismatch);
}

TEST(Product, LlpoSquaredSolvesLlpoPower) {
  auto am = productAdviceMachines(llpoAdviceMachine(), llpoAdviceMachine(), ProductMode::Product,
                                  llpoPowerProblem(2));
  Rng rng(8);
  for (int i = 0; i < 30; ++i) {
    Fixture x = am->fixtures(rng);
    for (const auto& w : am->adviceFamily(x).representatives) {
      auto r = runWithAdvice(*am, x.name, w, 2);
      ASSERT_EQ(r.output.size(), 2u);
      EXPECT_EQ(am->problem->verify(x.name, r.output, 48), Verdict::Consistent) << x.label;
    }
  }
}

TEST(Product, CantorUniformFactorsGiveCantorUniform) {
  auto am = productAdviceMachines(pcCantorAdviceMachine(), pcCantorAdviceMachine(), ProductMode::Product);
  ASSERT_TRUE(am->scheme.measure);
  EXPECT_EQ(am->scheme.measure->kind, MeasureKind::CantorUniform);
  Rng rng(9);
  Fixture x = am->fixtures(rng);
  auto a = am->adviceFamily(x);
  const auto [l, r] = splitProductFixture(x);
  auto ml = std::any_cast<ChoiceMeaning>(l.meaning).measure, mr = std::any_cast<ChoiceMeaning>(r.meaning).measure;
  ASSERT_TRUE(a.measure && ml && mr);
  EXPECT_EQ(*a.measure, *ml * *mr);
}

TEST(Coproduct, LeftSideBehavesLikeLeftMachine) {
  auto f = llpoAdviceMachine();
  auto am = productAdviceMachines(f, lpoAdviceMachine(), ProductMode::Coproduct);
  Rng rng(10);
  for (int i = 0; i < 20; ++i) {
    Fixture inner = fixtures::llpo(rng);
    Fixture x = coproductFixture(0, inner);
    for (const auto& w : f->adviceFamily(inner).representatives) {
      auto direct = runWithAdvice(*f, inner.name, w, 1);
      auto tagged = runWithAdvice(*am, x.name, prependSymbol(0, w), 2);
      ASSERT_EQ(tagged.output.size(), 2u);
      EXPECT_EQ(tagged.output[0], 0u);
      EXPECT_EQ(tagged.output[1], direct.output[0]);
      EXPECT_TRUE(adviceRunSucceeds(*am, x, prependSymbol(0, w), 48));
    }
  }
  expectRepresentativesSucceed(am, 20, 32, 11);
}

TEST(ChangeSpace, LeadingOnesAndFirstBit) {
  auto viaOnes = changeAdviceSpace(lpoCountAdviceMachine(2), leadingOnesMachine(), SpaceDescriptor::cantor(),
                                   pullbackLeadingOnes);
  expectRepresentativesSucceed(viaOnes, 20, 24, 12);
  auto viaBit = changeAdviceSpace(llpoAdviceMachine(), firstBitMachine(), SpaceDescriptor::cantor(), pullbackFirstBit);
  expectRepresentativesSucceed(viaBit, 20, 24, 13);
  // 1 1 0 ... names the count 2.
  Name x = tupleNames({Name::zeros(), Name::zeros()});
  EXPECT_EQ(runWithAdvice(*viaOnes, x, cantor({1, 1, 0}), 2).output, (Prefix{0, 0}));
}

TEST(Transport, CnatThroughPositiveChoiceOnReals) {
  auto am = transportAdviceAlongReduction(cnatToPcrWitness(), pcRealAdviceMachine());
  EXPECT_EQ(am->problem->id, "C_N");
  for (Symbol n = 0; n < 10; ++n) {
    Fixture x = fixtures::natSingleton(n);
    auto a = am->adviceFamily(x);
    ASSERT_FALSE(a.representatives.empty());
    for (const auto& w : a.representatives) {
      auto r = runWithAdvice(*am, x.name, w, 1);
      ASSERT_EQ(r.output.size(), 1u) << n;
      EXPECT_EQ(r.output[0], n);
    }
  }
}

TEST(Transport, MlpoThroughLinEq) {
  for (std::size_t n : {1, 2, 3}) {
    auto am = transportAdviceAlongReduction(mlpoToLinEqWitness(n), linEqAdviceMachine(n, n + 1));
    Rng rng(20 + n);
    for (int i = 0; i < 10; ++i) {
      Fixture x = fixtures::mlpo(rng, n + 1);
      for (const auto& w : am->adviceFamily(x).representatives)
        EXPECT_TRUE(adviceRunSucceeds(*am, x, w, 48)) << n << " " << i;
    }
  }
}

TEST(Effective, RoundTripThroughClosedChoice) {
  for (const auto& id : {"c-nat", "c-cantor", "mlpo-effective:3"}) {
    SCOPED_TRACE(id);
    auto am = adviceMachineById(id);
    auto w = effectiveAdviceToChoiceReduction(am);
    auto back = effectiveAdviceFromChoiceReduction(w);
    EXPECT_EQ(back->scheme.toString(), am->scheme.toString());
    Rng rng(30);
    for (int i = 0; i < 50; ++i) {
      Fixture x = am->fixtures(rng);
      auto c = checkReduction(*w, oracleSolver(w->to, 0), x, 24);
      EXPECT_EQ(c.verdict, Verdict::Consistent) << x.label;
      for (const auto& adv : back->adviceFamily(x).representatives)
        EXPECT_TRUE(adviceRunSucceeds(*back, x, adv, 24)) << x.label;
    }
  }
}

TEST(Effective, NonEffectiveMachineIsRejected) {
  EXPECT_THROW(effectiveAdviceToChoiceReduction(lpoAdviceMachine()), SchemeMismatch);
}

TEST(MonteCarlo, SingletonInNatHasGeometricMass) {
  auto am = cNatRandomAdviceMachine();
  Fixture x = fixtures::natSingleton(3);
  auto est = monteCarloSuccess(*am, x, 20000, 8, 5, 1);
  EXPECT_TRUE(est.covers(toDouble(natGeometricMass(3)))) << est.lo << " " << est.hi;
  auto par = monteCarloSuccess(*am, x, 20000, 8, 5, 4);
  EXPECT_EQ(est.successes, par.successes);
}

TEST(MonteCarlo, CylinderInCantorHasItsMeasure) {
  auto am = pcCantorAdviceMachine();
  Fixture x = fixtures::cylinder({1, 0, 1});
  auto est = monteCarloSuccess(*am, x, 8000, 12, 6, 1);
  EXPECT_TRUE(est.covers(0.125)) << est.lo << " " << est.hi;
}

TEST(MonteCarlo, NonRandomSchemeIsRejected) {
  Rng rng(1);
  auto am = lpoAdviceMachine();
  EXPECT_THROW(monteCarloSuccess(*am, am->fixtures(rng), 10, 8, 1), SchemeMismatch);
}

TEST(NegativeControl, WrongAdviceIsRefuted) {
  Fixture nonzero{cantor({0, 0, 1}), {}, "nonzero"};
  EXPECT_FALSE(adviceRunSucceeds(*lpoAdviceMachine(), nonzero, natName(0), 32));
  Fixture left{pairNames(cantor({1}), Name::zeros()), {}, "left"};
  EXPECT_FALSE(adviceRunSucceeds(*llpoAdviceMachine(), left, natName(0), 32));
  Fixture s = fixtures::natSingleton(4);
  EXPECT_FALSE(adviceRunSucceeds(*cNatEffectiveAdviceMachine(), s, natName(5), 32));
  auto transported = transportAdviceAlongReduction(mlpoToLinEqWitness(2), linEqAdviceMachine(2, 3));
  std::vector<Rational> v{Rational(1, 2), 0, Rational(1, 3)};
  Fixture x{fixtures::rationalVectorName(v), RealVectorMeaning{v}, "hand"};
  EXPECT_FALSE(adviceRunSucceeds(*transported, x, fixtures::rationalVectorName({1, 0, 0}), 48));
  EXPECT_TRUE(transported->adviceFamily(x).contains(fixtures::rationalVectorName({0, 1, 0}), 48));
}
