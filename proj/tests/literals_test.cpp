#include <gtest/gtest.h>

#include "advice_kit.hpp"

using namespace advice_kit;

TEST(NameLiteral, RoundTrip) {
  Name x = parseNameLiteral("alphabet:bin;prefix:0,1,1;period:0");
  Fuel fuel(defaultFuel());
  EXPECT_EQ(*x.prefix(5, fuel), (Prefix{0, 1, 1, 0, 0}));
  EXPECT_EQ(nameLiteral(x), "alphabet:bin;prefix:0,1,1;period:0");
  Name y = parseNameLiteral(" alphabet:nat ; period: 3,4 ");
  EXPECT_EQ(*y.prefix(3, fuel), (Prefix{3, 4, 3}));
}

TEST(NameLiteral, Errors) {
  EXPECT_THROW(parseNameLiteral("prefix:0"), LiteralError);
  EXPECT_THROW(parseNameLiteral("alphabet:bin;prefix:2"), LiteralError);
  EXPECT_THROW(parseNameLiteral("alphabet:bin;period:"), LiteralError);
  EXPECT_THROW(parseNameLiteral("alphabet:hex"), LiteralError);
  EXPECT_THROW(parseNameLiteral("alphabet:bin;prefix:a"), LiteralError);
}

TEST(SetLiteral, WordsAndBalls) {
  auto s = parseSetLiteral("open{words: 1; 0,1}");
  EXPECT_TRUE(s.open);
  EXPECT_EQ(s.words, (std::vector<Prefix>{{1}, {0, 1}}));
  EXPECT_EQ(enumeratedWords(s.name(), 4), s.words);
  auto r = parseSetLiteral("closed{complement: (0,1/2); (3/4, 2)}");
  ASSERT_EQ(r.balls.size(), 2u);
  EXPECT_EQ(r.balls[1].lo(), Rational(3, 4));
  EXPECT_THROW(parseSetLiteral("closed{words: 1}"), LiteralError);
  EXPECT_THROW(parseSetLiteral("closed{complement: 1"), LiteralError);
}

TEST(SetFixture, CantorMeasure) {
  auto f = setFixture("PC_Cantor", "closed{complement: 1}");
  const auto& m = std::any_cast<const ChoiceMeaning&>(f.meaning);
  EXPECT_EQ(*m.measure, Rational(1, 2));
  auto g = setFixture("PC_Cantor", "closed{complement: 0,0; 1}");
  EXPECT_EQ(*std::any_cast<const ChoiceMeaning&>(g.meaning).measure, Rational(1, 4));
}

TEST(SetFixture, RealPieces) {
  auto f = setFixture("PC_I", "closed{complement: (-1,1/4); (1/2,3/4)}");
  const auto& m = std::any_cast<const ChoiceMeaning&>(f.meaning);
  ASSERT_EQ(m.pieces.size(), 2u);
  EXPECT_EQ(m.pieces[0].lo(), Rational(1, 4));
  EXPECT_EQ(m.pieces[0].hi(), Rational(1, 2));
  EXPECT_EQ(m.pieces[1].lo(), Rational(3, 4));
  EXPECT_EQ(*m.measure, Rational(1, 2));
}

TEST(ProblemById, KnownIds) {
  for (const char* id : {"LPO", "LPO^3", "LLPO", "LLPO^2", "MLPO_3", "Sep", "C_N", "C_Cantor", "PC_Cantor", "PC_I",
                         "PC_R", "SEigen_2", "SEigen_2xSEigen_2", "LinEq_2,3", "circle", "id_Cantor", "cond-flip",
                         "LPO.cond-flip"})
    EXPECT_EQ(problemById(id)->id, id);
  EXPECT_THROW(problemById("LPO^x"), LiteralError);
  EXPECT_THROW(problemById("Halting"), LiteralError);
}

TEST(Fixture, LlpoWithNameLiterals) {
  auto p = parseFixture("problem:LLPO; x0:alphabet:bin;prefix:0,1;period:0; x1:alphabet:bin;period:0");
  EXPECT_EQ(p.problemId, "LLPO");
  auto answer = llpoProblem()->oracle(p.fixture, 0);
  ASSERT_TRUE(answer);
  Fuel fuel(defaultFuel());
  EXPECT_EQ(*answer->at(0, fuel), 1u);
}

TEST(Fixture, MultiLineMatrixAndVector) {
  auto m = parseFixture("problem:LinEq_2,3\nmatrix: 1,0,0; 0,1,1\n");
  const auto& mm = std::any_cast<const MatrixMeaning&>(m.fixture.meaning);
  EXPECT_EQ(mm.matrix.rows(), 2u);
  EXPECT_EQ(mm.matrix(1, 2), Rational(1));
  auto v = parseFixture("problem:MLPO_3; vector: 0, 1/2, 1/4");
  EXPECT_EQ(std::any_cast<const RealVectorMeaning&>(v.fixture.meaning).values[1], Rational(1, 2));
}

TEST(Fixture, Errors) {
  EXPECT_THROW(parseFixture("x:alphabet:bin"), LiteralError);
  EXPECT_THROW(parseFixture("problem:LLPO; x0:alphabet:bin;period:0"), LiteralError);
  EXPECT_THROW(parseFixture("problem:MLPO_3; vector: 0, 1"), LiteralError);
  EXPECT_THROW(parseFixture("problem:MLPO_2; vector: 1, 1/2"), LiteralError);  // no zero: outside the domain
  EXPECT_THROW(parseFixture("problem:LLPO; x0:alphabet:bin;prefix:1; x1:alphabet:bin;prefix:1"), LiteralError);
}
