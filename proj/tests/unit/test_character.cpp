#include <gtest/gtest.h>

#include "../support/builders.hpp"
#include "../support/oracles.hpp"
#include "unispec/character.hpp"
#include "unispec/error.hpp"

using namespace unispec;
using testing_support::klein_monoid;
using testing_support::semilattice2;
using testing_support::threshold3;

namespace {

// Rows of the Klein-four value table, columns in element order e, a, b, a+b.
const int kKleinTable[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, 1}};

bool matches_row(const UnitaryCharacter& chi, const int* row) {
  for (std::size_t s = 0; s < 4; ++s)
    if (std::abs(chi.eval(s) - Complex(row[s], 0)) > 1e-15) return false;
  return true;
}

UnitaryCharacter klein_char(int row) {
  std::vector<Angle> a;
  for (int s = 0; s < 4; ++s) a.push_back(Angle::make(kKleinTable[row][s] == 1 ? 0 : 1, 2));
  return UnitaryCharacter::from_angles(klein_monoid(), a);
}

}  // namespace

TEST(Angle, Normalizes) {
  EXPECT_EQ(Angle::make(3, 6), Angle::make(1, 2));
  EXPECT_EQ(Angle::make(-1, 4), Angle::make(3, 4));
  EXPECT_EQ(Angle::make(5, 4) + Angle::make(1, 4), Angle::make(1, 2));
  EXPECT_EQ(Angle::make(1, 2).value(), Complex(-1.0, 0.0));
  EXPECT_EQ(Angle::make(1, 4).value(), Complex(0.0, 1.0));
}

TEST(UnitaryDual, KleinFourMatchesValueTable) {
  const auto dual = enumerate_unitary_dual(klein_monoid());
  ASSERT_EQ(dual.size(), 4u);
  for (const auto& row : kKleinTable) {
    const auto n = std::count_if(dual.begin(), dual.end(), [&](const auto& chi) { return matches_row(chi, row); });
    EXPECT_EQ(n, 1);
  }
}

TEST(UnitaryDual, SemilatticeAndThresholdAreTrivial) {
  for (const auto& S : {semilattice2(), threshold3()}) {
    const auto dual = enumerate_unitary_dual(S);
    ASSERT_EQ(dual.size(), 1u);
    EXPECT_TRUE(dual[0].is_trivial());
  }
}

TEST(UnitaryDual, CyclicGroupHasAllRoots) {
  std::vector<std::vector<std::size_t>> t(6, std::vector<std::size_t>(6));
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) t[i][j] = (i + j) % 6;
  const auto dual = enumerate_unitary_dual(FiniteMonoid::validate(t, 0));
  ASSERT_EQ(dual.size(), 6u);
  for (std::size_t k = 0; k < 6; ++k) EXPECT_EQ(dual[k].angles()[1], Angle::make(static_cast<std::int64_t>(k), 6));
}

TEST(UnitaryDual, AgreesWithExhaustiveSearchUpToOrderFive) {
  for (std::size_t m = 1; m <= 5; ++m) {
    for (const auto& t : oracle::commutative_monoids(m)) {
      const auto S = FiniteMonoid::validate(t, 0);
      const auto dual = enumerate_unitary_dual(S);
      const auto ref = oracle::exhaustive_dual(t);
      ASSERT_EQ(dual.size(), ref.characters.size());
      std::vector<std::vector<std::uint64_t>> got;
      for (const auto& chi : dual) {
        std::vector<std::uint64_t> k;
        for (const auto& a : chi.angles()) {
          ASSERT_EQ(static_cast<std::uint64_t>(a.den) * (ref.L / a.den), ref.L);
          k.push_back(static_cast<std::uint64_t>(a.num) * (ref.L / static_cast<std::uint64_t>(a.den)));
        }
        got.push_back(k);
      }
      std::sort(got.begin(), got.end());
      EXPECT_EQ(got, ref.characters);
    }
  }
}

TEST(Character, ProductAndConjugate) {
  EXPECT_TRUE(matches_row(char_mul(klein_char(1), klein_char(2)), kKleinTable[3]));
  const auto one = UnitaryCharacter::trivial(klein_monoid());
  EXPECT_TRUE(char_conj(one).is_trivial());
  EXPECT_EQ(character_distance(char_mul(klein_char(3), char_conj(klein_char(3))), one), 0.0);
}

TEST(Character, FreeEvaluation) {
  const Semigroup N2 = FreeMonoid(2);
  const auto chi = UnitaryCharacter::from_generator_values(N2, {Complex(0, 1), Complex(-1, 0)});
  EXPECT_NEAR(std::abs(char_eval(chi, Exponents{2, 1}) - Complex(1, 0)), 0.0, 1e-15);
}

TEST(Character, RejectsNonCharacters) {
  const Semigroup S = klein_monoid();
  EXPECT_THROW(UnitaryCharacter::from_angles(S, {Angle::make(0, 1), Angle::make(1, 2), Angle::make(0, 1),
                                                 Angle::make(0, 1)}),
               Error);
  EXPECT_THROW(UnitaryCharacter::from_generator_values(FreeMonoid(1), {Complex(0.5, 0)}), Error);
  EXPECT_THROW(char_mul(klein_char(0), UnitaryCharacter::trivial(FreeMonoid(1))), Error);
}

TEST(Character, CanonicalOrderAndSetComparison) {
  auto dual = enumerate_unitary_dual(klein_monoid());
  for (std::size_t i = 0; i + 1 < dual.size(); ++i) EXPECT_TRUE(canonical_less(dual[i], dual[i + 1]));
  auto reversed = dual;
  std::reverse(reversed.begin(), reversed.end());
  EXPECT_TRUE(same_character_set(dual, reversed, 1e-7));
  reversed.pop_back();
  EXPECT_FALSE(same_character_set(dual, reversed, 1e-7));
  EXPECT_TRUE(contains_character(dual, klein_char(3), 1e-7));
}
