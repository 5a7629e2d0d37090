#pragma once

#include <complex>
#include <cstdint>
#include <variant>
#include <vector>

#include "unispec/monoid.hpp"

namespace unispec {

/// A rational angle num/den of a full turn, reduced, with 0 <= num < den.
/// exp(2*pi*i*num/den) is the root of unity it stands for.
struct Angle {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Angle make(std::int64_t num, std::int64_t den);

  std::complex<double> value() const;
  Angle operator+(const Angle& other) const;
  Angle operator-() const;

  friend bool operator==(const Angle&, const Angle&) = default;
  friend bool operator<(const Angle& a, const Angle& b);
};

/// An element of the unitary dual. For a Cayley-table monoid the values are
/// stored exactly, one rational angle per element; for N^k only the values on
/// the generators are stored (unit complex numbers).
class UnitaryCharacter {
 public:
  /// Validates |S| angles: neutral maps to 0 and angle(s+t) = angle(s)+angle(t).
  static UnitaryCharacter from_angles(const Semigroup& S, std::vector<Angle> angles);

  /// Validates k values of modulus 1 within `tol`, then normalizes them to the unit circle.
  static UnitaryCharacter from_generator_values(const Semigroup& S, std::vector<std::complex<double>> values,
                                                double tol = 1e-8);

  /// The constant character 1_S.
  static UnitaryCharacter trivial(const Semigroup& S);

  const Semigroup& semigroup() const noexcept { return semigroup_; }
  bool is_exact() const noexcept { return std::holds_alternative<std::vector<Angle>>(values_); }
  const std::vector<Angle>& angles() const { return std::get<std::vector<Angle>>(values_); }
  const std::vector<std::complex<double>>& generator_values() const {
    return std::get<std::vector<std::complex<double>>>(values_);
  }

  std::complex<double> eval(const Element& s) const;

  /// Values on the elements used to test membership in eigenspaces: every
  /// element for a Cayley monoid, the k generators for N^k.
  std::vector<std::complex<double>> test_values() const;

  bool is_trivial() const;

 private:
  UnitaryCharacter(Semigroup S, std::variant<std::vector<Angle>, std::vector<std::complex<double>>> v)
      : semigroup_(std::move(S)), values_(std::move(v)) {}

  Semigroup semigroup_;
  std::variant<std::vector<Angle>, std::vector<std::complex<double>>> values_;
};

UnitaryCharacter char_mul(const UnitaryCharacter& chi, const UnitaryCharacter& tau);
UnitaryCharacter char_conj(const UnitaryCharacter& chi);
std::complex<double> char_eval(const UnitaryCharacter& chi, const Element& s);

/// Canonical metric: maximal angular distance (radians) over generators for
/// N^k, over all elements for Cayley monoids (exact zero for equal characters).
double character_distance(const UnitaryCharacter& chi, const UnitaryCharacter& tau);

/// Canonical order: lexicographic on the angle vectors (angles in [0, 2*pi)).
bool canonical_less(const UnitaryCharacter& chi, const UnitaryCharacter& tau);

/// Every unitary character of a finite commutative monoid, exactly, sorted
/// canonically. The result has |K(S)| elements.
std::vector<UnitaryCharacter> enumerate_unitary_dual(const FiniteMonoid& S);

/// Set comparison of character lists under the canonical metric at `tol`.
bool same_character_set(const std::vector<UnitaryCharacter>& a, const std::vector<UnitaryCharacter>& b, double tol);

/// True when `chi` is within `tol` of some member of `set`.
bool contains_character(const std::vector<UnitaryCharacter>& set, const UnitaryCharacter& chi, double tol);

}  // namespace unispec
