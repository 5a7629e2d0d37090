#include "unispec/character.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "unispec/error.hpp"

namespace unispec {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double arg_in_turns(std::complex<double> z) {
  double t = std::arg(z) / kTwoPi;
  if (t < 0) t += 1.0;
  if (t >= 1.0) t -= 1.0;
  return t;
}

double turn_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), 1.0);
  return std::min(d, 1.0 - d);
}

double angle_distance(const Angle& a, const Angle& b) {
  if (a == b) return 0.0;
  const Angle diff = a + (-b);
  const double t = static_cast<double>(diff.num) / static_cast<double>(diff.den);
  return kTwoPi * std::min(t, 1.0 - t);
}

void require_same(const UnitaryCharacter& a, const UnitaryCharacter& b) {
  if (!(a.semigroup() == b.semigroup())) {
    throw Error(ErrorKind::MismatchedSemigroup, "characters are defined on different semigroups");
  }
}

}  // namespace

Angle Angle::make(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw Error(ErrorKind::InvalidInput, "angle denominator must be positive", {{"den", den}});
  num %= den;
  if (num < 0) num += den;
  const std::int64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

std::complex<double> Angle::value() const {
  if (num == 0) return {1.0, 0.0};
  // exact quarter turns keep fixtures free of 1e-16 residue
  if (4 * num == den) return {0.0, 1.0};
  if (2 * num == den) return {-1.0, 0.0};
  if (4 * num == 3 * den) return {0.0, -1.0};
  return std::polar(1.0, kTwoPi * static_cast<double>(num) / static_cast<double>(den));
}

__extension__ using Wide = __int128;

Angle Angle::operator+(const Angle& other) const {
  const std::int64_t l = std::lcm(den, other.den);
  const Wide n = static_cast<Wide>(num) * (l / den) + static_cast<Wide>(other.num) * (l / other.den);
  return make(static_cast<std::int64_t>(n % l), l);
}

Angle Angle::operator-() const { return make(-num, den); }

bool operator<(const Angle& a, const Angle& b) {
  return static_cast<Wide>(a.num) * b.den < static_cast<Wide>(b.num) * a.den;
}

UnitaryCharacter UnitaryCharacter::from_angles(const Semigroup& S, std::vector<Angle> angles) {
  if (!S.is_finite()) throw Error(ErrorKind::MismatchedSemigroup, "exact angles need a Cayley-table monoid");
  const auto& M = S.finite();
  if (angles.size() != M.size()) {
    throw Error(ErrorKind::NotACharacter, "one angle per element expected",
                {{"expected", M.size()}, {"got", angles.size()}});
  }
  for (auto& a : angles) a = Angle::make(a.num, a.den);
  if (angles[M.neutral()].num != 0) {
    throw Error(ErrorKind::NotACharacter, "value at the neutral element must be 1", {{"element", M.neutral()}});
  }
  for (std::size_t s = 0; s < M.size(); ++s) {
    for (std::size_t t = s; t < M.size(); ++t) {
      if (!(angles[M.add(s, t)] == angles[s] + angles[t])) {
        throw Error(ErrorKind::NotACharacter, "not multiplicative", {{"s", s}, {"t", t}});
      }
    }
  }
  return UnitaryCharacter(S, std::move(angles));
}

UnitaryCharacter UnitaryCharacter::from_generator_values(const Semigroup& S, std::vector<std::complex<double>> values,
                                                         double tol) {
  if (S.is_finite()) throw Error(ErrorKind::MismatchedSemigroup, "generator values need a free commutative monoid");
  if (values.size() != S.free().rank()) {
    throw Error(ErrorKind::NotACharacter, "one value per generator expected",
                {{"expected", S.free().rank()}, {"got", values.size()}});
  }
  for (std::size_t j = 0; j < values.size(); ++j) {
    const double r = std::abs(values[j]);
    if (!std::isfinite(r) || std::abs(r - 1.0) > tol) {
      throw Error(ErrorKind::NotACharacter, "generator value is not unimodular", {{"generator", j}, {"modulus", r}});
    }
    values[j] /= r;
  }
  return UnitaryCharacter(S, std::move(values));
}

UnitaryCharacter UnitaryCharacter::trivial(const Semigroup& S) {
  if (S.is_finite()) return UnitaryCharacter(S, std::vector<Angle>(S.finite().size()));
  return UnitaryCharacter(S, std::vector<std::complex<double>>(S.free().rank(), {1.0, 0.0}));
}

std::complex<double> UnitaryCharacter::eval(const Element& s) const {
  check_element(s, semigroup_);
  if (is_exact()) return angles()[std::get<std::size_t>(s)].value();
  const auto& e = std::get<Exponents>(s);
  const auto& g = generator_values();
  std::complex<double> z{1.0, 0.0};
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (e[j] == 0) continue;
    // reduce the angle before scaling so large exponents stay accurate
    const double turns = std::fmod(arg_in_turns(g[j]) * static_cast<double>(e[j]), 1.0);
    z *= std::polar(1.0, kTwoPi * turns);
  }
  return z;
}

std::vector<std::complex<double>> UnitaryCharacter::test_values() const {
  if (!is_exact()) return generator_values();
  std::vector<std::complex<double>> out;
  out.reserve(angles().size());
  for (const auto& a : angles()) out.push_back(a.value());
  return out;
}

bool UnitaryCharacter::is_trivial() const {
  if (is_exact()) return std::all_of(angles().begin(), angles().end(), [](const Angle& a) { return a.num == 0; });
  return std::all_of(generator_values().begin(), generator_values().end(),
                     [](std::complex<double> z) { return z == std::complex<double>{1.0, 0.0}; });
}

UnitaryCharacter char_mul(const UnitaryCharacter& chi, const UnitaryCharacter& tau) {
  require_same(chi, tau);
  if (chi.is_exact()) {
    std::vector<Angle> out(chi.angles().size());
    for (std::size_t s = 0; s < out.size(); ++s) out[s] = chi.angles()[s] + tau.angles()[s];
    return UnitaryCharacter::from_angles(chi.semigroup(), std::move(out));
  }
  std::vector<std::complex<double>> out(chi.generator_values().size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = chi.generator_values()[j] * tau.generator_values()[j];
  return UnitaryCharacter::from_generator_values(chi.semigroup(), std::move(out), 1e-6);
}

UnitaryCharacter char_conj(const UnitaryCharacter& chi) {
  if (chi.is_exact()) {
    std::vector<Angle> out(chi.angles().size());
    for (std::size_t s = 0; s < out.size(); ++s) out[s] = -chi.angles()[s];
    return UnitaryCharacter::from_angles(chi.semigroup(), std::move(out));
  }
  std::vector<std::complex<double>> out(chi.generator_values().size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = std::conj(chi.generator_values()[j]);
  return UnitaryCharacter::from_generator_values(chi.semigroup(), std::move(out), 1e-6);
}

std::complex<double> char_eval(const UnitaryCharacter& chi, const Element& s) { return chi.eval(s); }

double character_distance(const UnitaryCharacter& chi, const UnitaryCharacter& tau) {
  require_same(chi, tau);
  double d = 0.0;
  if (chi.is_exact()) {
    for (std::size_t s = 0; s < chi.angles().size(); ++s)
      d = std::max(d, angle_distance(chi.angles()[s], tau.angles()[s]));
    return d;
  }
  for (std::size_t j = 0; j < chi.generator_values().size(); ++j) {
    const double t = turn_distance(arg_in_turns(chi.generator_values()[j]), arg_in_turns(tau.generator_values()[j]));
    d = std::max(d, kTwoPi * t);
  }
  return d;
}

bool canonical_less(const UnitaryCharacter& chi, const UnitaryCharacter& tau) {
  require_same(chi, tau);
  if (chi.is_exact()) {
    return std::lexicographical_compare(chi.angles().begin(), chi.angles().end(), tau.angles().begin(),
                                        tau.angles().end());
  }
  const auto& a = chi.generator_values();
  const auto& b = tau.generator_values();
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double x = arg_in_turns(a[j]);
    const double y = arg_in_turns(b[j]);
    if (x < y) return true;
    if (y < x) return false;
  }
  return false;
}

std::vector<UnitaryCharacter> enumerate_unitary_dual(const FiniteMonoid& S) {
  const KernelGroup K = kernel_group(S);
  const std::size_t m = S.size();

  // greedy generating set of K: maximal order first, smallest index on ties
  std::vector<std::size_t> gens;
  std::vector<std::size_t> orders;
  std::vector<bool> in_h(m, false);
  std::vector<std::size_t> h_members{K.identity};
  in_h[K.identity] = true;
  std::int64_t exponent = 1;
  while (h_members.size() < K.carrier.size()) {
    std::size_t best = KernelGroup::npos;
    std::size_t best_order = 0;
    for (std::size_t k : K.carrier) {
      if (in_h[k]) continue;
      const std::size_t o = group_order(S, K, k);
      if (o > best_order) {
        best = k;
        best_order = o;
      }
    }
    gens.push_back(best);
    orders.push_back(best_order);
    exponent = std::lcm(exponent, static_cast<std::int64_t>(best_order));
    const std::size_t old = h_members.size();
    for (std::size_t i = 0; i < old; ++i) {
      std::size_t x = h_members[i];
      for (std::size_t t = 1; t < best_order; ++t) {
        x = S.add(x, best);
        if (!in_h[x]) {
          in_h[x] = true;
          h_members.push_back(x);
        }
      }
    }
  }

  // backtracking over generator values; angles in units of 1/exponent
  const std::int64_t L = exponent;
  std::vector<std::int64_t> angle(m, -1);
  angle[K.identity] = 0;
  std::vector<std::vector<std::int64_t>> found;

  const auto extend = [&](auto&& self, std::size_t level, std::vector<std::size_t>& members) -> void {
    if (level == gens.size()) {
      found.push_back(angle);
      return;
    }
    const std::size_t g = gens[level];
    const std::int64_t o = static_cast<std::int64_t>(orders[level]);
    for (std::int64_t a = 0; a < o; ++a) {
      const std::int64_t theta = a * (L / o);
      std::vector<std::size_t> assigned;
      bool ok = true;
      const std::size_t base = members.size();
      for (std::size_t i = 0; i < base && ok; ++i) {
        std::size_t x = members[i];
        std::int64_t v = angle[x];
        for (std::int64_t t = 1; t < o; ++t) {
          x = S.add(x, g);
          v = (v + theta) % L;
          if (angle[x] < 0) {
            angle[x] = v;
            assigned.push_back(x);
          } else if (angle[x] != v) {
            ok = false;
            break;
          }
        }
      }
      if (ok) {
        std::vector<std::size_t> next = members;
        next.insert(next.end(), assigned.begin(), assigned.end());
        self(self, level + 1, next);
      }
      for (std::size_t x : assigned) angle[x] = -1;
    }
  };
  std::vector<std::size_t> start{K.identity};
  extend(extend, 0, start);

  Semigroup semigroup(S);
  std::vector<UnitaryCharacter> out;
  out.reserve(found.size());
  for (const auto& on_k : found) {
    std::vector<Angle> angles(m);
    for (std::size_t s = 0; s < m; ++s) angles[s] = Angle::make(on_k[S.add(s, K.identity)], L);
    out.push_back(UnitaryCharacter::from_angles(semigroup, std::move(angles)));
  }
  std::sort(out.begin(), out.end(), canonical_less);
  out.erase(std::unique(out.begin(), out.end(),
                        [](const UnitaryCharacter& a, const UnitaryCharacter& b) { return a.angles() == b.angles(); }),
            out.end());
  if (out.size() != K.carrier.size()) {
    throw Error(ErrorKind::InternalInconsistency, "dual group order differs from |K|",
                {{"characters", out.size()}, {"kernel", K.carrier.size()}});
  }
  return out;
}

bool contains_character(const std::vector<UnitaryCharacter>& set, const UnitaryCharacter& chi, double tol) {
  return std::any_of(set.begin(), set.end(),
                     [&](const UnitaryCharacter& c) { return character_distance(c, chi) <= tol; });
}

bool same_character_set(const std::vector<UnitaryCharacter>& a, const std::vector<UnitaryCharacter>& b, double tol) {
  for (const auto& c : a)
    if (!contains_character(b, c, tol)) return false;
  for (const auto& c : b)
    if (!contains_character(a, c, tol)) return false;
  return true;
}

}  // namespace unispec
