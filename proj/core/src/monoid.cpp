#include "unispec/monoid.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "unispec/error.hpp"

namespace unispec {

FiniteMonoid FiniteMonoid::validate(const std::vector<std::vector<std::size_t>>& table, std::size_t neutral) {
  const std::size_t m = table.size();
  if (m == 0) throw Error(ErrorKind::BadTable, "empty Cayley table", {{"size", 0}});
  if (m > kMaxMonoidSize) {
    throw Error(ErrorKind::SizeLimit, "Cayley table larger than " + std::to_string(kMaxMonoidSize),
                {{"size", m}, {"limit", kMaxMonoidSize}});
  }
  auto flat = std::make_shared<std::vector<std::uint32_t>>(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    if (table[i].size() != m) {
      throw Error(ErrorKind::BadTable, "row " + std::to_string(i) + " has wrong length",
                  {{"row", i}, {"length", table[i].size()}, {"size", m}});
    }
    for (std::size_t j = 0; j < m; ++j) {
      if (table[i][j] >= m) {
        throw Error(ErrorKind::BadTable, "entry out of range", {{"i", i}, {"j", j}, {"value", table[i][j]}});
      }
      (*flat)[i * m + j] = static_cast<std::uint32_t>(table[i][j]);
    }
  }
  if (neutral >= m) throw Error(ErrorKind::BadNeutral, "neutral index out of range", {{"i", neutral}});
  const auto at = [&](std::size_t i, std::size_t j) -> std::size_t { return (*flat)[i * m + j]; };

  for (std::size_t i = 0; i < m; ++i) {
    if (at(neutral, i) != i) {
      throw Error(ErrorKind::BadNeutral, "neutral + " + std::to_string(i) + " != " + std::to_string(i),
                  {{"i", i}, {"neutral", neutral}});
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (at(i, j) != at(j, i)) {
        throw Error(ErrorKind::NotCommutative,
                    "table[" + std::to_string(i) + "][" + std::to_string(j) + "] != table[" + std::to_string(j) +
                        "][" + std::to_string(i) + "]",
                    {{"i", i}, {"j", j}});
      }
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t ij = at(i, j);
      for (std::size_t k = 0; k < m; ++k) {
        if (at(ij, k) != at(i, at(j, k))) {
          throw Error(ErrorKind::NotAssociative,
                      "(" + std::to_string(i) + "+" + std::to_string(j) + ")+" + std::to_string(k) +
                          " != " + std::to_string(i) + "+(" + std::to_string(j) + "+" + std::to_string(k) + ")",
                      {{"i", i}, {"j", j}, {"k", k}});
        }
      }
    }
  }
  return FiniteMonoid(m, neutral, std::move(flat));
}

std::vector<std::vector<std::size_t>> FiniteMonoid::table() const {
  std::vector<std::vector<std::size_t>> out(size_, std::vector<std::size_t>(size_));
  for (std::size_t i = 0; i < size_; ++i)
    for (std::size_t j = 0; j < size_; ++j) out[i][j] = add(i, j);
  return out;
}

FreeMonoid::FreeMonoid(std::size_t rank) : rank_(rank) {
  if (rank == 0) throw Error(ErrorKind::InvalidInput, "free commutative monoid needs rank >= 1", {{"rank", 0}});
}

void check_element(const Element& s, const Semigroup& S) {
  if (S.is_finite()) {
    const auto* idx = std::get_if<std::size_t>(&s);
    if (idx == nullptr || *idx >= S.finite().size()) {
      throw Error(ErrorKind::InvalidInput, "element is not an index of the Cayley table",
                  {{"size", S.finite().size()}});
    }
  } else {
    const auto* ex = std::get_if<Exponents>(&s);
    if (ex == nullptr || ex->size() != S.free().rank()) {
      throw Error(ErrorKind::InvalidInput, "element is not an exponent vector of the right length",
                  {{"rank", S.free().rank()}});
    }
  }
}

Element add(const Element& s, const Element& t, const Semigroup& S) {
  check_element(s, S);
  check_element(t, S);
  if (S.is_finite()) return S.finite().add(std::get<std::size_t>(s), std::get<std::size_t>(t));
  const auto& a = std::get<Exponents>(s);
  const auto& b = std::get<Exponents>(t);
  Exponents sum(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] > std::numeric_limits<std::uint64_t>::max() - b[j]) {
      throw Error(ErrorKind::ExponentOverflow, "exponent addition overflows 64 bits", {{"generator", j}});
    }
    sum[j] = a[j] + b[j];
  }
  return sum;
}

Element neutral_element(const Semigroup& S) {
  if (S.is_finite()) return S.finite().neutral();
  return Exponents(S.free().rank(), 0);
}

bool leq(const Element& s, const Element& t, const Semigroup& S) {
  check_element(s, S);
  check_element(t, S);
  if (S.is_finite()) {
    const auto& M = S.finite();
    const std::size_t a = std::get<std::size_t>(s);
    const std::size_t b = std::get<std::size_t>(t);
    for (std::size_t r = 0; r < M.size(); ++r)
      if (M.add(a, r) == b) return true;
    return false;
  }
  const auto& a = std::get<Exponents>(s);
  const auto& b = std::get<Exponents>(t);
  for (std::size_t j = 0; j < a.size(); ++j)
    if (a[j] > b[j]) return false;
  return true;
}

std::vector<std::size_t> idempotents(const FiniteMonoid& S) {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < S.size(); ++x)
    if (S.add(x, x) == x) out.push_back(x);
  return out;
}

KernelGroup kernel_group(const FiniteMonoid& S) {
  const std::size_t m = S.size();
  std::size_t e = S.neutral();
  for (std::size_t x : idempotents(S)) e = S.add(e, x);

  KernelGroup K;
  K.identity = e;
  K.inverse.assign(m, KernelGroup::npos);
  std::vector<bool> in_k(m, false);
  for (std::size_t s = 0; s < m; ++s) in_k[S.add(s, e)] = true;
  for (std::size_t s = 0; s < m; ++s)
    if (in_k[s]) K.carrier.push_back(s);

  const auto inconsistent = [&](const std::string& what, nlohmann::json details) {
    return Error(ErrorKind::InternalInconsistency, "kernel group: " + what, std::move(details));
  };
  if (S.add(e, e) != e) throw inconsistent("identity is not idempotent", {{"e", e}});
  for (std::size_t k : K.carrier) {
    if (S.add(e, k) != k) throw inconsistent("e is not neutral on K", {{"k", k}});
    for (std::size_t l : K.carrier) {
      if (!in_k[S.add(k, l)]) throw inconsistent("K not closed", {{"k", k}, {"l", l}});
      if (S.add(k, l) == e) {
        K.inverse[k] = l;
        break;
      }
    }
    if (K.inverse[k] == KernelGroup::npos) throw inconsistent("element without inverse", {{"k", k}});
  }
  return K;
}

std::size_t group_order(const FiniteMonoid& S, const KernelGroup& K, std::size_t g) {
  std::size_t x = g;
  std::size_t n = 1;
  while (x != K.identity) {
    x = S.add(x, g);
    ++n;
    if (n > S.size()) throw Error(ErrorKind::InternalInconsistency, "element of K has no finite order", {{"g", g}});
  }
  return n;
}

std::vector<std::size_t> generating_set(const FiniteMonoid& S) {
  const std::size_t m = S.size();
  std::vector<bool> reached(m, false);
  std::vector<std::size_t> members{S.neutral()};
  reached[S.neutral()] = true;
  std::vector<std::size_t> gens;
  for (std::size_t x = 0; x < m; ++x) {
    if (reached[x]) continue;
    gens.push_back(x);
    // close the generated submonoid under + with every generator
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t g : gens) {
        const std::size_t y = S.add(members[i], g);
        if (!reached[y]) {
          reached[y] = true;
          members.push_back(y);
        }
      }
    }
  }
  return gens;
}

}  // namespace unispec
