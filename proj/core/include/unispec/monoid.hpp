#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

namespace unispec {

/// Upper bound on |S| for Cayley tables.
inline constexpr std::size_t kMaxMonoidSize = 512;

using Exponents = std::vector<std::uint64_t>;

/// A finite commutative monoid given by its Cayley table. Immutable; copies
/// share the table.
class FiniteMonoid {
 public:
  /// Checks shape, neutral element, commutativity and associativity, in that
  /// order, and throws on the first violation with witness indices.
  static FiniteMonoid validate(const std::vector<std::vector<std::size_t>>& table, std::size_t neutral);

  std::size_t size() const noexcept { return size_; }
  std::size_t neutral() const noexcept { return neutral_; }
  std::size_t add(std::size_t a, std::size_t b) const { return (*table_)[a * size_ + b]; }

  /// Row-major copy of the table.
  std::vector<std::vector<std::size_t>> table() const;

  friend bool operator==(const FiniteMonoid& a, const FiniteMonoid& b) {
    return a.size_ == b.size_ && a.neutral_ == b.neutral_ && (a.table_ == b.table_ || *a.table_ == *b.table_);
  }

 private:
  FiniteMonoid(std::size_t size, std::size_t neutral, std::shared_ptr<const std::vector<std::uint32_t>> table)
      : size_(size), neutral_(neutral), table_(std::move(table)) {}

  std::size_t size_;
  std::size_t neutral_;
  std::shared_ptr<const std::vector<std::uint32_t>> table_;
};

/// The free commutative monoid N^k on k generators.
class FreeMonoid {
 public:
  explicit FreeMonoid(std::size_t rank);
  std::size_t rank() const noexcept { return rank_; }
  friend bool operator==(const FreeMonoid&, const FreeMonoid&) = default;

 private:
  std::size_t rank_;
};

/// Either a Cayley-table monoid or N^k.
class Semigroup {
 public:
  Semigroup(FiniteMonoid m) : impl_(std::move(m)) {}  // NOLINT(google-explicit-constructor)
  Semigroup(FreeMonoid f) : impl_(f) {}               // NOLINT(google-explicit-constructor)

  bool is_finite() const noexcept { return std::holds_alternative<FiniteMonoid>(impl_); }
  const FiniteMonoid& finite() const { return std::get<FiniteMonoid>(impl_); }
  const FreeMonoid& free() const { return std::get<FreeMonoid>(impl_); }

  friend bool operator==(const Semigroup&, const Semigroup&) = default;

 private:
  std::variant<FiniteMonoid, FreeMonoid> impl_;
};

/// An element of S: an index into a Cayley table or an exponent vector.
using Element = std::variant<std::size_t, Exponents>;

/// Throws InvalidInput if `s` is not an element of `S`.
void check_element(const Element& s, const Semigroup& S);

/// s + t; exponent overflow throws ExponentOverflow.
Element add(const Element& s, const Element& t, const Semigroup& S);

/// The neutral element of S.
Element neutral_element(const Semigroup& S);

/// Divisibility preorder: s <= t iff t = s + r for some r in S.
bool leq(const Element& s, const Element& t, const Semigroup& S);

/// All x with x + x = x, ascending.
std::vector<std::size_t> idempotents(const FiniteMonoid& S);

/// The minimal ideal K = e + S, a group with identity e (the minimal idempotent).
struct KernelGroup {
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::vector<std::size_t> carrier;  // sorted element indices of K
  std::size_t identity = 0;          // e
  std::vector<std::size_t> inverse;  // indexed by element of S; npos outside K

  bool contains(std::size_t s) const { return s < inverse.size() && inverse[s] != npos; }
};

KernelGroup kernel_group(const FiniteMonoid& S);

/// Order of g in the kernel group (smallest n >= 1 with n*g = e).
std::size_t group_order(const FiniteMonoid& S, const KernelGroup& K, std::size_t g);

/// A generating set of S as a monoid, chosen greedily in index order.
std::vector<std::size_t> generating_set(const FiniteMonoid& S);

}  // namespace unispec
