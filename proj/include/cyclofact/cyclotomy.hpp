#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "cyclofact/field.hpp"
#include "cyclofact/lehmer_tables.hpp"
#include "cyclofact/types.hpp"

namespace cyclofact {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using CountMatrix = Matrix<std::int64_t>;
using OctVector = Eigen::Matrix<std::int64_t, 8, 1>;

/// Reduces any integer index into [0, n).
constexpr int wrap(std::int64_t i, int n) { return static_cast<int>(((i % n) + n) % n); }

/// Cyclotomic cosets of order N over F_p for a fixed primitive root:
/// C_i = { x : dlog(x) = i (mod N) }. Immutable once built.
class CyclotomicSystem {
 public:
  // Errors: InvalidInput (p not an odd prime), ResourceLimit (p >= limits.max_p),
  // OrderMismatch (N does not divide p-1), NotPrimitive.
  static CyclotomicSystem build(std::uint64_t p, std::uint64_t alpha, unsigned order, const Limits& limits = {});

  std::uint64_t p() const { return p_; }
  std::uint64_t alpha() const { return alpha_; }
  unsigned order() const { return order_; }
  std::uint64_t coset_size() const { return (p_ - 1) / order_; }

  // discrete log of a nonzero x, in [0, p-2]
  std::uint32_t index(std::uint64_t x) const { return index_[x]; }
  int coset_of(std::uint64_t x) const { return static_cast<int>(index_[x] % order_); }
  // sorted ascending
  std::span<const std::uint32_t> coset(int i) const { return cosets_[wrap(i, static_cast<int>(order_))]; }
  // coset containing p - 1: 0 when f is even, N/2 otherwise
  int coset_of_minus_one() const { return coset_of(p_ - 1); }

 private:
  CyclotomicSystem() = default;

  std::uint64_t p_ = 0;
  std::uint64_t alpha_ = 0;
  unsigned order_ = 0;
  std::vector<std::uint32_t> index_;
  std::vector<std::vector<std::uint32_t>> cosets_;
};

enum class Provenance { BruteForce, ClosedForm };

std::string_view to_string(Provenance provenance);

/// N x N matrix of cyclotomic numbers (i,j).
struct CycNumberTable {
  std::uint64_t p = 0;
  std::optional<std::uint64_t> alpha;
  unsigned order = 0;
  Provenance provenance = Provenance::BruteForce;
  CountMatrix entries;

  // indices are read modulo N
  std::int64_t operator()(std::int64_t i, std::int64_t j) const {
    const int n = static_cast<int>(order);
    return entries(wrap(i, n), wrap(j, n));
  }
};

/// Counts x in C_i with 1 + x in C_j directly over the coset.
std::int64_t cyclotomic_number(const CyclotomicSystem& sys, std::int64_t i, std::int64_t j);

/// Whole table in one pass over F_p^* \ {-1}.
CycNumberTable cyclotomic_table(const CyclotomicSystem& sys);

/// p = x^2 + 4 y^2 and p = a^2 + 2 b^2 with x = a = 1 (mod 4).
struct DiophantineReps {
  std::int64_t x = 0;
  std::uint64_t y_abs = 0;
  std::int64_t a = 0;
  std::uint64_t b_abs = 0;

  bool operator==(const DiophantineReps&) const = default;
};

/// Cornacchia descent for both forms. Requires p prime, p = 1 (mod 8), p < 2^124.
DiophantineReps solve_diophantine(u128 p);

/// i with 2 in C_i^4, read from an order-4 or order-8 system.
int quartic_class_of_two(const CyclotomicSystem& sys);

/// Order-8 table from the closed forms for the trial signs (y, b).
/// Throws SignMismatch if any critical 64(i,j) is negative or not divisible by 64.
CycNumberTable closed_form_table_order8(std::uint64_t p, const DiophantineReps& reps, std::int64_t y, std::int64_t b,
                                        int two_class,
                                        const OrderEightTables& tables = OrderEightTables::builtin());

struct SignedReps {
  DiophantineReps base;
  std::int64_t y_signed = 0;
  std::int64_t b_signed = 0;
  std::uint64_t alpha = 0;
};

/// Picks the unique (+-y, +-b) whose closed-form table equals the brute-force table.
/// NoMatch / MultipleMatch indicate bad table data; SignMismatch is raised when
/// no trial sign produced an integral table at all.
SignedReps resolve_signs(const CyclotomicSystem& sys, const OrderEightTables& tables = OrderEightTables::builtin());
SignedReps resolve_signs(const CyclotomicSystem& sys, const CycNumberTable& brute,
                         const OrderEightTables& tables = OrderEightTables::builtin());

enum class AlphaClass { Plus, Minus };

std::string_view to_string(AlphaClass cls);

/// Plus iff y_alpha = b_alpha. NotApplicable unless |y| = |b|.
AlphaClass classify_alpha(const SignedReps& signed_reps);

struct ConjugateRoot {
  std::uint64_t exponent = 0;
  std::uint64_t root = 0;
};

/// alpha^t for the smallest t = 5 (mod 8) coprime to p - 1; then (i,j)_alpha = (5i,5j)_root.
ConjugateRoot conjugate_root(const CyclotomicSystem& sys);

}  // namespace cyclofact
