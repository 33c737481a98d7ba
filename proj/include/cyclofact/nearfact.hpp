#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cyclofact/cyclotomy.hpp"

namespace cyclofact {

// Group is (F_p, +) throughout; "product" of subsets means the sumset multiset.

enum class PairLabel { L1a, L1b, L2a, L2b, Order2, Order4, Order6, Custom };

std::string_view to_string(PairLabel label);
PairLabel parse_pair_label(std::string_view text);

/// Candidate lambda-fold near-factorization (S, T) of F_p.
struct NfPair {
  std::uint64_t p = 0;
  std::vector<std::uint64_t> S;  // sorted, distinct, < p
  std::vector<std::uint64_t> T;
  std::uint64_t lambda = 0;
  PairLabel label = PairLabel::Custom;
  std::optional<std::uint64_t> alpha;

  bool operator==(const NfPair&) const = default;
};

/// Sorts S and T and rejects duplicates, out-of-range elements and lambda = 0 (InvalidInput).
void normalize(NfPair& pair);

enum class VerifyMethod { Direct, Cyclotomic };

std::string_view to_string(VerifyMethod method);

struct VerifyReport {
  bool ok = false;
  std::optional<std::uint64_t> lambda_observed;  // set iff all nonzero elements share one coefficient
  std::uint64_t zero_coefficient = 0;
  // coefficient value -> number of nonzero group elements attaining it
  std::map<std::uint64_t, std::uint64_t> deviation_histogram;
  VerifyMethod method = VerifyMethod::Direct;
  // set when the size gate |S||T| = lambda(p-1) rejected the pair before any counting
  std::optional<std::string> gate_failure;
};

/// counts[g] = #{(s, t) : s + t = g (mod p)}. ResourceLimit when |S||T| > max_conv or p >= max_p.
std::vector<std::uint64_t> convolution_counts(std::span<const std::uint64_t> S, std::span<const std::uint64_t> T,
                                              std::uint64_t p, const Limits& limits = {}, unsigned jobs = 1);

/// Direct verification of S + T = lambda (G - 0) by convolution.
VerifyReport verify_nf(const NfPair& pair, const Limits& limits = {}, unsigned jobs = 1);

/// Cyclotomic verification: S and T must be unions of cosets of `sys`
/// (MethodInapplicable otherwise); coefficients come from the brute-force table.
VerifyReport verify_nf(const NfPair& pair, const CyclotomicSystem& sys);
VerifyReport verify_nf(const NfPair& pair, const CyclotomicSystem& sys, const CycNumberTable& table);

/// Coset indices making up `subset`, or nullopt when it is not a union of whole cosets.
std::optional<std::vector<int>> coset_union_indices(const CyclotomicSystem& sys, std::span<const std::uint64_t> subset);

std::vector<std::uint64_t> union_of_cosets(const CyclotomicSystem& sys, std::initializer_list<int> indices);

/// S and T for one of the order-8 labels 1a, 1b, 2a, 2b, regardless of alpha's class.
NfPair theorem_pair(const CyclotomicSystem& sys, PairLabel label);

struct TheoremConstruction {
  AlphaClass alpha_class = AlphaClass::Plus;
  SignedReps signs;
  std::array<NfPair, 2> pairs;  // (1a, 1b) for Plus, (2a, 2b) for Minus
};

/// Pairs valid for alpha at a prime p = 4n^4 + 12n^2 + 1. NotSequencePrime otherwise.
TheoremConstruction construct_theorem_main(std::uint64_t p, std::uint64_t alpha, const Limits& limits = {});
TheoremConstruction construct_theorem_main(const CyclotomicSystem& sys);

enum class PriorOrder { Order2 = 2, Order4 = 4, Order6 = 6 };

/// (C_0^2, C_1^2), (C_0^4, C_2^4) or (C_0^6, C_3^6). FormMismatch unless p = 1 (mod 4),
/// p = 16n^2 + 1 or p = 108n^2 + 1 respectively.
NfPair construct_prior(std::uint64_t p, std::uint64_t alpha, PriorOrder which, const Limits& limits = {});

struct CosetProductDecomposition {
  int i = 0;
  int j = 0;
  OctVector coefficients = OctVector::Zero();  // C_i C_j = sum_l c_l C_l
};

/// c_l = (j - i, l - i). Needs an order-8 table with p = 1 (mod 16); DiagonalUnsupported for i = j.
CosetProductDecomposition coset_product_decomposition(const CycNumberTable& table, int i, int j);

/// Recomputes C_i C_j by set convolution and compares with the decomposition.
bool matches_direct_product(const CyclotomicSystem& sys, const CosetProductDecomposition& decomposition);

/// v, x, y or z coefficient vector for labels 1a, 1b, 2a, 2b read from an order-8 table.
OctVector pair_coefficients(const CycNumberTable& table, PairLabel label);

/// Element-wise negation mod p, sorted.
std::vector<std::uint64_t> negate(std::span<const std::uint64_t> subset, std::uint64_t p);

/// Strong external difference family check: for each j, D_j - (union of the others)
/// covers every nonzero element exactly lambda times and 0 never.
/// NotDisjoint / SizeMismatch / InvalidInput on malformed families.
bool verify_sedf(std::span<const std::vector<std::uint64_t>> family, std::uint64_t p, std::uint64_t lambda,
                 const Limits& limits = {});

}  // namespace cyclofact
