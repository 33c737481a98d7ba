#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "cyclofact/field.hpp"
#include "cyclofact/types.hpp"

namespace cyclofact {

// p = 4n^4 + 12n^2 + 1 stays below 2^126 up to here
inline constexpr std::uint64_t kMaxSequenceN = 2'000'000'000;

/// 4n^4 + 12n^2 + 1. Errors: InvalidInput for n = 0, Overflow above kMaxSequenceN.
u128 seq_value(std::uint64_t n);

/// n >= 1 with seq_value(n) == p, if any (form only, no primality check).
std::optional<std::uint64_t> sequence_index(u128 p);

/// Index of a prime of the form 4u^2 + 12u + 1 with u = n^2; throws NotSequencePrime otherwise.
std::uint64_t require_sequence_prime(u128 p);

/// i in {0, 2} with 2 in C_i^4, via 2^((p-1)/4). Requires p prime, p = 1 (mod 8).
int two_class_by_power(u128 p);

struct SeqScanRecord {
  std::uint64_t n = 0;
  std::uint64_t u = 0;
  u128 p = 0;
  bool prime = false;
  Certainty certainty = Certainty::Deterministic;
  std::optional<int> two_class;  // set for primes only

  bool operator==(const SeqScanRecord&) const = default;
};

SeqScanRecord scan_one(std::uint64_t n);

/// Streams records for n_min..n_max in increasing n; the sink sees the same
/// sequence whatever the job count.
void scan_each(std::uint64_t n_min, std::uint64_t n_max, unsigned jobs,
               const std::function<void(const SeqScanRecord&)>& sink);

std::vector<SeqScanRecord> scan(std::uint64_t n_min, std::uint64_t n_max, unsigned jobs = 1);

struct BunyakovskyReport {
  bool leading_positive = false;
  bool irreducible = false;
  bool content_one = false;
  bool no_fixed_prime_divisor = false;
  // (f(1), f(2), gcd(f(1), f(2)))
  std::array<std::int64_t, 3> witness{};

  bool all() const { return leading_positive && irreducible && content_one && no_fixed_prime_divisor; }
};

/// Checks the four hypotheses of Bunyakovsky's conjecture for 4x^4 + 12x^2 + 1.
BunyakovskyReport bunyakovsky_preconditions();

/// Integer polynomial helpers used by the precondition check (coefficients low to high).
bool has_rational_root(const std::vector<std::int64_t>& coeffs);
bool splits_into_integer_quadratics(const std::vector<std::int64_t>& quartic);

/// Primes p = 4n^4 + 12n^2 + 1 (1 <= n <= n_max) that are also of the form 16m^2 + 1.
std::vector<u128> overlap_with_result_prior2(std::uint64_t n_max);

}  // namespace cyclofact
