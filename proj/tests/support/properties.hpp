#pragma once

// Property checks shared by the standalone property suite and the acceptance
// runner. Each returns a failure description, empty on success.

#include <cstdint>
#include <string>
#include <vector>

namespace cyclofact::props {

struct Outcome {
  std::vector<std::string> failures;
  std::uint64_t cases = 0;

  bool ok() const { return failures.empty(); }
  void fail(std::string what) {
    if (failures.size() < 20) failures.push_back(std::move(what));
  }
  void merge(const Outcome& other) {
    cases += other.cases;
    for (const auto& f : other.failures) fail(f);
  }
};

std::vector<std::uint64_t> primes_one_mod(std::uint64_t modulus, std::uint64_t below);

// partition against the power-based oracle, reflection (i,j) = (-i, j-i),
// symmetry and row sums when f is even
Outcome coset_laws(std::uint64_t p, std::uint64_t alpha, unsigned order);

// verify_sedf({D1, D2}) == verify_nf(D1, -D2) on random and constructed instances
Outcome sedf_nf_equivalence(unsigned instances, std::uint64_t seed);

// (i,j)_alpha = (5i,5j)_alpha' for the conjugate root
Outcome conjugate_identity(std::uint64_t p, std::uint64_t alpha);

// quartic class of 2 and the Diophantine pairs for the n-th sequence prime
Outcome two_class_parity(std::uint64_t n);

struct ClassCounts {
  std::uint64_t plus = 0;
  std::uint64_t minus = 0;
};

// classifies every primitive root of p; fails if either class is empty
Outcome alpha_classes(std::uint64_t p, ClassCounts* counts = nullptr);

}  // namespace cyclofact::props
