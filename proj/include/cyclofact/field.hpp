#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cyclofact/types.hpp"

namespace cyclofact {

enum class Certainty { Deterministic, ProbablePrime };

std::string_view to_string(Certainty certainty);

struct PrimalityResult {
  bool prime = false;
  Certainty certainty = Certainty::Deterministic;
};

/// Montgomery arithmetic modulo an odd n > 1 with R = 2^128.
/// Values passed to mul/add/sub are in Montgomery form and reduced.
class Montgomery {
 public:
  explicit Montgomery(u128 modulus);

  u128 modulus() const { return n_; }
  u128 one() const { return r1_; }
  u128 to(u128 a) const { return mul(a % n_, r2_); }
  u128 from(u128 a) const;
  u128 mul(u128 a, u128 b) const;
  u128 add(u128 a, u128 b) const;
  u128 sub(u128 a, u128 b) const;
  // a/2 mod n
  u128 half(u128 a) const;
  u128 pow(u128 base, u128 exp) const;

 private:
  u128 reduce(u128 hi, u128 lo) const;

  u128 n_;
  u128 n_neg_inv_;  // -n^{-1} mod 2^128
  u128 r1_;         // R mod n
  u128 r2_;         // R^2 mod n
};

u128 mulmod(u128 a, u128 b, u128 m);
u128 powmod(u128 base, u128 exp, u128 m);
u128 gcd(u128 a, u128 b);
u128 isqrt(u128 n);
bool is_square(u128 n);

/// Miller-Rabin with the Sinclair witness set below 2^64 (deterministic);
/// Baillie-PSW above. Composite verdicts always carry a witness and are
/// therefore Deterministic.
PrimalityResult is_prime(u128 n);

struct FactoredOrder {
  u128 n = 1;
  std::vector<std::pair<u128, unsigned>> factors;  // ascending primes

  u128 product() const;
};

/// Trial division followed by Pollard-Brent rho.
FactoredOrder factorize(u128 n);

u128 euler_phi(const FactoredOrder& factored);

bool is_primitive_root(u128 g, u128 p, const FactoredOrder& p_minus_one);
bool is_primitive_root(u128 g, u128 p);

/// Smallest g >= 2 generating F_p^*. Requires p an odd prime.
u128 find_primitive_root(u128 p);

/// All phi(p-1) generators in ascending order; ResourceLimit when p >= limits.max_p.
std::vector<std::uint64_t> enumerate_primitive_roots(std::uint64_t p, const Limits& limits = {});

}  // namespace cyclofact
