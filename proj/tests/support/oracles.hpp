#pragma once

// Independent brute-force references. Nothing here calls into the library's
// arithmetic; each routine recomputes its answer from the definition.

#include <cstdint>
#include <map>
#include <vector>

namespace cyclofact::oracle {

bool is_prime_trial(std::uint64_t n);
std::vector<std::uint64_t> factor_trial(std::uint64_t n);  // with multiplicity, ascending

std::uint64_t multiplicative_order(std::uint64_t g, std::uint64_t p);
std::vector<std::uint64_t> primitive_roots_by_order(std::uint64_t p);

// C_i = { alpha^(N k + i) : 0 <= k < f }, sorted
std::vector<std::vector<std::uint64_t>> cosets_by_powers(std::uint64_t p, std::uint64_t alpha, unsigned order);

// #{(u, v) in [0, f)^2 : 1 + alpha^(N u + i) = alpha^(N v + j)}, literally
std::int64_t cyclotomic_by_definition(std::uint64_t p, std::uint64_t alpha, unsigned order, int i, int j);

// multiset {s + t mod p}
std::map<std::uint64_t, std::uint64_t> sumset(const std::vector<std::uint64_t>& S, const std::vector<std::uint64_t>& T,
                                              std::uint64_t p);

// smallest |y| with p = x^2 + d y^2, returned as (x, y) with x >= 0, by exhaustive search
std::pair<std::int64_t, std::int64_t> represent_by_search(std::uint64_t p, std::uint64_t d);

}  // namespace cyclofact::oracle
