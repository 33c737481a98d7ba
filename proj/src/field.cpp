#include "cyclofact/field.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>

namespace cyclofact {

namespace {

constexpr u128 kTwo64 = u128{1} << 64;

struct Wide {
  u128 hi;
  u128 lo;
};

Wide mul_wide(u128 a, u128 b) {
  const u128 a0 = static_cast<std::uint64_t>(a), a1 = a >> 64;
  const u128 b0 = static_cast<std::uint64_t>(b), b1 = b >> 64;
  const u128 p00 = a0 * b0, p01 = a0 * b1, p10 = a1 * b0, p11 = a1 * b1;
  const u128 mid = (p00 >> 64) + static_cast<std::uint64_t>(p01) + static_cast<std::uint64_t>(p10);
  return {p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64), (mid << 64) | static_cast<std::uint64_t>(p00)};
}

u128 addmod(u128 a, u128 b, u128 m) {
  const u128 s = a + b;
  return (s < a || s >= m) ? s - m : s;
}

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mulmod64(result, base, m);
    base = mulmod64(base, base, m);
    exp >>= 1;
  }
  return result;
}

constexpr std::array<std::uint32_t, 25> kSmallPrimes = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                                        43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

bool miller_rabin64(std::uint64_t n, std::uint64_t base) {
  base %= n;
  if (base == 0) return true;
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  std::uint64_t x = powmod64(base, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int r = 1; r < s; ++r) {
    x = mulmod64(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

bool miller_rabin(const Montgomery& mg, u128 base) {
  const u128 n = mg.modulus();
  u128 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  const u128 one = mg.one();
  const u128 minus_one = mg.sub(0, one);
  u128 x = mg.pow(mg.to(base), d);
  if (x == one || x == minus_one) return true;
  for (int r = 1; r < s; ++r) {
    x = mg.mul(x, x);
    if (x == minus_one) return true;
  }
  return false;
}

int jacobi(i128 a_signed, u128 n) {
  u128 a = a_signed >= 0 ? static_cast<u128>(a_signed) % n : (n - static_cast<u128>(-a_signed) % n) % n;
  int result = 1;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      const unsigned r = static_cast<unsigned>(n & 7);
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if ((a & 3) == 3 && (n & 3) == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

u128 signed_mod(i128 v, u128 n) {
  return v >= 0 ? static_cast<u128>(v) % n : (n - static_cast<u128>(-v) % n) % n;
}

// Strong Lucas probable-prime test, Selfridge parameters (P = 1).
bool strong_lucas(const Montgomery& mg) {
  const u128 n = mg.modulus();
  if (is_square(n)) return false;
  i128 d_param = 5;
  for (;;) {
    const int j = jacobi(d_param, n);
    if (j == -1) break;
    if (j == 0) {
      const u128 abs_d = static_cast<u128>(d_param < 0 ? -d_param : d_param);
      if (abs_d != n) return false;
    }
    d_param = d_param > 0 ? -(d_param + 2) : -d_param + 2;
  }
  const i128 q_param = (1 - d_param) / 4;
  const u128 dm = mg.to(signed_mod(d_param, n));
  const u128 qm = mg.to(signed_mod(q_param, n));

  u128 k = n + 1;
  int s = 0;
  while ((k & 1) == 0) {
    k >>= 1;
    ++s;
  }
  int top = 127;
  while (((k >> top) & 1) == 0) --top;

  u128 u = mg.one(), v = mg.one(), qk = qm;
  for (int bit = top - 1; bit >= 0; --bit) {
    u = mg.mul(u, v);
    v = mg.sub(mg.mul(v, v), mg.add(qk, qk));
    qk = mg.mul(qk, qk);
    if ((k >> bit) & 1) {
      const u128 nu = mg.half(mg.add(u, v));
      const u128 nv = mg.half(mg.add(mg.mul(dm, u), v));
      u = nu;
      v = nv;
      qk = mg.mul(qk, qm);
    }
  }
  if (u == 0 || v == 0) return true;
  for (int r = 1; r < s; ++r) {
    v = mg.sub(mg.mul(v, v), mg.add(qk, qk));
    qk = mg.mul(qk, qk);
    if (v == 0) return true;
  }
  return false;
}

u128 absdiff(u128 a, u128 b) { return a > b ? a - b : b - a; }

// Nontrivial factor of an odd composite n.
u128 pollard_brent(u128 n) {
  const Montgomery mg(n);
  constexpr u128 kBatch = 128;
  for (u128 c = 1;; ++c) {
    const u128 cm = mg.to(c);
    auto step = [&](u128 x) { return mg.add(mg.mul(x, x), cm); };
    u128 y = mg.to(2), x = y, ys = y, q = mg.one(), g = 1;
    for (u128 r = 1; g == 1; r <<= 1) {
      x = y;
      for (u128 i = 0; i < r; ++i) y = step(y);
      for (u128 k = 0; k < r && g == 1; k += kBatch) {
        ys = y;
        const u128 limit = std::min(kBatch, r - k);
        for (u128 i = 0; i < limit; ++i) {
          y = step(y);
          q = mg.mul(q, absdiff(x, y));
        }
        g = gcd(q, n);
      }
    }
    if (g == n) {
      do {
        ys = step(ys);
        g = gcd(absdiff(x, ys), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split(u128 n, std::map<u128, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n).prime) {
    ++out[n];
    return;
  }
  const u128 d = pollard_brent(n);
  split(d, out);
  split(n / d, out);
}

}  // namespace

std::string_view to_string(Certainty certainty) {
  return certainty == Certainty::Deterministic ? "deterministic" : "probable";
}

Montgomery::Montgomery(u128 modulus) : n_(modulus) {
  if (modulus < 3 || (modulus & 1) == 0) throw Error(Errc::InvalidInput, "Montgomery modulus must be odd and > 1");
  u128 inv = modulus;  // correct to 3 bits
  for (int i = 0; i < 6; ++i) inv *= 2 - modulus * inv;
  n_neg_inv_ = u128{0} - inv;
  r1_ = (u128{0} - modulus) % modulus;
  r2_ = r1_;
  for (int i = 0; i < 128; ++i) r2_ = addmod(r2_, r2_, n_);
}

u128 Montgomery::reduce(u128 hi, u128 lo) const {
  const u128 m = lo * n_neg_inv_;
  const Wide mn = mul_wide(m, n_);
  const u128 carry = lo != 0 ? 1 : 0;  // lo + mn.lo is 0 or 2^128
  const u128 t1 = hi + mn.hi;
  const bool c1 = t1 < hi;
  const u128 t2 = t1 + carry;
  const bool c2 = t2 < t1;
  return (c1 || c2 || t2 >= n_) ? t2 - n_ : t2;
}

u128 Montgomery::from(u128 a) const { return reduce(0, a); }

u128 Montgomery::mul(u128 a, u128 b) const {
  const Wide w = mul_wide(a, b);
  return reduce(w.hi, w.lo);
}

u128 Montgomery::add(u128 a, u128 b) const { return addmod(a, b, n_); }

u128 Montgomery::sub(u128 a, u128 b) const { return a >= b ? a - b : a + (n_ - b); }

u128 Montgomery::half(u128 a) const { return (a & 1) == 0 ? a >> 1 : (a >> 1) + (n_ >> 1) + 1; }

u128 Montgomery::pow(u128 base, u128 exp) const {
  u128 result = r1_;
  while (exp != 0) {
    if (exp & 1) result = mul(result, base);
    base = mul(base, base);
    exp >>= 1;
  }
  return result;
}

u128 mulmod(u128 a, u128 b, u128 m) {
  if (m < kTwo64) return (a % m) * (b % m) % m;
  if (m & 1) {
    const Montgomery mg(m);
    return mg.from(mg.mul(mg.to(a), mg.to(b)));
  }
  a %= m;
  b %= m;
  u128 result = 0;
  while (b != 0) {
    if (b & 1) result = addmod(result, a, m);
    a = addmod(a, a, m);
    b >>= 1;
  }
  return result;
}

u128 powmod(u128 base, u128 exp, u128 m) {
  if (m == 1) return 0;
  if (m < kTwo64) {
    // operands stay below 2^64 so the products fit
    u128 result = 1, b = base % m;
    for (; exp != 0; exp >>= 1) {
      if (exp & 1) result = result * b % m;
      b = b * b % m;
    }
    return result;
  }
  if (m & 1) {
    const Montgomery mg(m);
    return mg.from(mg.pow(mg.to(base), exp));
  }
  u128 result = 1, b = base % m;
  for (; exp != 0; exp >>= 1) {
    if (exp & 1) result = mulmod(result, b, m);
    b = mulmod(b, b, m);
  }
  return result;
}

u128 gcd(u128 a, u128 b) {
  while (b != 0) {
    const u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u128 isqrt(u128 n) {
  if (n == 0) return 0;
  constexpr u128 kMaxRoot = kTwo64 - 1;
  u128 r = static_cast<u128>(std::sqrt(static_cast<long double>(n)));
  if (r > kMaxRoot) r = kMaxRoot;
  while (r * r > n) --r;
  while (r < kMaxRoot && (r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_square(u128 n) {
  const u128 r = isqrt(n);
  return r * r == n;
}

PrimalityResult is_prime(u128 n) {
  if (n < 2) return {false, Certainty::Deterministic};
  for (std::uint32_t sp : kSmallPrimes) {
    if (n == sp) return {true, Certainty::Deterministic};
    if (n % sp == 0) return {false, Certainty::Deterministic};
  }
  if (n < 97 * 97) return {true, Certainty::Deterministic};
  if (n < kTwo64) {
    const auto m = static_cast<std::uint64_t>(n);
    for (std::uint64_t base : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
      if (!miller_rabin64(m, base)) return {false, Certainty::Deterministic};
    }
    return {true, Certainty::Deterministic};
  }
  const Montgomery mg(n);
  if (!miller_rabin(mg, 2) || !strong_lucas(mg)) return {false, Certainty::Deterministic};
  return {true, Certainty::ProbablePrime};
}

u128 FactoredOrder::product() const {
  u128 value = 1;
  for (const auto& [prime, exponent] : factors) {
    for (unsigned e = 0; e < exponent; ++e) value *= prime;
  }
  return value;
}

FactoredOrder factorize(u128 n) {
  if (n == 0) throw Error(Errc::InvalidInput, "factorize(0)");
  FactoredOrder result;
  result.n = n;
  std::map<u128, unsigned> found;
  u128 rest = n;
  for (u128 d = 2; d < 1024 && d * d <= rest; d += (d == 2 ? 1 : 2)) {
    while (rest % d == 0) {
      ++found[d];
      rest /= d;
    }
  }
  if (rest != 1 && rest < 1024 * 1024) {
    ++found[rest];
  } else {
    split(rest, found);
  }
  result.factors.assign(found.begin(), found.end());
  return result;
}

u128 euler_phi(const FactoredOrder& factored) {
  u128 phi = 1;
  for (const auto& [prime, exponent] : factored.factors) {
    phi *= prime - 1;
    for (unsigned e = 1; e < exponent; ++e) phi *= prime;
  }
  return phi;
}

bool is_primitive_root(u128 g, u128 p, const FactoredOrder& p_minus_one) {
  g %= p;
  if (g == 0) return false;
  if (p == 2) return g == 1;
  for (const auto& [q, _] : p_minus_one.factors) {
    if (powmod(g, (p - 1) / q, p) == 1) return false;
  }
  return true;
}

bool is_primitive_root(u128 g, u128 p) { return is_primitive_root(g, p, factorize(p - 1)); }

u128 find_primitive_root(u128 p) {
  if (p < 3 || !is_prime(p).prime) throw Error(Errc::InvalidInput, "primitive root requires an odd prime, got " + to_string(p));
  const FactoredOrder order = factorize(p - 1);
  for (u128 g = 2;; ++g) {
    if (is_primitive_root(g, p, order)) return g;
  }
}

std::vector<std::uint64_t> enumerate_primitive_roots(std::uint64_t p, const Limits& limits) {
  if (p >= limits.max_p) throw Error(Errc::ResourceLimit, "p = " + std::to_string(p) + " exceeds enumeration cap " + std::to_string(limits.max_p));
  const auto g = static_cast<std::uint64_t>(find_primitive_root(p));
  std::vector<std::uint64_t> roots;
  std::uint64_t x = 1;
  for (std::uint64_t k = 1; k < p; ++k) {
    x = mulmod64(x, g, p);
    if (std::gcd(k, p - 1) == 1) roots.push_back(x);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace cyclofact
