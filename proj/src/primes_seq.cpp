#include "cyclofact/primes_seq.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <thread>

namespace cyclofact {

u128 seq_value(std::uint64_t n) {
  if (n == 0) throw Error(Errc::InvalidInput, "sequence index starts at n = 1");
  if (n > kMaxSequenceN) throw Error(Errc::Overflow, "n = " + std::to_string(n) + " exceeds " + std::to_string(kMaxSequenceN));
  const u128 u = static_cast<u128>(n) * n;
  return 4 * u * u + 12 * u + 1;
}

std::optional<std::uint64_t> sequence_index(u128 p) {
  // 4u^2 + 12u + 1 = p  <=>  (2u + 3)^2 = p + 8
  if (p < 17 || p > seq_value(kMaxSequenceN)) return std::nullopt;
  const u128 s = isqrt(p + 8);
  if (s * s != p + 8 || (s & 1) == 0) return std::nullopt;
  const u128 u = (s - 3) / 2;
  const u128 n = isqrt(u);
  if (n == 0 || n * n != u) return std::nullopt;
  return static_cast<std::uint64_t>(n);
}

std::uint64_t require_sequence_prime(u128 p) {
  const auto n = sequence_index(p);
  if (!n) throw Error(Errc::NotSequencePrime, to_string(p) + " is not of the form 4n^4 + 12n^2 + 1");
  if (!is_prime(p).prime) throw Error(Errc::NotSequencePrime, to_string(p) + " = f(" + std::to_string(*n) + ") is composite");
  return *n;
}

int two_class_by_power(u128 p) {
  if (p % 8 != 1) throw Error(Errc::InvalidInput, "quartic class of 2 needs p = 1 (mod 8)");
  const u128 r = powmod(2, (p - 1) / 4, p);
  if (r == 1) return 0;
  if (r == p - 1) return 2;
  throw Error(Errc::InvalidInput, "2 is not a quadratic residue mod " + to_string(p));
}

SeqScanRecord scan_one(std::uint64_t n) {
  SeqScanRecord rec;
  rec.n = n;
  rec.u = n * n;
  rec.p = seq_value(n);
  const PrimalityResult verdict = is_prime(rec.p);
  rec.prime = verdict.prime;
  rec.certainty = verdict.certainty;
  if (rec.prime) rec.two_class = two_class_by_power(rec.p);
  return rec;
}

void scan_each(std::uint64_t n_min, std::uint64_t n_max, unsigned jobs,
               const std::function<void(const SeqScanRecord&)>& sink) {
  if (n_min == 0) throw Error(Errc::InvalidInput, "n_min must be >= 1");
  if (n_min > n_max) throw Error(Errc::InvalidInput, "n_min > n_max");
  if (n_max > kMaxSequenceN) throw Error(Errc::Overflow, "n_max exceeds " + std::to_string(kMaxSequenceN));
  jobs = std::max(1u, jobs);

  const std::uint64_t block = 4096ULL * jobs;
  std::vector<SeqScanRecord> buffer;
  for (std::uint64_t start = n_min;; start += block) {
    const std::uint64_t stop = std::min(n_max, start + block - 1);  // inclusive
    const std::uint64_t count = stop - start + 1;
    buffer.assign(count, {});
    if (jobs == 1 || count < 64) {
      for (std::uint64_t k = 0; k < count; ++k) buffer[k] = scan_one(start + k);
    } else {
      const std::uint64_t slice = (count + jobs - 1) / jobs;
      std::vector<std::jthread> workers;
      for (unsigned w = 0; w < jobs; ++w) {
        const std::uint64_t lo = w * slice, hi = std::min(count, lo + slice);
        if (lo >= hi) break;
        workers.emplace_back([&buffer, start, lo, hi] {
          for (std::uint64_t k = lo; k < hi; ++k) buffer[k] = scan_one(start + k);
        });
      }
    }
    for (const auto& rec : buffer) sink(rec);
    if (stop == n_max) break;
  }
}

std::vector<SeqScanRecord> scan(std::uint64_t n_min, std::uint64_t n_max, unsigned jobs) {
  std::vector<SeqScanRecord> out;
  scan_each(n_min, n_max, jobs, [&out](const SeqScanRecord& rec) { out.push_back(rec); });
  return out;
}

namespace {

std::vector<std::int64_t> positive_divisors(std::int64_t n) {
  n = std::llabs(n);
  std::vector<std::int64_t> out;
  for (std::int64_t d = 1; d <= n; ++d) {
    if (n % d == 0) out.push_back(d);
  }
  return out;
}

}  // namespace

bool has_rational_root(const std::vector<std::int64_t>& coeffs) {
  if (coeffs.empty()) return false;
  if (coeffs.front() == 0) return true;
  const int degree = static_cast<int>(coeffs.size()) - 1;
  // candidate r = num/den with num | c_0 and den | c_deg; test den^deg * f(num/den) = 0
  for (std::int64_t num : positive_divisors(coeffs.front())) {
    for (std::int64_t den : positive_divisors(coeffs.back())) {
      for (std::int64_t sign : {1, -1}) {
        i128 acc = 0, num_pow = 1;
        std::vector<i128> den_pow(degree + 1, 1);
        for (int k = 1; k <= degree; ++k) den_pow[k] = den_pow[k - 1] * den;
        for (int k = 0; k <= degree; ++k) {
          acc += coeffs[k] * num_pow * den_pow[degree - k];
          num_pow *= sign * num;
        }
        if (acc == 0) return true;
      }
    }
  }
  return false;
}

bool splits_into_integer_quadratics(const std::vector<std::int64_t>& quartic) {
  if (quartic.size() != 5 || quartic[4] == 0) throw Error(Errc::InvalidInput, "expected a degree-4 polynomial");
  const std::int64_t c0 = quartic[0], c1 = quartic[1], c2 = quartic[2], c3 = quartic[3], c4 = quartic[4];
  if (c0 == 0) throw Error(Errc::InvalidInput, "zero constant term; x divides the polynomial");
  // (a x^2 + b x + c)(d x^2 + e x + g); the sign of the leading pair is folded into (c, g)
  std::int64_t norm1 = 0;
  for (auto c : quartic) norm1 += std::llabs(c);
  const std::int64_t bound = 2 * norm1;
  for (std::int64_t a : positive_divisors(c4)) {
    const std::int64_t d = c4 / a;
    for (std::int64_t c_abs : positive_divisors(c0)) {
      for (std::int64_t c : {c_abs, -c_abs}) {
        const std::int64_t g = c0 / c;
        for (std::int64_t b = -bound; b <= bound; ++b) {
          // a e + b d = c3
          if ((c3 - b * d) % a != 0) continue;
          const std::int64_t e = (c3 - b * d) / a;
          if (a * g + b * e + c * d == c2 && b * g + c * e == c1) return true;
        }
      }
    }
  }
  return false;
}

BunyakovskyReport bunyakovsky_preconditions() {
  const std::vector<std::int64_t> f = {1, 0, 12, 0, 4};
  const auto eval = [&f](std::int64_t x) {
    std::int64_t acc = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * x + *it;
    return acc;
  };
  BunyakovskyReport report;
  report.leading_positive = f.back() > 0;
  report.irreducible = !has_rational_root(f) && !splits_into_integer_quadratics(f);
  std::int64_t content = 0;
  for (auto c : f) content = std::gcd(content, c);
  report.content_one = content == 1;
  const std::int64_t f1 = eval(1), f2 = eval(2);
  report.witness = {f1, f2, std::gcd(f1, f2)};
  report.no_fixed_prime_divisor = report.witness[2] == 1;
  return report;
}

std::vector<u128> overlap_with_result_prior2(std::uint64_t n_max) {
  std::vector<u128> common;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const u128 p = seq_value(n);
    // p - 1 = 4n^2(n^2 + 3) is always divisible by 16
    if (is_square((p - 1) / 16) && is_prime(p).prime) common.push_back(p);
  }
  return common;
}

}  // namespace cyclofact
