#include "cyclofact/cyclotomy.hpp"

#include <array>
#include <numeric>

namespace cyclofact {

namespace {

// Square root of a quadratic residue n modulo an odd prime p (Tonelli-Shanks).
u128 sqrt_mod(u128 n, u128 p) {
  const Montgomery mg(p);
  n %= p;
  if (n == 0) return 0;
  const u128 one = mg.one();
  const u128 minus_one = mg.sub(0, one);
  u128 q = p - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  u128 z = 2;
  while (mg.pow(mg.to(z), (p - 1) / 2) != minus_one) ++z;

  int m = s;
  u128 c = mg.pow(mg.to(z), q);
  u128 t = mg.pow(mg.to(n), q);
  u128 r = mg.pow(mg.to(n), (q + 1) / 2);
  while (t != one) {
    int i = 0;
    for (u128 t2 = t; t2 != one; t2 = mg.mul(t2, t2)) {
      if (++i == m) throw Error(Errc::NoRepresentation, "not a quadratic residue");
    }
    u128 b = c;
    for (int k = 0; k < m - i - 1; ++k) b = mg.mul(b, b);
    m = i;
    c = mg.mul(b, b);
    t = mg.mul(t, c);
    r = mg.mul(r, b);
  }
  return mg.from(r);
}

struct Pair {
  u128 first;   // coefficient-1 part
  u128 second;  // coefficient-d part
};

// p = first^2 + d * second^2
Pair cornacchia(unsigned d, u128 p) {
  u128 r = sqrt_mod(p - d, p);
  if (r > p / 2) r = p - r;
  u128 a = p, b = r;
  const u128 bound = isqrt(p);
  while (b > bound) {
    const u128 t = a % b;
    a = b;
    b = t;
  }
  const u128 rest = p - b * b;
  if (rest % d != 0 || !is_square(rest / d)) throw Error(Errc::NoRepresentation, "Cornacchia descent failed for p = " + to_string(p));
  return {b, isqrt(rest / d)};
}

std::int64_t normalize_one_mod_four(u128 odd) {
  const auto v = static_cast<std::int64_t>(odd);
  return (odd % 4 == 1) ? v : -v;
}

}  // namespace

std::string_view to_string(Provenance provenance) {
  return provenance == Provenance::BruteForce ? "brute-force" : "closed-form";
}

std::string_view to_string(AlphaClass cls) { return cls == AlphaClass::Plus ? "Plus" : "Minus"; }

CyclotomicSystem CyclotomicSystem::build(std::uint64_t p, std::uint64_t alpha, unsigned order, const Limits& limits) {
  if (p < 3 || !is_prime(p).prime) throw Error(Errc::InvalidInput, std::to_string(p) + " is not an odd prime");
  if (p >= limits.max_p) {
    throw Error(Errc::ResourceLimit, "p = " + std::to_string(p) + " exceeds index-table cap " + std::to_string(limits.max_p));
  }
  if (order == 0 || (p - 1) % order != 0) {
    throw Error(Errc::OrderMismatch, "order " + std::to_string(order) + " does not divide p - 1 = " + std::to_string(p - 1));
  }
  if (!is_primitive_root(alpha, p)) {
    throw Error(Errc::NotPrimitive, std::to_string(alpha) + " is not a primitive root mod " + std::to_string(p));
  }

  CyclotomicSystem sys;
  sys.p_ = p;
  sys.alpha_ = alpha % p;
  sys.order_ = order;
  sys.index_.assign(p, 0);
  std::uint64_t x = 1;
  for (std::uint32_t k = 0; k + 1 < p; ++k) {
    sys.index_[x] = k;
    x = x * sys.alpha_ % p;
  }
  sys.cosets_.assign(order, {});
  for (auto& c : sys.cosets_) c.reserve(sys.coset_size());
  for (std::uint64_t e = 1; e < p; ++e) sys.cosets_[sys.index_[e] % order].push_back(static_cast<std::uint32_t>(e));
  return sys;
}

std::int64_t cyclotomic_number(const CyclotomicSystem& sys, std::int64_t i, std::int64_t j) {
  const int n = static_cast<int>(sys.order());
  const int target = wrap(j, n);
  std::int64_t count = 0;
  for (std::uint64_t x : sys.coset(wrap(i, n))) {
    const std::uint64_t next = x + 1;
    if (next != sys.p() && sys.coset_of(next) == target) ++count;
  }
  return count;
}

CycNumberTable cyclotomic_table(const CyclotomicSystem& sys) {
  CycNumberTable table;
  table.p = sys.p();
  table.alpha = sys.alpha();
  table.order = sys.order();
  table.provenance = Provenance::BruteForce;
  table.entries = CountMatrix::Zero(sys.order(), sys.order());
  int here = sys.coset_of(1);
  for (std::uint64_t x = 1; x + 1 < sys.p(); ++x) {
    const int next = sys.coset_of(x + 1);
    ++table.entries(here, next);
    here = next;
  }
  return table;
}

DiophantineReps solve_diophantine(u128 p) {
  if (p >= (u128{1} << 124)) throw Error(Errc::Overflow, "p too large for 64-bit representations");
  if (p % 8 != 1 || !is_prime(p).prime) {
    throw Error(Errc::NoRepresentation, to_string(p) + " is not a prime = 1 (mod 8)");
  }
  DiophantineReps reps;

  // p = A^2 + B^2 with exactly one of A, B even; the even one is 2|y|.
  const Pair sum_sq = cornacchia(1, p);
  const u128 odd = (sum_sq.first & 1) ? sum_sq.first : sum_sq.second;
  const u128 even = (sum_sq.first & 1) ? sum_sq.second : sum_sq.first;
  reps.x = normalize_one_mod_four(odd);
  reps.y_abs = static_cast<std::uint64_t>(even / 2);

  const Pair two_sq = cornacchia(2, p);
  reps.a = normalize_one_mod_four(two_sq.first);
  reps.b_abs = static_cast<std::uint64_t>(two_sq.second);

  const auto sq = [](std::int64_t v) { return static_cast<u128>(static_cast<i128>(v) * v); };
  if (sq(reps.x) + 4 * static_cast<u128>(reps.y_abs) * reps.y_abs != p ||
      sq(reps.a) + 2 * static_cast<u128>(reps.b_abs) * reps.b_abs != p) {
    throw Error(Errc::NoRepresentation, "representation check failed for p = " + to_string(p));
  }
  return reps;
}

int quartic_class_of_two(const CyclotomicSystem& sys) {
  if (sys.order() != 4 && sys.order() != 8) throw Error(Errc::InvalidInput, "quartic class of 2 needs an order-4 or order-8 system");
  if (sys.p() % 8 != 1) throw Error(Errc::InvalidInput, "quartic class of 2 needs p = 1 (mod 8)");
  return static_cast<int>(sys.index(2) % 4);
}

CycNumberTable closed_form_table_order8(std::uint64_t p, const DiophantineReps& reps, std::int64_t y, std::int64_t b,
                                        int two_class, const OrderEightTables& tables) {
  if (p % 16 != 1) throw Error(Errc::OrderMismatch, "closed-form order-8 table needs p = 1 (mod 16)");
  if (static_cast<std::uint64_t>(y < 0 ? -y : y) != reps.y_abs || static_cast<std::uint64_t>(b < 0 ? -b : b) != reps.b_abs) {
    throw Error(Errc::InvalidInput, "trial signs do not match |y|, |b|");
  }
  Eigen::Matrix<std::int64_t, 6, 1> point;
  point << 1, static_cast<std::int64_t>(p), reps.x, y, reps.a, b;
  const Eigen::Matrix<std::int64_t, OrderEightTables::kCritical, 1> scaled = tables.forms(two_class) * point;

  for (int k = 0; k < OrderEightTables::kCritical; ++k) {
    if (scaled(k) < 0 || scaled(k) % 64 != 0) {
      const auto [i, j] = tables.critical()[k];
      throw Error(Errc::SignMismatch, "64(" + std::to_string(i) + "," + std::to_string(j) + ") = " + std::to_string(scaled(k)) +
                                          " at p = " + std::to_string(p) + ", y = " + std::to_string(y) +
                                          ", b = " + std::to_string(b));
    }
  }
  CycNumberTable table;
  table.p = p;
  table.order = 8;
  table.provenance = Provenance::ClosedForm;
  table.entries = tables.relation().unaryExpr([&](int k) { return scaled(k) / 64; }).cast<std::int64_t>();
  return table;
}

SignedReps resolve_signs(const CyclotomicSystem& sys, const OrderEightTables& tables) {
  return resolve_signs(sys, cyclotomic_table(sys), tables);
}

SignedReps resolve_signs(const CyclotomicSystem& sys, const CycNumberTable& brute, const OrderEightTables& tables) {
  if (sys.order() != 8 || sys.p() % 16 != 1) throw Error(Errc::OrderMismatch, "sign resolution needs an order-8 system with p = 1 (mod 16)");
  const DiophantineReps reps = solve_diophantine(sys.p());
  const int two_class = quartic_class_of_two(sys);

  std::vector<SignedReps> matches;
  int trials = 0, non_integral = 0;
  std::string last_mismatch;
  for (int sy : {1, -1}) {
    for (int sb : {1, -1}) {
      if ((reps.y_abs == 0 && sy < 0) || (reps.b_abs == 0 && sb < 0)) continue;
      const std::int64_t y = sy * static_cast<std::int64_t>(reps.y_abs);
      const std::int64_t b = sb * static_cast<std::int64_t>(reps.b_abs);
      ++trials;
      try {
        const CycNumberTable closed = closed_form_table_order8(sys.p(), reps, y, b, two_class, tables);
        if (closed.entries == brute.entries) matches.push_back({reps, y, b, sys.alpha()});
      } catch (const Error& e) {
        if (e.code() != Errc::SignMismatch) throw;
        ++non_integral;
        last_mismatch = e.what();
      }
    }
  }
  const std::string where = " (p = " + std::to_string(sys.p()) + ", alpha = " + std::to_string(sys.alpha()) + ")";
  if (matches.size() == 1) return matches.front();
  if (matches.empty() && non_integral == trials) throw Error(Errc::SignMismatch, "no trial sign gives an integral table" + where + "; last: " + last_mismatch);
  if (matches.empty()) throw Error(Errc::NoMatch, "no closed-form table matches brute force" + where);
  throw Error(Errc::MultipleMatch, std::to_string(matches.size()) + " sign pairs match" + where);
}

AlphaClass classify_alpha(const SignedReps& signed_reps) {
  if (signed_reps.base.y_abs != signed_reps.base.b_abs) {
    throw Error(Errc::NotApplicable, "|y| = " + std::to_string(signed_reps.base.y_abs) + " differs from |b| = " +
                                         std::to_string(signed_reps.base.b_abs));
  }
  return signed_reps.y_signed == signed_reps.b_signed ? AlphaClass::Plus : AlphaClass::Minus;
}

ConjugateRoot conjugate_root(const CyclotomicSystem& sys) {
  if (sys.p() % 16 != 1) throw Error(Errc::OrderMismatch, "conjugate root needs p = 1 (mod 16)");
  const std::uint64_t order = sys.p() - 1;
  std::uint64_t t = 5;
  while (std::gcd(t, order) != 1) t += 8;
  return {t, static_cast<std::uint64_t>(powmod(sys.alpha(), t, sys.p()))};
}

}  // namespace cyclofact
