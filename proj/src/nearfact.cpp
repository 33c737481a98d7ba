#include "cyclofact/nearfact.hpp"

#include <algorithm>
#include <thread>

#include "cyclofact/primes_seq.hpp"

namespace cyclofact {

namespace {

std::uint64_t checked_product(std::size_t a, std::size_t b) {
  const u128 prod = static_cast<u128>(a) * b;
  if (prod > ~std::uint64_t{0}) throw Error(Errc::Overflow, "|S||T| overflows 64 bits");
  return static_cast<std::uint64_t>(prod);
}

bool passes_size_gate(const NfPair& pair) {
  return static_cast<u128>(pair.S.size()) * pair.T.size() == static_cast<u128>(pair.lambda) * (pair.p - 1);
}

VerifyReport gate_failure_report(const NfPair& pair, VerifyMethod method) {
  VerifyReport report;
  report.method = method;
  report.gate_failure = "|S||T| = " + std::to_string(pair.S.size()) + "*" + std::to_string(pair.T.size()) +
                        " != lambda(p-1) = " + to_string(static_cast<u128>(pair.lambda) * (pair.p - 1));
  return report;
}

void summarize(VerifyReport& report, std::uint64_t lambda) {
  if (report.deviation_histogram.size() == 1) report.lambda_observed = report.deviation_histogram.begin()->first;
  report.ok = report.zero_coefficient == 0 && report.lambda_observed == lambda;
}

void require_order8(const CycNumberTable& table) {
  if (table.order != 8 || table.p % 16 != 1) throw Error(Errc::OrderMismatch, "needs an order-8 table with p = 1 (mod 16)");
}

}  // namespace

std::string_view to_string(PairLabel label) {
  switch (label) {
    case PairLabel::L1a: return "1a";
    case PairLabel::L1b: return "1b";
    case PairLabel::L2a: return "2a";
    case PairLabel::L2b: return "2b";
    case PairLabel::Order2: return "order2";
    case PairLabel::Order4: return "order4";
    case PairLabel::Order6: return "order6";
    case PairLabel::Custom: return "custom";
  }
  return "custom";
}

PairLabel parse_pair_label(std::string_view text) {
  for (PairLabel label : {PairLabel::L1a, PairLabel::L1b, PairLabel::L2a, PairLabel::L2b, PairLabel::Order2,
                          PairLabel::Order4, PairLabel::Order6, PairLabel::Custom}) {
    if (to_string(label) == text) return label;
  }
  throw Error(Errc::InvalidInput, "unknown pair label '" + std::string(text) + "'");
}

std::string_view to_string(VerifyMethod method) { return method == VerifyMethod::Direct ? "direct" : "cyclotomic"; }

void normalize(NfPair& pair) {
  if (pair.p < 2) throw Error(Errc::InvalidInput, "modulus must be >= 2");
  if (pair.lambda == 0) throw Error(Errc::InvalidInput, "lambda must be positive");
  for (auto* subset : {&pair.S, &pair.T}) {
    std::sort(subset->begin(), subset->end());
    if (std::adjacent_find(subset->begin(), subset->end()) != subset->end()) throw Error(Errc::InvalidInput, "duplicate element in subset");
    if (!subset->empty() && subset->back() >= pair.p) throw Error(Errc::InvalidInput, "element out of range [0, p)");
  }
}

std::vector<std::uint64_t> convolution_counts(std::span<const std::uint64_t> S, std::span<const std::uint64_t> T,
                                              std::uint64_t p, const Limits& limits, unsigned jobs) {
  if (p == 0) throw Error(Errc::InvalidInput, "modulus must be positive");
  if (p >= limits.max_p) throw Error(Errc::ResourceLimit, "p = " + std::to_string(p) + " exceeds cap " + std::to_string(limits.max_p));
  const std::uint64_t work = checked_product(S.size(), T.size());
  if (work > limits.max_conv) {
    throw Error(Errc::ResourceLimit, "|S||T| = " + std::to_string(work) + " exceeds direct-verification cap " + std::to_string(limits.max_conv));
  }
  for (auto subset : {S, T}) {
    for (std::uint64_t v : subset) {
      if (v >= p) throw Error(Errc::InvalidInput, "element out of range [0, p)");
    }
  }

  auto accumulate = [&](std::size_t lo, std::size_t hi, std::vector<std::uint64_t>& counts) {
    for (std::size_t k = lo; k < hi; ++k) {
      const std::uint64_t s = S[k];
      for (std::uint64_t t : T) {
        std::uint64_t g = s + t;
        if (g >= p) g -= p;
        ++counts[g];
      }
    }
  };

  std::vector<std::uint64_t> counts(p, 0);
  jobs = std::clamp<unsigned>(jobs, 1, static_cast<unsigned>(std::max<std::size_t>(1, S.size())));
  if (jobs == 1) {
    accumulate(0, S.size(), counts);
    return counts;
  }
  std::vector<std::vector<std::uint64_t>> partial(jobs, std::vector<std::uint64_t>(p, 0));
  const std::size_t slice = (S.size() + jobs - 1) / jobs;
  {
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < jobs; ++w) {
      const std::size_t lo = w * slice, hi = std::min(S.size(), lo + slice);
      if (lo < hi) workers.emplace_back([&, lo, hi, w] { accumulate(lo, hi, partial[w]); });
    }
  }
  for (const auto& part : partial) {
    for (std::uint64_t g = 0; g < p; ++g) counts[g] += part[g];
  }
  return counts;
}

VerifyReport verify_nf(const NfPair& pair, const Limits& limits, unsigned jobs) {
  if (!passes_size_gate(pair)) return gate_failure_report(pair, VerifyMethod::Direct);
  const auto counts = convolution_counts(pair.S, pair.T, pair.p, limits, jobs);
  VerifyReport report;
  report.method = VerifyMethod::Direct;
  report.zero_coefficient = counts[0];
  for (std::uint64_t g = 1; g < pair.p; ++g) ++report.deviation_histogram[counts[g]];
  summarize(report, pair.lambda);
  return report;
}

VerifyReport verify_nf(const NfPair& pair, const CyclotomicSystem& sys) {
  if (pair.p != sys.p()) throw Error(Errc::InvalidInput, "pair modulus differs from the cyclotomic system");
  if (!passes_size_gate(pair)) return gate_failure_report(pair, VerifyMethod::Cyclotomic);
  return verify_nf(pair, sys, cyclotomic_table(sys));
}

VerifyReport verify_nf(const NfPair& pair, const CyclotomicSystem& sys, const CycNumberTable& table) {
  if (pair.p != sys.p() || table.p != sys.p() || table.order != sys.order()) {
    throw Error(Errc::InvalidInput, "pair, system and table disagree on (p, N)");
  }
  if (!passes_size_gate(pair)) return gate_failure_report(pair, VerifyMethod::Cyclotomic);
  const auto rows = coset_union_indices(sys, pair.S);
  const auto cols = coset_union_indices(sys, pair.T);
  if (!rows || !cols) throw Error(Errc::MethodInapplicable, "S and T must be unions of order-" + std::to_string(sys.order()) + " cosets");

  // For h in C_l: [C_i C_j]_h = (j - i, l - i); a + b = 0 needs b in -C_i = C_{i + m}.
  const int n = static_cast<int>(sys.order());
  const int minus_one = sys.coset_of_minus_one();
  const std::uint64_t f = sys.coset_size();
  VerifyReport report;
  report.method = VerifyMethod::Cyclotomic;
  for (int l = 0; l < n; ++l) {
    std::int64_t coeff = 0;
    for (int i : *rows) {
      for (int j : *cols) coeff += table(j - i, l - i);
    }
    report.deviation_histogram[static_cast<std::uint64_t>(coeff)] += f;
  }
  for (int i : *rows) {
    for (int j : *cols) {
      if (wrap(j - i - minus_one, n) == 0) report.zero_coefficient += f;
    }
  }
  summarize(report, pair.lambda);
  return report;
}

std::optional<std::vector<int>> coset_union_indices(const CyclotomicSystem& sys, std::span<const std::uint64_t> subset) {
  std::vector<std::uint64_t> hits(sys.order(), 0);
  for (std::uint64_t x : subset) {
    if (x == 0 || x >= sys.p()) return std::nullopt;
    ++hits[sys.coset_of(x)];
  }
  std::vector<int> indices;
  for (int i = 0; i < static_cast<int>(sys.order()); ++i) {
    if (hits[i] == sys.coset_size()) {
      indices.push_back(i);
    } else if (hits[i] != 0) {
      return std::nullopt;
    }
  }
  return indices;
}

std::vector<std::uint64_t> union_of_cosets(const CyclotomicSystem& sys, std::initializer_list<int> indices) {
  std::vector<std::uint64_t> out;
  for (int i : indices) {
    const auto c = sys.coset(i);
    out.insert(out.end(), c.begin(), c.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

NfPair theorem_pair(const CyclotomicSystem& sys, PairLabel label) {
  if (sys.order() != 8 || sys.p() % 16 != 1) throw Error(Errc::OrderMismatch, "order-8 pairs need an order-8 system with p = 1 (mod 16)");
  NfPair pair;
  pair.p = sys.p();
  pair.lambda = (sys.p() - 1) / 16;
  pair.label = label;
  pair.alpha = sys.alpha();
  switch (label) {
    case PairLabel::L1a:
      pair.S = union_of_cosets(sys, {0, 1});
      pair.T = union_of_cosets(sys, {4, 5});
      break;
    case PairLabel::L1b:
      pair.S = union_of_cosets(sys, {0, 7});
      pair.T = union_of_cosets(sys, {3, 4});
      break;
    case PairLabel::L2a:
      pair.S = union_of_cosets(sys, {0, 5});
      pair.T = union_of_cosets(sys, {1, 4});
      break;
    case PairLabel::L2b:
      pair.S = union_of_cosets(sys, {0, 3});
      pair.T = union_of_cosets(sys, {4, 7});
      break;
    default:
      throw Error(Errc::InvalidInput, "not an order-8 pair label: " + std::string(to_string(label)));
  }
  return pair;
}

TheoremConstruction construct_theorem_main(std::uint64_t p, std::uint64_t alpha, const Limits& limits) {
  require_sequence_prime(p);
  return construct_theorem_main(CyclotomicSystem::build(p, alpha, 8, limits));
}

TheoremConstruction construct_theorem_main(const CyclotomicSystem& sys) {
  require_sequence_prime(sys.p());
  if (sys.order() != 8) throw Error(Errc::OrderMismatch, "construction needs an order-8 system");
  TheoremConstruction out;
  out.signs = resolve_signs(sys);
  out.alpha_class = classify_alpha(out.signs);
  if (out.alpha_class == AlphaClass::Plus) {
    out.pairs = {theorem_pair(sys, PairLabel::L1a), theorem_pair(sys, PairLabel::L1b)};
  } else {
    out.pairs = {theorem_pair(sys, PairLabel::L2a), theorem_pair(sys, PairLabel::L2b)};
  }
  return out;
}

NfPair construct_prior(std::uint64_t p, std::uint64_t alpha, PriorOrder which, const Limits& limits) {
  const auto n_sq_form = [p](std::uint64_t k) { return p > 1 && (p - 1) % k == 0 && is_square((p - 1) / k); };
  bool shaped = false;
  PairLabel label = PairLabel::Custom;
  std::uint64_t lambda_divisor = 1;
  switch (which) {
    case PriorOrder::Order2:
      shaped = p % 4 == 1;
      label = PairLabel::Order2;
      lambda_divisor = 4;
      break;
    case PriorOrder::Order4:
      shaped = n_sq_form(16);
      label = PairLabel::Order4;
      lambda_divisor = 16;
      break;
    case PriorOrder::Order6:
      shaped = n_sq_form(108);
      label = PairLabel::Order6;
      lambda_divisor = 36;
      break;
  }
  if (!shaped) throw Error(Errc::FormMismatch, std::to_string(p) + " does not have the shape required by " + std::string(to_string(label)));
  if (!is_prime(p).prime) throw Error(Errc::FormMismatch, std::to_string(p) + " is not prime");

  const unsigned order = static_cast<unsigned>(which);
  const CyclotomicSystem sys = CyclotomicSystem::build(p, alpha, order, limits);
  NfPair pair;
  pair.p = p;
  pair.S = union_of_cosets(sys, {0});
  pair.T = union_of_cosets(sys, {static_cast<int>(order / 2)});
  pair.lambda = (p - 1) / lambda_divisor;
  pair.label = label;
  pair.alpha = sys.alpha();
  return pair;
}

CosetProductDecomposition coset_product_decomposition(const CycNumberTable& table, int i, int j) {
  require_order8(table);
  CosetProductDecomposition out;
  out.i = wrap(i, 8);
  out.j = wrap(j, 8);
  if (out.i == out.j) throw Error(Errc::DiagonalUnsupported, "C_i C_i contains 0; decomposition needs i != j");
  for (int l = 0; l < 8; ++l) out.coefficients(l) = table(out.j - out.i, l - out.i);
  return out;
}

bool matches_direct_product(const CyclotomicSystem& sys, const CosetProductDecomposition& decomposition) {
  const auto ci = sys.coset(decomposition.i);
  const auto cj = sys.coset(decomposition.j);
  const std::vector<std::uint64_t> left(ci.begin(), ci.end()), right(cj.begin(), cj.end());
  Limits limits;
  limits.max_p = sys.p() + 1;
  limits.max_conv = static_cast<std::uint64_t>(left.size()) * right.size();
  const auto counts = convolution_counts(left, right, sys.p(), limits);
  if (counts[0] != 0) return false;
  for (std::uint64_t h = 1; h < sys.p(); ++h) {
    if (static_cast<std::int64_t>(counts[h]) != decomposition.coefficients(sys.coset_of(h))) return false;
  }
  return true;
}

OctVector pair_coefficients(const CycNumberTable& table, PairLabel label) {
  require_order8(table);
  OctVector c;
  for (int l = 0; l < 8; ++l) {
    switch (label) {
      case PairLabel::L1a: c(l) = table(4, l) + table(5, l) + table(3, l - 1) + table(4, l - 1); break;
      case PairLabel::L1b: c(l) = table(3, l) + table(4, l) + table(4, l + 1) + table(5, l + 1); break;
      case PairLabel::L2a: c(l) = table(1, l) + table(4, l) + table(4, l + 3) + table(7, l + 3); break;
      case PairLabel::L2b: c(l) = table(4, l) + table(7, l) + table(1, l - 3) + table(4, l - 3); break;
      default: throw Error(Errc::InvalidInput, "not an order-8 pair label: " + std::string(to_string(label)));
    }
  }
  return c;
}

std::vector<std::uint64_t> negate(std::span<const std::uint64_t> subset, std::uint64_t p) {
  std::vector<std::uint64_t> out;
  out.reserve(subset.size());
  for (std::uint64_t x : subset) out.push_back(x % p == 0 ? 0 : p - x % p);
  std::sort(out.begin(), out.end());
  return out;
}

bool verify_sedf(std::span<const std::vector<std::uint64_t>> family, std::uint64_t p, std::uint64_t lambda,
                 const Limits& limits) {
  if (family.size() < 2) throw Error(Errc::InvalidInput, "an SEDF needs at least two subsets");
  if (lambda == 0) throw Error(Errc::InvalidInput, "lambda must be positive");
  std::vector<std::vector<std::uint64_t>> sets(family.begin(), family.end());
  std::vector<std::uint64_t> all;
  for (auto& d : sets) {
    if (d.size() != sets.front().size()) throw Error(Errc::SizeMismatch, "SEDF subsets must have equal size");
    std::sort(d.begin(), d.end());
    if (std::adjacent_find(d.begin(), d.end()) != d.end()) throw Error(Errc::InvalidInput, "duplicate element in subset");
    if (!d.empty() && d.back() >= p) throw Error(Errc::InvalidInput, "element out of range [0, p)");
    all.insert(all.end(), d.begin(), d.end());
  }
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) throw Error(Errc::NotDisjoint, "SEDF subsets overlap");

  for (std::size_t j = 0; j < sets.size(); ++j) {
    std::vector<std::uint64_t> others;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (i != j) others.insert(others.end(), sets[i].begin(), sets[i].end());
    }
    const auto counts = convolution_counts(sets[j], negate(others, p), p, limits);
    if (counts[0] != 0) return false;
    for (std::uint64_t g = 1; g < p; ++g) {
      if (counts[g] != lambda) return false;
    }
  }
  return true;
}

}  // namespace cyclofact
