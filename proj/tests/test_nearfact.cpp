#include <doctest.h>

#include "cyclofact/nearfact.hpp"
#include "cyclofact/primes_seq.hpp"
#include "support/oracles.hpp"

using namespace cyclofact;

namespace {

using Set = std::vector<std::uint64_t>;

NfPair make_pair(std::uint64_t p, Set S, Set T, std::uint64_t lambda) {
  NfPair pair{p, std::move(S), std::move(T), lambda, PairLabel::Custom, std::nullopt};
  normalize(pair);
  return pair;
}

// true iff the sumset oracle sees lambda on every nonzero element and nothing on 0
bool oracle_is_nf(const NfPair& pair) {
  const auto sums = oracle::sumset(pair.S, pair.T, pair.p);
  if (sums.contains(0)) return false;
  for (std::uint64_t g = 1; g < pair.p; ++g) {
    const auto it = sums.find(g);
    if (it == sums.end() || it->second != pair.lambda) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("convolution_counts examples") {
  CHECK(convolution_counts(Set{1}, Set{0, 1}, 3) == Set{0, 1, 1});

  const auto counts = convolution_counts(Set{1, 16, 3, 14}, Set{4, 13, 5, 12}, 17);
  CHECK(counts[0] == 0);
  for (std::uint64_t g = 1; g < 17; ++g) CHECK(counts[g] == 1);

  CHECK(convolution_counts(Set{1, 16, 5, 12}, Set{3, 14, 4, 13}, 17)[2] == 2);

  Limits tight;
  tight.max_conv = 15;
  CHECK_THROWS_WITH_AS(convolution_counts(Set{1, 16, 3, 14}, Set{4, 13, 5, 12}, 17, tight),
                       doctest::Contains("ResourceLimit"), Error);
}

TEST_CASE("convolution_counts is job-count independent") {
  const auto sys = CyclotomicSystem::build(2801, 3, 8);
  const auto S = union_of_cosets(sys, {0, 1});
  const auto T = union_of_cosets(sys, {4, 5});
  const auto serial = convolution_counts(S, T, 2801, {}, 1);
  CHECK(serial == convolution_counts(S, T, 2801, {}, 3));
  CHECK(serial == convolution_counts(S, T, 2801, {}, 8));
}

TEST_CASE("normalize rejects malformed pairs") {
  CHECK_THROWS_AS(make_pair(17, {1, 1}, {2}, 1), Error);
  CHECK_THROWS_AS(make_pair(17, {17}, {2}, 1), Error);
  CHECK_THROWS_AS(make_pair(17, {1}, {2}, 0), Error);
  CHECK(make_pair(17, {5, 1}, {9, 2}, 1).S == Set{1, 5});
}

TEST_CASE("verify_nf examples") {
  const auto sys = CyclotomicSystem::build(17, 3, 8);
  const auto one_a = theorem_pair(sys, PairLabel::L1a);
  CHECK(one_a.S == Set{1, 3, 14, 16});
  CHECK(one_a.T == Set{4, 5, 12, 13});
  CHECK(one_a.lambda == 1);

  for (const auto& report : {verify_nf(one_a), verify_nf(one_a, sys)}) {
    CHECK(report.ok);
    CHECK(report.lambda_observed == 1);
    CHECK(report.zero_coefficient == 0);
    CHECK(report.deviation_histogram == std::map<std::uint64_t, std::uint64_t>{{1, 16}});
  }
  CHECK(verify_nf(one_a, sys).method == VerifyMethod::Cyclotomic);

  const auto tiny = verify_nf(make_pair(3, {1}, {1, 2}, 1));
  CHECK_FALSE(tiny.ok);
  CHECK(tiny.zero_coefficient == 1);
  CHECK_FALSE(tiny.gate_failure.has_value());

  const auto two_a = theorem_pair(sys, PairLabel::L2a);
  for (const auto& report : {verify_nf(two_a), verify_nf(two_a, sys)}) {
    CHECK_FALSE(report.ok);
    CHECK(report.deviation_histogram.contains(2));
    CHECK_FALSE(report.lambda_observed.has_value());
  }

  auto wrong_lambda = one_a;
  wrong_lambda.lambda = 2;
  const auto gated = verify_nf(wrong_lambda);
  CHECK_FALSE(gated.ok);
  CHECK(gated.gate_failure.has_value());

  CHECK_THROWS_WITH_AS(verify_nf(make_pair(17, {1, 2, 3, 4}, {5, 6, 7, 8}, 1), sys), doctest::Contains("MethodInapplicable"), Error);
}

TEST_CASE("direct and cyclotomic verification agree with the sumset oracle") {
  for (auto [p, order] : {std::pair{13ULL, 2u}, {17ULL, 4u}, {41ULL, 8u}, {113ULL, 8u}, {109ULL, 6u}, {37ULL, 3u}, {31ULL, 5u}}) {
    const auto alpha = static_cast<std::uint64_t>(find_primitive_root(p));
    const auto sys = CyclotomicSystem::build(p, alpha, order);
    const auto table = cyclotomic_table(sys);
    const auto f = sys.coset_size();
    for (unsigned mask_s = 1; mask_s < (1u << order); ++mask_s) {
      for (unsigned mask_t = 1; mask_t < (1u << order); mask_t += 3) {
        Set S, T;
        for (unsigned i = 0; i < order; ++i) {
          if (mask_s >> i & 1) S.insert(S.end(), sys.coset(i).begin(), sys.coset(i).end());
          if (mask_t >> i & 1) T.insert(T.end(), sys.coset(i).begin(), sys.coset(i).end());
        }
        const std::uint64_t size = static_cast<std::uint64_t>(S.size()) * T.size();
        const std::uint64_t lambda = size % (p - 1) == 0 ? size / (p - 1) : 1;
        const auto pair = make_pair(p, S, T, lambda);
        const auto direct = verify_nf(pair);
        const auto cyc = verify_nf(pair, sys, table);
        const bool expect = oracle_is_nf(pair);
        CHECK(direct.ok == expect);
        CHECK(cyc.ok == expect);
        if (!direct.gate_failure) {
          CHECK(direct.zero_coefficient == cyc.zero_coefficient);
          CHECK(direct.deviation_histogram == cyc.deviation_histogram);
        }
        (void)f;
      }
    }
  }
}

TEST_CASE("construct_theorem_main examples") {
  const auto c17 = construct_theorem_main(17, 3);
  CHECK(c17.alpha_class == AlphaClass::Plus);
  CHECK(c17.pairs[0].label == PairLabel::L1a);
  CHECK(c17.pairs[0].S == Set{1, 3, 14, 16});
  CHECK(c17.pairs[0].T == Set{4, 5, 12, 13});
  CHECK(c17.pairs[0].lambda == 1);
  CHECK(c17.pairs[1].label == PairLabel::L1b);

  const auto c113 = construct_theorem_main(113, 3);
  for (const auto& pair : c113.pairs) {
    CHECK(pair.S.size() == 28);
    CHECK(pair.T.size() == 28);
    CHECK(pair.lambda == 7);
    CHECK(verify_nf(pair).ok);
  }

  const auto minus = construct_theorem_main(17, 5);
  CHECK(minus.alpha_class == AlphaClass::Minus);
  CHECK(minus.pairs[0].label == PairLabel::L2a);
  CHECK(minus.pairs[1].label == PairLabel::L2b);

  CHECK_THROWS_WITH_AS(construct_theorem_main(97, 5), doctest::Contains("NotSequencePrime"), Error);
  CHECK_THROWS_WITH_AS(construct_theorem_main(17, 2), doctest::Contains("NotPrimitive"), Error);
}

TEST_CASE("construct_prior examples") {
  const auto qr = construct_prior(13, 2, PriorOrder::Order2);
  CHECK(qr.S == Set{1, 3, 4, 9, 10, 12});
  CHECK(qr.T == Set{2, 5, 6, 7, 8, 11});
  CHECK(qr.lambda == 3);
  CHECK(verify_nf(qr).ok);

  const auto quartic = construct_prior(257, 3, PriorOrder::Order4);
  CHECK(quartic.lambda == 16);
  CHECK(verify_nf(quartic).ok);
  CHECK(verify_nf(construct_prior(17, 3, PriorOrder::Order4)).ok);

  const auto sextic = construct_prior(109, 6, PriorOrder::Order6);
  CHECK(sextic.lambda == 3);
  CHECK(verify_nf(sextic).ok);

  CHECK_THROWS_WITH_AS(construct_prior(113, 3, PriorOrder::Order4), doctest::Contains("FormMismatch"), Error);
  CHECK_THROWS_WITH_AS(construct_prior(19, 2, PriorOrder::Order2), doctest::Contains("FormMismatch"), Error);
  CHECK_THROWS_WITH_AS(construct_prior(37, 2, PriorOrder::Order6), doctest::Contains("FormMismatch"), Error);
}

TEST_CASE("coset_product_decomposition") {
  const auto sys = CyclotomicSystem::build(17, 3, 8);
  const auto table = cyclotomic_table(sys);
  const auto d04 = coset_product_decomposition(table, 0, 4);
  for (int l = 0; l < 8; ++l) CHECK(d04.coefficients(l) == table(4, l));
  CHECK(d04.coefficients.sum() * 2 == 4);
  CHECK(matches_direct_product(sys, d04));

  const auto d12 = coset_product_decomposition(table, 1, 2);
  for (int l = 0; l < 8; ++l) CHECK(d12.coefficients(l) == table(1, l - 1));

  CHECK_THROWS_WITH_AS(coset_product_decomposition(table, 3, 3), doctest::Contains("DiagonalUnsupported"), Error);

  for (std::uint64_t p : {113ULL, 433ULL, 1217ULL}) {
    const auto s = CyclotomicSystem::build(p, static_cast<std::uint64_t>(find_primitive_root(p)), 8);
    const auto t = cyclotomic_table(s);
    for (int i = 0; i < 8; ++i) {
      for (int j = 0; j < 8; ++j) {
        if (i != j) CHECK(matches_direct_product(s, coset_product_decomposition(t, i, j)));
      }
    }
  }
}

TEST_CASE("pair_coefficients") {
  const auto sys = CyclotomicSystem::build(17, 3, 8);
  const auto table = cyclotomic_table(sys);
  CHECK(pair_coefficients(table, PairLabel::L1a) == OctVector::Ones());
  CHECK(pair_coefficients(table, PairLabel::L1b) == OctVector::Ones());
  CHECK(pair_coefficients(table, PairLabel::L2a) != OctVector::Ones());

  for (std::uint64_t n = 1; n <= 5; ++n) {
    const auto p = static_cast<std::uint64_t>(seq_value(n));
    for (std::uint64_t alpha : enumerate_primitive_roots(p)) {
      if (alpha > 40) break;
      const auto s = CyclotomicSystem::build(p, alpha, 8);
      const auto construction = construct_theorem_main(s);
      const auto t = cyclotomic_table(s);
      for (const auto& pair : construction.pairs) {
        CHECK((64 * pair_coefficients(t, pair.label).array() == static_cast<std::int64_t>(4 * p - 4)).all());
      }
    }
  }
  CHECK_THROWS_AS(pair_coefficients(table, PairLabel::Order2), Error);
}

TEST_CASE("verify_sedf") {
  const std::vector<Set> family{{1, 3, 14, 16}, {4, 5, 12, 13}};
  CHECK(verify_sedf(family, 17, 1));
  CHECK_FALSE(verify_sedf(family, 17, 2));

  // {1} - {2} = {2} and {2} - {1} = {1}: 0 is never hit but lambda(p-1) = 2 > 1
  const std::vector<Set> tiny{{1}, {2}};
  CHECK_FALSE(verify_sedf(tiny, 3, 1));

  CHECK_THROWS_WITH_AS(verify_sedf(std::vector<Set>{{1, 2}, {2, 3}}, 17, 1), doctest::Contains("NotDisjoint"), Error);
  CHECK_THROWS_WITH_AS(verify_sedf(std::vector<Set>{{1, 2}, {3}}, 17, 1), doctest::Contains("SizeMismatch"), Error);
  CHECK_THROWS_AS(verify_sedf(std::vector<Set>{{1}}, 17, 1), Error);
}

TEST_CASE("negate") {
  CHECK(negate(Set{1, 3, 14, 16}, 17) == Set{1, 3, 14, 16});
  CHECK(negate(Set{0, 2}, 7) == Set{0, 5});
}
