#include <doctest.h>

#include <algorithm>

#include "cyclofact/primes_seq.hpp"
#include "support/oracles.hpp"

using namespace cyclofact;

TEST_CASE("seq_value examples") {
  CHECK(seq_value(1) == 17);
  CHECK(seq_value(2) == 113);
  CHECK(seq_value(6) == 5617);
  CHECK(seq_value(2000) == 64000048000001ULL);
  CHECK_THROWS_WITH_AS(seq_value(0), doctest::Contains("InvalidInput"), Error);
  CHECK_THROWS_WITH_AS(seq_value(kMaxSequenceN + 1), doctest::Contains("Overflow"), Error);
  CHECK(seq_value(kMaxSequenceN) < (u128{1} << 126));
}

TEST_CASE("sequence_index inverts seq_value") {
  for (std::uint64_t n : std::vector<std::uint64_t>{1, 2, 3, 77, 4096, 123456789, kMaxSequenceN}) {
    CHECK(sequence_index(seq_value(n)) == n);
    CHECK_FALSE(sequence_index(seq_value(n) + 2).has_value());
  }
  CHECK_FALSE(sequence_index(97).has_value());
  CHECK_FALSE(sequence_index(1).has_value());
  CHECK(require_sequence_prime(433) == 3);
  CHECK_THROWS_WITH_AS(require_sequence_prime(97), doctest::Contains("NotSequencePrime"), Error);
  CHECK_THROWS_WITH_AS(require_sequence_prime(5617), doctest::Contains("NotSequencePrime"), Error);
}

TEST_CASE("scan examples") {
  const auto recs = scan(1, 6);
  REQUIRE(recs.size() == 6);
  std::vector<std::uint64_t> primes;
  std::vector<int> classes;
  for (const auto& r : recs) {
    if (r.prime) {
      primes.push_back(static_cast<std::uint64_t>(r.p));
      classes.push_back(*r.two_class);
    }
  }
  CHECK(primes == std::vector<std::uint64_t>{17, 113, 433, 1217, 2801});
  CHECK(classes == std::vector<int>{2, 0, 2, 0, 2});
  CHECK_FALSE(recs[5].prime);
  CHECK_FALSE(recs[5].two_class.has_value());
  CHECK(recs[5].u == 36);

  CHECK_THROWS_AS(scan(1, 0), Error);
  CHECK_THROWS_AS(scan(0, 5), Error);
  CHECK_THROWS_WITH_AS(scan(1, kMaxSequenceN + 1), doctest::Contains("Overflow"), Error);
}

TEST_CASE("scan counts match trial division") {
  const auto recs = scan(1, 100);
  std::uint64_t count = 0;
  for (const auto& r : recs) {
    const auto p = static_cast<std::uint64_t>(r.p);
    CHECK(r.prime == oracle::is_prime_trial(p));
    if (r.prime) {
      ++count;
      CHECK(r.certainty == Certainty::Deterministic);
      CHECK(*r.two_class == (r.n % 2 == 1 ? 2 : 0));
    }
  }
  CHECK(count == 33);

  const auto big = scan(1, 2000, 4);
  CHECK(std::count_if(big.begin(), big.end(), [](const SeqScanRecord& r) { return r.prime; }) == 404);
}

TEST_CASE("scan is job-count independent") {
  const auto serial = scan(1, 20'000, 1);
  CHECK(serial == scan(1, 20'000, 2));
  CHECK(serial == scan(1, 20'000, 7));
  CHECK(scan(9'000, 9'100, 16) == std::vector<SeqScanRecord>(serial.begin() + 8'999, serial.begin() + 9'100));
}

TEST_CASE("records above 2^64") {
  const auto rec = scan_one(100'000);
  CHECK(rec.p > (u128{1} << 64));
  CHECK(rec.p == seq_value(100'000));
  CHECK(rec.prime);  // checked independently
  CHECK(rec.certainty == Certainty::ProbablePrime);
}

TEST_CASE("two_class_by_power") {
  CHECK(two_class_by_power(17) == 2);
  CHECK(two_class_by_power(113) == 0);
  CHECK(two_class_by_power(433) == 2);
  CHECK(two_class_by_power(73) == 0);  // 2 is a fourth power mod 73
  CHECK_THROWS_AS(two_class_by_power(13), Error);
}

TEST_CASE("bunyakovsky_preconditions") {
  const auto report = bunyakovsky_preconditions();
  CHECK(report.all());
  CHECK(report.witness == std::array<std::int64_t, 3>{17, 113, 1});

  CHECK(has_rational_root({-1, 0, 4}));        // 4x^2 - 1
  CHECK_FALSE(has_rational_root({1, 0, 12, 0, 4}));
  CHECK(splits_into_integer_quadratics({1, 0, 0, 0, 4}));  // (2x^2+2x+1)(2x^2-2x+1)
  CHECK_FALSE(splits_into_integer_quadratics({1, 0, 12, 0, 4}));
  CHECK(splits_into_integer_quadratics({4, 0, 5, 0, 1}));  // (x^2+1)(x^2+4)
}

TEST_CASE("overlap_with_result_prior2") {
  CHECK(overlap_with_result_prior2(0).empty());
  CHECK(overlap_with_result_prior2(1) == std::vector<u128>{17});
  CHECK(overlap_with_result_prior2(10'000) == std::vector<u128>{17});
}
