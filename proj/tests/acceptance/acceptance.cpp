// Acceptance runner: one PASS/FAIL line per criterion, exit 1 if any fails.
// Every comparison below is exact integer equality; there are no tolerances.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "cyclofact/io.hpp"
#include "cyclofact/nearfact.hpp"
#include "cyclofact/primes_seq.hpp"
#include "support/properties.hpp"

using namespace cyclofact;

namespace {

constexpr std::uint64_t kSequencePrimes[] = {17, 113, 433, 1217, 2801};
constexpr std::uint64_t kLambdas[] = {1, 7, 27, 76, 175};

struct Verdict {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

std::string at(std::uint64_t p, std::uint64_t alpha) {
  return "p=" + std::to_string(p) + " alpha=" + std::to_string(alpha);
}

Verdict ac1_theorem_pairs() {
  Verdict v;
  std::uint64_t checked = 0;
  for (std::size_t k = 0; k < std::size(kSequencePrimes); ++k) {
    const std::uint64_t p = kSequencePrimes[k];
    if ((p - 1) / 16 != kLambdas[k]) v.fail("lambda table mismatch at p=" + std::to_string(p));
    for (std::uint64_t alpha : enumerate_primitive_roots(p)) {
      const auto con = construct_theorem_main(p, alpha);
      for (const auto& pair : con.pairs) {
        const auto report = verify_nf(pair);
        ++checked;
        if (!report.ok || report.lambda_observed != kLambdas[k] || pair.lambda != kLambdas[k]) {
          v.fail(at(p, alpha) + " pair " + std::string(to_string(pair.label)));
        }
      }
    }
  }
  if (v.ok) v.detail = std::to_string(checked) + " pairs verified by direct convolution";
  return v;
}

Verdict ac2_closed_form() {
  Verdict v;
  std::uint64_t cases = 0;
  for (std::uint64_t p : props::primes_one_mod(16, 2000)) {
    for (std::uint64_t alpha : enumerate_primitive_roots(p)) {
      ++cases;
      try {
        const auto sys = CyclotomicSystem::build(p, alpha, 8);
        const auto brute = cyclotomic_table(sys);
        const auto signs = resolve_signs(sys, brute);
        const auto closed =
            closed_form_table_order8(p, signs.base, signs.y_signed, signs.b_signed, quartic_class_of_two(sys));
        if (closed.entries != brute.entries) v.fail(at(p, alpha) + ": tables differ");
      } catch (const Error& e) {
        v.fail(at(p, alpha) + ": " + e.what());
      }
    }
  }
  if (v.ok) v.detail = std::to_string(cases) + " (p, alpha) cases, unique sign match, 64 entries equal";
  return v;
}

Verdict ac3_coefficient_identity() {
  Verdict v;
  std::uint64_t checked = 0;
  for (std::uint64_t p : kSequencePrimes) {
    for (std::uint64_t alpha : enumerate_primitive_roots(p)) {
      const auto sys = CyclotomicSystem::build(p, alpha, 8);
      const auto table = cyclotomic_table(sys);
      for (const auto& pair : construct_theorem_main(sys).pairs) {
        const OctVector c = pair_coefficients(table, pair.label);
        ++checked;
        if (!(64 * c.array() == static_cast<std::int64_t>(4 * p - 4)).all()) {
          v.fail(at(p, alpha) + " label " + std::string(to_string(pair.label)));
        }
      }
    }
  }
  if (v.ok) v.detail = std::to_string(checked) + " coefficient vectors with 64 * value = 4p - 4";
  return v;
}

Verdict ac4_prior() {
  Verdict v;
  struct Case {
    std::uint64_t p;
    PriorOrder which;
    std::uint64_t lambda;
  };
  for (const Case c : {Case{13, PriorOrder::Order2, 3}, Case{17, PriorOrder::Order4, 1},
                       Case{257, PriorOrder::Order4, 16}, Case{109, PriorOrder::Order6, 3}}) {
    const auto pair = construct_prior(c.p, static_cast<std::uint64_t>(find_primitive_root(c.p)), c.which);
    const auto report = verify_nf(pair);
    if (!report.ok || report.lambda_observed != c.lambda) v.fail("p=" + std::to_string(c.p));
  }
  if (v.ok) v.detail = "lambda 3, 1, 16, 3 at p = 13, 17, 257, 109";
  return v;
}

Verdict ac5_scan() {
  Verdict v;
  const auto render = [](unsigned jobs) {
    std::string out;
    scan_each(1, 2000, jobs, [&](const SeqScanRecord& rec) { out += io::format_scan_record(rec) + '\n'; });
    return out;
  };
  const std::string reference = render(1);
  for (unsigned jobs : {1u, 2u, 4u, 8u}) {
    if (render(jobs) != reference) v.fail("record stream differs at jobs=" + std::to_string(jobs));
  }
  const auto recs = scan(1, 2000);
  std::uint64_t primes = 0;
  for (const auto& r : recs) primes += r.prime;
  if (primes != 404) v.fail("prime count " + std::to_string(primes) + ", expected 404");
  const bool prefix[] = {true, true, true, true, true, false};
  for (std::size_t i = 0; i < 6; ++i) {
    if (recs[i].prime != prefix[i]) v.fail("prefix differs at n=" + std::to_string(i + 1));
  }
  if (v.ok) v.detail = "404 primes for n <= 2000, identical streams for jobs 1, 2, 4, 8";
  return v;
}

Verdict ac6_properties() {
  Verdict v;
  props::Outcome all;
  for (std::uint64_t p : props::primes_one_mod(8, 1000)) {
    all.merge(props::coset_laws(p, static_cast<std::uint64_t>(find_primitive_root(p)), 8));
  }
  for (std::uint64_t p : props::primes_one_mod(12, 400)) {
    all.merge(props::coset_laws(p, static_cast<std::uint64_t>(find_primitive_root(p)), 6));
  }
  all.merge(props::sedf_nf_equivalence(100, 0x5eed));
  for (std::uint64_t p : props::primes_one_mod(16, 1500)) {
    for (std::uint64_t alpha : enumerate_primitive_roots(p)) all.merge(props::conjugate_identity(p, alpha));
  }
  for (std::uint64_t n = 1; n <= 60; ++n) {
    if (scan_one(n).prime) all.merge(props::two_class_parity(n));
  }
  std::string counts;
  for (std::uint64_t p : kSequencePrimes) {
    props::ClassCounts c;
    all.merge(props::alpha_classes(p, &c));
    counts += " " + std::to_string(p) + ":" + std::to_string(c.plus) + "/" + std::to_string(c.minus);
  }
  if (!all.ok()) v.fail(all.failures.front());
  if (v.ok) v.detail = std::to_string(all.cases) + " property cases; |U+|/|U-|" + counts;
  return v;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Verdict()>> criteria[] = {
      {"AC1 theorem pairs verify for every primitive root", ac1_theorem_pairs},
      {"AC2 closed-form tables equal brute force, p < 2000", ac2_closed_form},
      {"AC3 64 v = 4p - 4 for the selected pairs", ac3_coefficient_identity},
      {"AC4 prior constructions", ac4_prior},
      {"AC5 scan regression and determinism", ac5_scan},
      {"AC6 property suites", ac6_properties},
  };
  bool all_ok = true;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %s [exact] (%.0f ms): %s\n", v.ok ? "PASS" : "FAIL", name, ms, v.detail.c_str());
    all_ok = all_ok && v.ok;
  }
  return all_ok ? 0 : 1;
}
