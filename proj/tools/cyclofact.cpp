// cyclofact: near-factorizations of F_p from order-8 cyclotomic classes.
//
// Exit codes: 0 success, 1 a mathematical check failed, 2 invalid input or limits.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "cyclofact/cyclotomy.hpp"
#include "cyclofact/io.hpp"
#include "cyclofact/nearfact.hpp"
#include "cyclofact/primes_seq.hpp"

using namespace cyclofact;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kBadInput = 2;

enum class Format { Text, Json };

struct Common {
  Format format = Format::Text;
  unsigned jobs = 1;
  Limits limits;
};

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::SignMismatch:
    case Errc::NoMatch:
    case Errc::MultipleMatch:
      return kFailed;
    default:
      return kBadInput;
  }
}

std::uint64_t parse_prime_arg(const std::string& text) {
  const u128 v = parse_u128(text);
  if (v > ~std::uint64_t{0}) throw Error(Errc::ResourceLimit, "p must fit in 64 bits for this command");
  return static_cast<std::uint64_t>(v);
}

std::uint64_t alpha_or_default(const std::optional<std::uint64_t>& alpha, std::uint64_t p) {
  return alpha ? *alpha : static_cast<std::uint64_t>(find_primitive_root(p));
}

void emit(const Common& c, const io::Json& json, const std::string& text) {
  if (c.format == Format::Json) {
    std::cout << json.dump() << '\n';
  } else {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  }
}

io::Json record(std::string_view kind) {
  io::Json j;
  j["schema"] = io::kSchemaVersion;
  j["kind"] = kind;
  return j;
}

OrderEightTables load_tables(const std::string& path) {
  if (path.empty()) return OrderEightTables::builtin();
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidInput, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return OrderEightTables::parse(buffer.str());
}

// ---- scan

struct ScanArgs {
  std::uint64_t n_min = 1;
  std::uint64_t n_max = 0;
  bool have_n_max = false;
  bool extended = false;
};

int run_scan(const Common& c, const ScanArgs& a) {
  std::uint64_t n_min = a.n_min, n_max = a.n_max;
  if (a.extended) {
    n_min = 1;
    n_max = 100'000'000;
  } else if (!a.have_n_max) {
    throw Error(Errc::InvalidInput, "--n-max is required unless --extended is given");
  }
  std::uint64_t records = 0, primes = 0, probable = 0;
  scan_each(n_min, n_max, c.jobs, [&](const SeqScanRecord& rec) {
    ++records;
    if (rec.prime) {
      ++primes;
      if (rec.certainty == Certainty::ProbablePrime) ++probable;
    }
    if (!a.extended) emit(c, io::to_json(rec), io::format_scan_record(rec));
  });
  io::Json j = record("scan_summary");
  j["n_min"] = n_min;
  j["n_max"] = n_max;
  j["records"] = records;
  j["primes"] = primes;
  j["probable"] = probable;
  std::ostringstream text;
  text << "summary n_min=" << n_min << " n_max=" << n_max << " records=" << records << " primes=" << primes
       << " probable=" << probable;
  emit(c, j, text.str());
  return kOk;
}

// ---- construct

struct ConstructArgs {
  std::string p;
  std::optional<std::uint64_t> alpha;
  std::string pair = "auto";
  std::string out_dir;
};

io::Json classification_json(const CyclotomicSystem& sys, const TheoremConstruction& con) {
  io::Json j = record("classification");
  j["p"] = sys.p();
  j["alpha"] = sys.alpha();
  j["class"] = to_string(con.alpha_class);
  j["y"] = con.signs.y_signed;
  j["b"] = con.signs.b_signed;
  j["x"] = con.signs.base.x;
  j["a"] = con.signs.base.a;
  return j;
}

std::string classification_text(const CyclotomicSystem& sys, const TheoremConstruction& con) {
  std::ostringstream out;
  out << "class p=" << sys.p() << " alpha=" << sys.alpha() << " class=" << to_string(con.alpha_class)
      << " x=" << con.signs.base.x << " y=" << con.signs.y_signed << " a=" << con.signs.base.a
      << " b=" << con.signs.b_signed;
  return out.str();
}

int run_construct(const Common& c, const ConstructArgs& a) {
  const std::uint64_t p = parse_prime_arg(a.p);
  require_sequence_prime(p);
  const auto sys = CyclotomicSystem::build(p, alpha_or_default(a.alpha, p), 8, c.limits);
  const auto con = construct_theorem_main(sys);
  emit(c, classification_json(sys, con), classification_text(sys, con));

  std::vector<NfPair> pairs;
  if (a.pair == "auto") {
    pairs.assign(con.pairs.begin(), con.pairs.end());
  } else {
    const PairLabel label = parse_pair_label(a.pair);
    if (label != PairLabel::L1a && label != PairLabel::L1b && label != PairLabel::L2a && label != PairLabel::L2b) {
      throw Error(Errc::InvalidInput, "--pair must be auto, 1a, 1b, 2a or 2b");
    }
    pairs.push_back(theorem_pair(sys, label));
  }

  for (const auto& pair : pairs) {
    if (a.out_dir.empty()) {
      emit(c, io::to_json(pair), io::format_pair(pair));
      continue;
    }
    std::filesystem::create_directories(a.out_dir);
    const auto path = std::filesystem::path(a.out_dir) /
                      ("pair_p" + std::to_string(p) + "_a" + std::to_string(sys.alpha()) + "_" +
                       std::string(to_string(pair.label)) + ".txt");
    io::write_pair_file(path, pair);
    io::Json j = record("pair_file");
    j["path"] = path.string();
    j["label"] = to_string(pair.label);
    emit(c, j, "wrote " + path.string());
  }
  return kOk;
}

// ---- verify

struct VerifyArgs {
  std::string pair_file;
  std::string p;
  std::vector<std::uint64_t> S, T;
  std::uint64_t lambda = 0;
  std::optional<std::uint64_t> alpha;
  std::optional<unsigned> order;
  std::string method = "direct";
};

unsigned natural_order(PairLabel label) {
  switch (label) {
    case PairLabel::Order2: return 2;
    case PairLabel::Order4: return 4;
    case PairLabel::Order6: return 6;
    default: return 8;
  }
}

int run_verify(const Common& c, const VerifyArgs& a) {
  NfPair pair;
  if (!a.pair_file.empty()) {
    if (!a.p.empty() || !a.S.empty() || !a.T.empty()) throw Error(Errc::InvalidInput, "--pair-file excludes --p/--s/--t");
    pair = io::read_pair_file(a.pair_file);
    if (a.alpha) pair.alpha = a.alpha;
  } else {
    if (a.p.empty() || a.S.empty() || a.T.empty() || a.lambda == 0) {
      throw Error(Errc::InvalidInput, "need --pair-file or all of --p, --s, --t, --lambda");
    }
    pair = NfPair{parse_prime_arg(a.p), a.S, a.T, a.lambda, PairLabel::Custom, a.alpha};
    normalize(pair);
  }

  std::vector<VerifyReport> reports;
  if (a.method == "direct" || a.method == "both") reports.push_back(verify_nf(pair, c.limits, c.jobs));
  if (a.method == "cyclotomic" || a.method == "both") {
    if (!is_prime(pair.p).prime) throw Error(Errc::MethodInapplicable, "cyclotomic method needs a prime modulus");
    const std::uint64_t alpha = alpha_or_default(pair.alpha, pair.p);
    pair.alpha = alpha;
    const auto sys = CyclotomicSystem::build(pair.p, alpha, a.order.value_or(natural_order(pair.label)), c.limits);
    reports.push_back(verify_nf(pair, sys));
  }

  bool ok = true;
  for (const auto& report : reports) {
    emit(c, io::to_json(report, pair), io::format_report(report, pair));
    ok = ok && report.ok;
  }
  return ok ? kOk : kFailed;
}

// ---- tables

struct TablesArgs {
  std::string p;
  unsigned order = 8;
  std::optional<std::uint64_t> alpha;
  std::string method = "brute";
  std::string tables_file;
};

int run_tables(const Common& c, const TablesArgs& a) {
  const std::uint64_t p = parse_prime_arg(a.p);
  const auto sys = CyclotomicSystem::build(p, alpha_or_default(a.alpha, p), a.order, c.limits);
  const bool want_brute = a.method == "brute" || a.method == "both";
  const bool want_closed = a.method == "closed" || a.method == "both";
  if (want_closed && a.order != 8) throw Error(Errc::InvalidInput, "closed-form tables exist for order 8 only");
  if (want_closed && p % 16 != 1) throw Error(Errc::OrderMismatch, "closed-form tables need p = 1 (mod 16)");

  const auto brute = cyclotomic_table(sys);
  if (want_brute) emit(c, io::to_json(brute), io::format_table(brute));
  if (!want_closed) return kOk;

  const auto tables = load_tables(a.tables_file);
  const auto signs = resolve_signs(sys, brute, tables);
  auto closed = closed_form_table_order8(p, signs.base, signs.y_signed, signs.b_signed, quartic_class_of_two(sys), tables);
  closed.alpha = sys.alpha();
  emit(c, io::to_json(closed), io::format_table(closed));
  if (!want_brute) return kOk;

  io::Json diff = record("table_diff");
  diff["p"] = p;
  diff["alpha"] = sys.alpha();
  diff["entries"] = io::Json::array();
  std::ostringstream text;
  text << "diff p=" << p << " alpha=" << sys.alpha();
  std::uint64_t differing = 0;
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      if (brute(i, j) == closed(i, j)) continue;
      ++differing;
      diff["entries"].push_back({{"i", i}, {"j", j}, {"brute", brute(i, j)}, {"closed", closed(i, j)}});
      text << " (" << i << "," << j << "):" << brute(i, j) << "/" << closed(i, j);
    }
  }
  if (differing == 0) text << " none";
  emit(c, diff, text.str());
  return differing == 0 ? kOk : kFailed;
}

// ---- classify

struct ClassifyArgs {
  std::string p;
  std::optional<std::uint64_t> alpha;
  bool all = false;
};

int run_classify(const Common& c, const ClassifyArgs& a) {
  const std::uint64_t p = parse_prime_arg(a.p);
  std::vector<std::uint64_t> roots;
  if (a.all) {
    roots = enumerate_primitive_roots(p, c.limits);
  } else {
    roots.push_back(alpha_or_default(a.alpha, p));
  }
  std::uint64_t plus = 0, minus = 0;
  for (std::uint64_t alpha : roots) {
    const auto sys = CyclotomicSystem::build(p, alpha, 8, c.limits);
    const auto signs = resolve_signs(sys);
    const AlphaClass cls = classify_alpha(signs);
    (cls == AlphaClass::Plus ? plus : minus) += 1;
    io::Json j = record("root_class");
    j["p"] = p;
    j["alpha"] = alpha;
    j["class"] = to_string(cls);
    j["y"] = signs.y_signed;
    j["b"] = signs.b_signed;
    std::ostringstream text;
    text << "root p=" << p << " alpha=" << alpha << " class=" << to_string(cls) << " y=" << signs.y_signed
         << " b=" << signs.b_signed;
    emit(c, j, text.str());
  }
  io::Json j = record("class_counts");
  j["p"] = p;
  j["roots"] = roots.size();
  j["plus"] = plus;
  j["minus"] = minus;
  emit(c, j, "counts p=" + std::to_string(p) + " roots=" + std::to_string(roots.size()) + " plus=" +
                 std::to_string(plus) + " minus=" + std::to_string(minus));
  if (a.all && sequence_index(p) && (plus == 0 || minus == 0)) return kFailed;
  return kOk;
}

// ---- selfcheck

struct SelfcheckArgs {
  std::uint64_t max_p = 2000;
  std::string tables_file;
};

struct CheckLine {
  std::string name;
  std::uint64_t cases = 0;
  std::vector<std::string> failures;

  void fail(std::string why) {
    if (failures.size() < 5) failures.push_back(std::move(why));
  }
};

std::string where(std::uint64_t p, std::uint64_t alpha) {
  return "p=" + std::to_string(p) + " alpha=" + std::to_string(alpha);
}

int run_selfcheck(const Common& c, const SelfcheckArgs& a) {
  const auto tables = load_tables(a.tables_file);
  std::vector<std::uint64_t> primes16;
  for (std::uint64_t p = 17; p < a.max_p; p += 16) {
    if (is_prime(p).prime) primes16.push_back(p);
  }

  CheckLine closed{"closed_form_tables"}, conjugate{"conjugate_root_identity"}, laws{"cyclotomic_laws"};
  for (std::uint64_t p : primes16) {
    for (std::uint64_t alpha : enumerate_primitive_roots(p, c.limits)) {
      const auto sys = CyclotomicSystem::build(p, alpha, 8, c.limits);
      const auto brute = cyclotomic_table(sys);
      ++closed.cases;
      try {
        resolve_signs(sys, brute, tables);
      } catch (const Error& e) {
        closed.fail(where(p, alpha) + ": " + e.what());
      }
      ++laws.cases;
      for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) {
          if (brute(i, j) != brute(j, i) || brute(i, j) != brute(-i, j - i)) laws.fail(where(p, alpha));
        }
      }
      ++conjugate.cases;
      const auto conj = conjugate_root(sys);
      const auto other = cyclotomic_table(CyclotomicSystem::build(p, conj.root, 8, c.limits));
      for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) {
          if (brute(i, j) != other(5 * i, 5 * j)) conjugate.fail(where(p, alpha));
        }
      }
    }
  }

  CheckLine theorem{"theorem_pairs"}, identity{"coefficient_identity"};
  for (std::uint64_t n = 1; n <= kMaxSequenceN; ++n) {
    const auto rec = scan_one(n);
    if (rec.p >= a.max_p) break;
    if (!rec.prime) continue;
    const auto p = static_cast<std::uint64_t>(rec.p);
    for (std::uint64_t alpha : enumerate_primitive_roots(p, c.limits)) {
      ++theorem.cases;
      ++identity.cases;
      try {
        const auto sys = CyclotomicSystem::build(p, alpha, 8, c.limits);
        const auto con = construct_theorem_main(sys);
        const auto table = cyclotomic_table(sys);
        for (const auto& pair : con.pairs) {
          if (!verify_nf(pair, c.limits, c.jobs).ok) theorem.fail(where(p, alpha) + " pair " + std::string(to_string(pair.label)));
          const OctVector v = pair_coefficients(table, pair.label);
          if (!(64 * v.array() == static_cast<std::int64_t>(4 * p - 4)).all()) identity.fail(where(p, alpha));
        }
      } catch (const Error& e) {
        theorem.fail(where(p, alpha) + ": " + e.what());
      }
    }
  }

  CheckLine prior{"prior_constructions"};
  const std::pair<std::uint64_t, PriorOrder> prior_cases[] = {
      {13, PriorOrder::Order2}, {17, PriorOrder::Order4}, {257, PriorOrder::Order4}, {109, PriorOrder::Order6}};
  for (const auto& [p, which] : prior_cases) {
    if (p >= a.max_p) continue;
    ++prior.cases;
    const auto pair = construct_prior(p, alpha_or_default(std::nullopt, p), which, c.limits);
    if (!verify_nf(pair, c.limits, c.jobs).ok) prior.fail("p=" + std::to_string(p));
  }

  bool all_ok = true;
  for (const auto* line : {&closed, &laws, &conjugate, &theorem, &identity, &prior}) {
    const bool ok = line->failures.empty();
    all_ok = all_ok && ok;
    io::Json j = record("selfcheck");
    j["check"] = line->name;
    j["max_p"] = a.max_p;
    j["cases"] = line->cases;
    j["ok"] = ok;
    j["failures"] = line->failures;
    std::ostringstream text;
    text << (ok ? "PASS " : "FAIL ") << line->name << " cases=" << line->cases;
    for (const auto& f : line->failures) text << "\n  " << f;
    emit(c, j, text.str());
  }
  return all_ok ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Near-factorizations of F_p from order-8 cyclotomic classes"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--jobs", common.jobs, "Worker threads for scan and convolution")->check(CLI::Range(1u, 1024u));

  ScanArgs scan_args;
  auto* scan = app.add_subcommand("scan", "Primality census of 4n^4 + 12n^2 + 1");
  scan->add_option("--n-min", scan_args.n_min, "First n");
  scan->add_option("--n-max", scan_args.n_max, "Last n")->each([&](const std::string&) { scan_args.have_n_max = true; });
  scan->add_flag("--extended", scan_args.extended, "Census of n <= 10^8, summary only");

  ConstructArgs construct_args;
  auto* construct = app.add_subcommand("construct", "Build the pairs for a sequence prime");
  construct->add_option("--p", construct_args.p, "Prime 4n^4 + 12n^2 + 1")->required();
  construct->add_option("--alpha", construct_args.alpha, "Primitive root (default: smallest)");
  construct->add_option("--pair", construct_args.pair, "auto, 1a, 1b, 2a or 2b");
  construct->add_option("--out-dir", construct_args.out_dir, "Write pair files here instead of stdout");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Check S + T = lambda (G - 0)");
  verify->add_option("--pair-file", verify_args.pair_file, "Pair file");
  verify->add_option("--p", verify_args.p, "Modulus");
  verify->add_option("--s", verify_args.S, "Elements of S")->delimiter(',');
  verify->add_option("--t", verify_args.T, "Elements of T")->delimiter(',');
  verify->add_option("--lambda", verify_args.lambda, "Declared lambda");
  verify->add_option("--alpha", verify_args.alpha, "Primitive root for the cyclotomic method");
  verify->add_option("--order", verify_args.order, "Coset order for the cyclotomic method");
  verify->add_option("--method", verify_args.method, "direct, cyclotomic or both")
      ->check(CLI::IsMember({"direct", "cyclotomic", "both"}));

  TablesArgs tables_args;
  auto* tables = app.add_subcommand("tables", "Cyclotomic number tables");
  tables->add_option("--p", tables_args.p, "Prime")->required();
  tables->add_option("--order", tables_args.order, "Order N")->check(CLI::Range(1u, 4096u));
  tables->add_option("--alpha", tables_args.alpha, "Primitive root (default: smallest)");
  tables->add_option("--method", tables_args.method, "brute, closed or both")->check(CLI::IsMember({"brute", "closed", "both"}));
  tables->add_option("--tables-file", tables_args.tables_file, "Replacement order-8 table data");

  ClassifyArgs classify_args;
  auto* classify = app.add_subcommand("classify", "Sort primitive roots into U+ and U-");
  classify->add_option("--p", classify_args.p, "Prime")->required();
  auto* alpha_opt = classify->add_option("--alpha", classify_args.alpha, "Primitive root (default: smallest)");
  classify->add_flag("--all", classify_args.all, "Every primitive root")->excludes(alpha_opt);

  SelfcheckArgs selfcheck_args;
  auto* selfcheck = app.add_subcommand("selfcheck", "Invariant suite up to --max-p");
  selfcheck->add_option("--max-p", selfcheck_args.max_p, "Exclusive bound on p")->check(CLI::Range(std::uint64_t{3}, std::uint64_t{1} << 20));
  selfcheck->add_option("--tables-file", selfcheck_args.tables_file, "Replacement order-8 table data");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  common.format = format == "json" ? Format::Json : Format::Text;
  try {
    common.limits = Limits::from_env();
    if (*scan) return run_scan(common, scan_args);
    if (*construct) return run_construct(common, construct_args);
    if (*verify) return run_verify(common, verify_args);
    if (*tables) return run_tables(common, tables_args);
    if (*classify) return run_classify(common, classify_args);
    if (*selfcheck) return run_selfcheck(common, selfcheck_args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  }
  return kBadInput;
}
