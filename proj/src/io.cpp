#include "cyclofact/io.hpp"

#include <fstream>
#include <sstream>

namespace cyclofact::io {

namespace {

std::string join(const std::vector<std::uint64_t>& values) {
  std::string out;
  for (std::uint64_t v : values) {
    if (!out.empty()) out.push_back(' ');
    out += std::to_string(v);
  }
  return out;
}

std::uint64_t parse_u64(const std::string& token) {
  const u128 v = parse_u128(token);
  if (v > ~std::uint64_t{0}) throw Error(Errc::InvalidInput, "value exceeds 64 bits: " + token);
  return static_cast<std::uint64_t>(v);
}

Json header(std::string_view kind) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = kind;
  return j;
}

}  // namespace

std::string format_pair(const NfPair& pair) {
  std::ostringstream out;
  out << "# cyclofact nf-pair v" << kSchemaVersion << '\n';
  out << "p " << pair.p << '\n';
  out << "alpha " << (pair.alpha ? std::to_string(*pair.alpha) : "none") << '\n';
  out << "label " << to_string(pair.label) << '\n';
  out << "lambda " << pair.lambda << '\n';
  out << "S " << join(pair.S) << '\n';
  out << "T " << join(pair.T) << '\n';
  return out.str();
}

NfPair parse_pair(std::string_view text) {
  NfPair pair;
  bool have_p = false, have_lambda = false, have_s = false, have_t = false;
  std::istringstream lines{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream tokens(line);
    std::string key;
    if (!(tokens >> key)) continue;
    std::vector<std::string> values;
    for (std::string v; tokens >> v;) values.push_back(v);
    const auto single = [&]() -> const std::string& {
      if (values.size() != 1) throw Error(Errc::InvalidInput, "pair file line " + std::to_string(line_no) + ": '" + key + "' takes one value");
      return values.front();
    };
    if (key == "p") {
      pair.p = parse_u64(single());
      have_p = true;
    } else if (key == "alpha") {
      const std::string& v = single();
      pair.alpha = v == "none" ? std::nullopt : std::optional<std::uint64_t>(parse_u64(v));
    } else if (key == "label") {
      pair.label = parse_pair_label(single());
    } else if (key == "lambda") {
      pair.lambda = parse_u64(single());
      have_lambda = true;
    } else if (key == "S" || key == "T") {
      auto& target = key == "S" ? pair.S : pair.T;
      (key == "S" ? have_s : have_t) = true;
      for (const auto& v : values) target.push_back(parse_u64(v));
    } else {
      throw Error(Errc::InvalidInput, "pair file line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  if (!have_p || !have_lambda || !have_s || !have_t) throw Error(Errc::InvalidInput, "pair file needs p, lambda, S and T");
  normalize(pair);
  return pair;
}

NfPair read_pair_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidInput, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_pair(buffer.str());
}

void write_pair_file(const std::filesystem::path& path, const NfPair& pair) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::InvalidInput, "cannot write " + path.string());
  out << format_pair(pair);
}

std::string format_table(const CycNumberTable& table) {
  std::ostringstream out;
  out << "table p=" << table.p << " alpha=" << (table.alpha ? std::to_string(*table.alpha) : "none")
      << " order=" << table.order << " provenance=" << to_string(table.provenance) << '\n';
  for (Eigen::Index i = 0; i < table.entries.rows(); ++i) {
    for (Eigen::Index j = 0; j < table.entries.cols(); ++j) out << (j == 0 ? "  " : " ") << table.entries(i, j);
    out << '\n';
  }
  return out.str();
}

std::string format_report(const VerifyReport& report, const NfPair& pair) {
  std::ostringstream out;
  out << "verify p=" << pair.p << " alpha=" << (pair.alpha ? std::to_string(*pair.alpha) : "none")
      << " label=" << to_string(pair.label) << " method=" << to_string(report.method) << '\n';
  out << "  ok=" << (report.ok ? "true" : "false") << " lambda_declared=" << pair.lambda
      << " lambda_observed=" << (report.lambda_observed ? std::to_string(*report.lambda_observed) : "none")
      << " zero_coefficient=" << report.zero_coefficient << '\n';
  if (report.gate_failure) out << "  gate: " << *report.gate_failure << '\n';
  out << "  histogram";
  for (const auto& [value, count] : report.deviation_histogram) out << ' ' << value << ':' << count;
  out << '\n';
  return out.str();
}

std::string format_scan_record(const SeqScanRecord& rec) {
  std::ostringstream out;
  out << "n=" << rec.n << " u=" << rec.u << " p=" << to_string(rec.p) << " prime=" << (rec.prime ? "yes" : "no")
      << " certainty=" << to_string(rec.certainty)
      << " two_class=" << (rec.two_class ? std::to_string(*rec.two_class) : "none");
  return out.str();
}

Json to_json(const NfPair& pair) {
  Json j = header("nf_pair");
  j["p"] = pair.p;
  j["alpha"] = pair.alpha ? Json(*pair.alpha) : Json(nullptr);
  j["label"] = to_string(pair.label);
  j["lambda"] = pair.lambda;
  j["S"] = pair.S;
  j["T"] = pair.T;
  return j;
}

Json to_json(const CycNumberTable& table) {
  Json j = header("cyclotomic_table");
  j["p"] = table.p;
  j["alpha"] = table.alpha ? Json(*table.alpha) : Json(nullptr);
  j["order"] = table.order;
  j["provenance"] = to_string(table.provenance);
  Json entries = Json::array();
  for (Eigen::Index i = 0; i < table.entries.rows(); ++i) {
    for (Eigen::Index k = 0; k < table.entries.cols(); ++k) entries.push_back(table.entries(i, k));
  }
  j["entries"] = std::move(entries);
  return j;
}

Json to_json(const VerifyReport& report, const NfPair& pair) {
  Json j = header("verify_report");
  j["p"] = pair.p;
  j["alpha"] = pair.alpha ? Json(*pair.alpha) : Json(nullptr);
  j["label"] = to_string(pair.label);
  j["method"] = to_string(report.method);
  j["ok"] = report.ok;
  j["lambda_declared"] = pair.lambda;
  j["lambda_observed"] = report.lambda_observed ? Json(*report.lambda_observed) : Json(nullptr);
  j["zero_coefficient"] = report.zero_coefficient;
  Json hist = Json::object();
  for (const auto& [value, count] : report.deviation_histogram) hist[std::to_string(value)] = count;
  j["deviation_histogram"] = std::move(hist);
  j["gate_failure"] = report.gate_failure ? Json(*report.gate_failure) : Json(nullptr);
  return j;
}

Json to_json(const SeqScanRecord& rec) {
  Json j = header("scan_record");
  j["n"] = rec.n;
  j["u"] = rec.u;
  j["p"] = to_string(rec.p);  // may exceed 64 bits
  j["prime"] = rec.prime;
  j["certainty"] = to_string(rec.certainty);
  j["two_class"] = rec.two_class ? Json(*rec.two_class) : Json(nullptr);
  return j;
}

}  // namespace cyclofact::io
