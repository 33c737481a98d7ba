#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "cyclofact/cyclotomy.hpp"
#include "cyclofact/nearfact.hpp"
#include "cyclofact/primes_seq.hpp"

namespace cyclofact::io {

using Json = nlohmann::ordered_json;

// Bumped whenever a key is added, removed or renamed in structured output.
inline constexpr int kSchemaVersion = 1;

// Pair files: one "key value..." line per field, '#' comments.
//   p 17 / alpha 3 / label 1a / lambda 1 / S 1 3 14 16 / T 4 5 12 13
std::string format_pair(const NfPair& pair);
NfPair parse_pair(std::string_view text);
NfPair read_pair_file(const std::filesystem::path& path);
void write_pair_file(const std::filesystem::path& path, const NfPair& pair);

std::string format_table(const CycNumberTable& table);
std::string format_report(const VerifyReport& report, const NfPair& pair);
std::string format_scan_record(const SeqScanRecord& rec);

Json to_json(const NfPair& pair);
Json to_json(const CycNumberTable& table);
Json to_json(const VerifyReport& report, const NfPair& pair);
Json to_json(const SeqScanRecord& rec);

}  // namespace cyclofact::io
