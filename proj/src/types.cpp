#include "cyclofact/types.hpp"

#include <algorithm>
#include <cstdlib>

namespace cyclofact {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::ResourceLimit: return "ResourceLimit";
    case Errc::Overflow: return "Overflow";
    case Errc::NotPrimitive: return "NotPrimitive";
    case Errc::OrderMismatch: return "OrderMismatch";
    case Errc::NoRepresentation: return "NoRepresentation";
    case Errc::SignMismatch: return "SignMismatch";
    case Errc::NoMatch: return "NoMatch";
    case Errc::MultipleMatch: return "MultipleMatch";
    case Errc::NotApplicable: return "NotApplicable";
    case Errc::NotSequencePrime: return "NotSequencePrime";
    case Errc::FormMismatch: return "FormMismatch";
    case Errc::MethodInapplicable: return "MethodInapplicable";
    case Errc::DiagonalUnsupported: return "DiagonalUnsupported";
    case Errc::NotDisjoint: return "NotDisjoint";
    case Errc::SizeMismatch: return "SizeMismatch";
  }
  return "Unknown";
}

std::string to_string(u128 value) {
  if (value == 0) return "0";
  std::string out;
  while (value != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::string to_string(i128 value) {
  if (value < 0) return "-" + to_string(static_cast<u128>(-(value + 1)) + 1);
  return to_string(static_cast<u128>(value));
}

u128 parse_u128(std::string_view text) {
  if (text.empty()) throw Error(Errc::InvalidInput, "empty integer");
  constexpr u128 kMax = ~u128{0};
  u128 value = 0;
  for (char c : text) {
    if (c < '0' || c > '9') throw Error(Errc::InvalidInput, "not a decimal integer: " + std::string(text));
    const unsigned digit = static_cast<unsigned>(c - '0');
    if (value > (kMax - digit) / 10) throw Error(Errc::Overflow, "integer exceeds 128 bits: " + std::string(text));
    value = value * 10 + digit;
  }
  return value;
}

namespace {

std::uint64_t env_or(const char* name, std::uint64_t fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  const u128 parsed = parse_u128(raw);
  if (parsed == 0 || parsed > ~std::uint64_t{0}) throw Error(Errc::InvalidInput, std::string(name) + " out of range");
  return static_cast<std::uint64_t>(parsed);
}

}  // namespace

Limits Limits::from_env() {
  Limits limits;
  limits.max_p = env_or("CYCLOFACT_MAX_P", limits.max_p);
  limits.max_conv = env_or("CYCLOFACT_MAX_CONV", limits.max_conv);
  // index tables hold 32-bit discrete logs
  limits.max_p = std::min<std::uint64_t>(limits.max_p, std::uint64_t{1} << 32);
  return limits;
}

}  // namespace cyclofact
