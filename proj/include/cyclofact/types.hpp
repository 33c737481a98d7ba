#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cyclofact {

using u128 = unsigned __int128;
using i128 = __int128;

/// Error categories shared by every module. The CLI maps these onto exit codes.
enum class Errc {
  InvalidInput,
  ResourceLimit,
  Overflow,
  NotPrimitive,
  OrderMismatch,
  NoRepresentation,
  SignMismatch,
  NoMatch,
  MultipleMatch,
  NotApplicable,
  NotSequencePrime,
  FormMismatch,
  MethodInapplicable,
  DiagonalUnsupported,
  NotDisjoint,
  SizeMismatch,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

std::string to_string(u128 value);
std::string to_string(i128 value);

// Accepts plain decimal digits only; throws Error{InvalidInput} otherwise.
u128 parse_u128(std::string_view text);

/// Resource caps. The library defaults match the CLI defaults; the CLI
/// additionally honours CYCLOFACT_MAX_P and CYCLOFACT_MAX_CONV.
struct Limits {
  // exclusive upper bound on p for anything that materializes a per-element table
  std::uint64_t max_p = std::uint64_t{1} << 27;
  // upper bound on |S|*|T| for direct convolution
  std::uint64_t max_conv = 100'000'000;

  static Limits from_env();
};

}  // namespace cyclofact
