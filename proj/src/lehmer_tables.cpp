#include "cyclofact/lehmer_tables.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <vector>
#include <sstream>
#include <string>

#include "cyclofact/types.hpp"

namespace cyclofact {

namespace {

constexpr std::string_view kBuiltin = R"(# Order-8 cyclotomic numbers (i,j) for p = 1 (mod 16), after Lehmer.
# p = x^2 + 4y^2 with x = 1 (mod 4);  p = a^2 + 2b^2 with a = 1 (mod 4).
#
#          64(i,j) | if 2 in C_0^4            | if 2 in C_2^4
critical (0,0)     | p-23-18 x-24 a           | p-23+6 x
critical (0,1)     | p-7+2 x+4 a+16 y+16 b    | p-7+2 x+4 a
critical (0,2)     | p-7+6 x+16 y             | p-7-2 x-8 a-16 y
critical (0,3)     | p-7+2 x+4 a-16 y+16 b    | p-7+2 x+4 a
critical (0,4)     | p-7-2 x+8 a              | p-7-10 x
critical (0,5)     | p-7+2 x+4 a+16 y-16 b    | p-7+2 x+4 a
critical (0,6)     | p-7+6 x-16 y             | p-7-2 x-8 a+16 y
critical (0,7)     | p-7+2 x+4 a-16 y-16 b    | p-7+2 x+4 a
critical (1,2)     | p+1+2 x-4 a              | p+1-6 x+4 a
critical (1,3)     | p+1-6 x+4 a              | p+1+2 x-4 a-16 b
critical (1,4)     | p+1+2 x-4 a              | p+1+2 x-4 a+16 y
critical (1,5)     | p+1+2 x-4 a              | p+1+2 x-4 a-16 y
critical (1,6)     | p+1-6 x+4 a              | p+1+2 x-4 a+16 b
critical (2,4)     | p+1-2 x                  | p+1+6 x+8 a
critical (2,5)     | p+1+2 x-4 a              | p+1-6 x+4 a
#
# Row i lists the critical entry equal to (i,j) for j = 0..7.
relation 0 | (0,0) (0,1) (0,2) (0,3) (0,4) (0,5) (0,6) (0,7)
relation 1 | (0,1) (0,7) (1,2) (1,3) (1,4) (1,5) (1,6) (1,2)
relation 2 | (0,2) (1,2) (0,6) (1,6) (2,4) (2,5) (2,4) (1,3)
relation 3 | (0,3) (1,3) (1,6) (0,5) (1,5) (2,5) (2,5) (1,4)
relation 4 | (0,4) (1,4) (2,4) (1,5) (0,4) (1,4) (2,4) (1,5)
relation 5 | (0,5) (1,5) (2,5) (2,5) (1,4) (0,3) (1,3) (1,6)
relation 6 | (0,6) (1,6) (2,4) (2,5) (2,4) (1,3) (0,2) (1,2)
relation 7 | (0,7) (1,2) (1,3) (1,4) (1,5) (1,6) (1,2) (0,1)
)";

[[noreturn]] void malformed(const std::string& why, int line) {
  throw Error(Errc::InvalidInput, "order-8 table, line " + std::to_string(line) + ": " + why);
}

std::string strip(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

// Parses e.g. "p-7+2x+4a-16y" into coefficients of (1, p, x, y, a, b).
Eigen::Matrix<std::int64_t, 1, 6> parse_form(std::string_view raw, int line) {
  const std::string s = strip(raw);
  if (s.empty()) malformed("empty linear form", line);
  Eigen::Matrix<std::int64_t, 1, 6> row = Eigen::Matrix<std::int64_t, 1, 6>::Zero();
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::int64_t sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    }
    std::int64_t coeff = 0;
    bool have_digits = false;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      coeff = coeff * 10 + (s[pos] - '0');
      have_digits = true;
      ++pos;
    }
    int slot = 0;
    if (pos < s.size()) {
      switch (s[pos]) {
        case 'p': slot = 1; break;
        case 'x': slot = 2; break;
        case 'y': slot = 3; break;
        case 'a': slot = 4; break;
        case 'b': slot = 5; break;
        default: slot = 0; break;
      }
      if (slot != 0) ++pos;
    }
    if (slot == 0 && !have_digits) malformed("bad term in '" + std::string(raw) + "'", line);
    row(slot) += sign * (have_digits ? coeff : 1);
  }
  return row;
}

OrderEightTables::Label parse_label(std::string_view raw, int line) {
  const std::string s = strip(raw);
  int i = -1, j = -1;
  char tail = 0;
  if (std::sscanf(s.c_str(), "(%d,%d)%c", &i, &j, &tail) != 2 || i < 0 || i > 7 || j < 0 || j > 7) {
    malformed("bad (i,j) label '" + std::string(raw) + "'", line);
  }
  return {i, j};
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t k = 0; k <= s.size(); ++k) {
    if (k == s.size() || s[k] == sep) {
      parts.push_back(s.substr(start, k - start));
      start = k + 1;
    }
  }
  return parts;
}

}  // namespace

std::string_view OrderEightTables::builtin_text() { return kBuiltin; }

const OrderEightTables& OrderEightTables::builtin() {
  static const OrderEightTables tables = parse(kBuiltin);
  return tables;
}

const OrderEightTables::FormMatrix& OrderEightTables::forms(int two_class) const {
  if (two_class == 0) return class0_;
  if (two_class == 2) return class2_;
  throw Error(Errc::InvalidInput, "quartic class of 2 must be 0 or 2, got " + std::to_string(two_class));
}

OrderEightTables OrderEightTables::parse(std::string_view text) {
  OrderEightTables t;
  int n_critical = 0;
  std::array<bool, 8> row_seen{};
  int line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::string compact = strip(line);
    if (compact.empty()) continue;

    const auto fields = split(line, '|');
    std::string head = strip(fields[0]);
    if (head.rfind("critical", 0) == 0) {
      if (fields.size() != 3) malformed("critical row needs two forms", line_no);
      if (n_critical == kCritical) malformed("more than fifteen critical rows", line_no);
      const Label label = parse_label(head.substr(8), line_no);
      if (std::find(t.critical_.begin(), t.critical_.begin() + n_critical, label) != t.critical_.begin() + n_critical) {
        malformed("duplicate critical entry", line_no);
      }
      t.critical_[n_critical] = label;
      t.class0_.row(n_critical) = parse_form(fields[1], line_no);
      t.class2_.row(n_critical) = parse_form(fields[2], line_no);
      ++n_critical;
    } else if (head.rfind("relation", 0) == 0) {
      if (fields.size() != 2) malformed("relation row needs one '|'", line_no);
      const std::string row_text = head.substr(8);
      if (row_text.size() != 1 || row_text[0] < '0' || row_text[0] > '7') malformed("bad relation row index", line_no);
      const int i = row_text[0] - '0';
      if (row_seen[i]) malformed("duplicate relation row", line_no);
      row_seen[i] = true;
      std::istringstream cells{std::string(fields[1])};
      std::string cell;
      int j = 0;
      while (cells >> cell) {
        if (j == 8) malformed("relation row has more than eight cells", line_no);
        const Label label = parse_label(cell, line_no);
        const auto it = std::find(t.critical_.begin(), t.critical_.begin() + n_critical, label);
        if (it == t.critical_.begin() + n_critical) malformed("relation refers to unknown critical entry", line_no);
        t.relation_(i, j++) = static_cast<int>(it - t.critical_.begin());
      }
      if (j != 8) malformed("relation row has fewer than eight cells", line_no);
    } else {
      malformed("unrecognized line", line_no);
    }
  }
  if (n_critical != kCritical) malformed("expected fifteen critical rows", line_no);
  for (int i = 0; i < 8; ++i) {
    if (!row_seen[i]) malformed("missing relation row " + std::to_string(i), line_no);
  }
  for (int k = 0; k < kCritical; ++k) {
    const auto [i, j] = t.critical_[k];
    if (t.relation_(i, j) != k) malformed("relation grid does not map critical entry onto itself", line_no);
  }
  return t;
}

}  // namespace cyclofact
