#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <utility>

#include <Eigen/Core>

namespace cyclofact {

/// Closed-form data for order-8 cyclotomic numbers over F_p, p = 1 (mod 16).
///
/// Fifteen "critical" numbers are stored as 64*(i,j) = c0 + c1*p + c2*x + c3*y + c4*a + c5*b,
/// with one coefficient matrix per quartic class of 2 (2 in C_0^4 or 2 in C_2^4).
/// A relation grid maps every (i,j), 0 <= i,j <= 7, onto one of the critical entries.
///
/// The data is kept as text so it can be audited line by line and replaced
/// from a file (the self-check uses this for negative controls).
class OrderEightTables {
 public:
  static constexpr int kCritical = 15;
  using FormMatrix = Eigen::Matrix<std::int64_t, kCritical, 6, Eigen::RowMajor>;
  using RelationGrid = Eigen::Matrix<int, 8, 8, Eigen::RowMajor>;
  using Label = std::pair<int, int>;

  static const OrderEightTables& builtin();
  static std::string_view builtin_text();
  // Throws Error{InvalidInput} on malformed text.
  static OrderEightTables parse(std::string_view text);

  // two_class must be 0 or 2
  const FormMatrix& forms(int two_class) const;
  const std::array<Label, kCritical>& critical() const { return critical_; }
  // relation()(i, j) is the row of forms() holding (i,j)
  const RelationGrid& relation() const { return relation_; }

 private:
  FormMatrix class0_ = FormMatrix::Zero();
  FormMatrix class2_ = FormMatrix::Zero();
  std::array<Label, kCritical> critical_{};
  RelationGrid relation_ = RelationGrid::Constant(-1);
};

}  // namespace cyclofact
