#pragma once

// Exact incremental row reduction over Q. Rows are fed one at a time; the
// eliminator keeps an echelon basis and can stop as soon as the coefficient
// part reaches full column rank.

#include <optional>
#include <vector>

#include "keller/arith.hpp"

namespace keller {

class RowEliminator {
 public:
  /// cols unknowns, rhs right-hand sides solved simultaneously.
  RowEliminator(std::size_t cols, std::size_t rhs);

  /// Adds a row of cols + rhs entries. Returns false when the row reduces to
  /// 0 = nonzero in some right-hand side (the system is inconsistent).
  bool add_row(std::vector<BigRat> row);

  std::size_t rank() const { return pivots_.size(); }
  std::size_t cols() const { return cols_; }
  bool full_rank() const { return rank() == cols_; }
  bool consistent() const { return consistent_; }

  /// One solution per right-hand side, free unknowns set to zero.
  /// nullopt once an inconsistent row has been seen.
  std::optional<std::vector<std::vector<BigRat>>> solve() const;

 private:
  std::size_t cols_;
  std::size_t rhs_;
  bool consistent_ = true;
  std::vector<std::vector<BigRat>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace keller
