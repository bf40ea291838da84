#include "keller/linsolve.hpp"

#include "keller/errors.hpp"

namespace keller {

RowEliminator::RowEliminator(std::size_t cols, std::size_t rhs) : cols_(cols), rhs_(rhs) {}

bool RowEliminator::add_row(std::vector<BigRat> row) {
  if (row.size() != cols_ + rhs_) throw StructuralError("RowEliminator: row has wrong length");
  for (std::size_t k = 0; k < pivots_.size(); ++k) {
    const std::size_t pc = pivots_[k];
    if (row[pc] == 0) continue;
    const BigRat f = row[pc];
    const auto& basis = rows_[k];
    for (std::size_t j = pc; j < row.size(); ++j) {
      if (basis[j] != 0) row[j] -= f * basis[j];
    }
  }
  std::size_t pc = 0;
  while (pc < cols_ && row[pc] == 0) ++pc;
  if (pc == cols_) {
    for (std::size_t j = cols_; j < row.size(); ++j) {
      if (row[j] != 0) {
        consistent_ = false;
        return false;
      }
    }
    return true;
  }
  const BigRat inv = BigRat(1) / row[pc];
  for (std::size_t j = pc; j < row.size(); ++j) row[j] *= inv;
  rows_.push_back(std::move(row));
  pivots_.push_back(pc);
  return true;
}

std::optional<std::vector<std::vector<BigRat>>> RowEliminator::solve() const {
  if (!consistent_) return std::nullopt;
  std::vector<std::vector<BigRat>> out(rhs_, std::vector<BigRat>(cols_));
  // Pivot rows are reduced against earlier pivots only, so back-substitute
  // in reverse insertion order.
  for (std::size_t r = 0; r < rhs_; ++r) {
    auto& x = out[r];
    for (std::size_t k = pivots_.size(); k-- > 0;) {
      const auto& row = rows_[k];
      BigRat v = row[cols_ + r];
      for (std::size_t j = pivots_[k] + 1; j < cols_; ++j) {
        if (row[j] != 0 && x[j] != 0) v -= row[j] * x[j];
      }
      x[pivots_[k]] = v;
    }
  }
  return out;
}

}  // namespace keller
