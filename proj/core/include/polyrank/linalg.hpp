#pragma once

// Dense linear algebra over a finite field. Pivoting is deterministic: the
// first row (in order) with a nonzero entry in the current column.

#include <optional>
#include <vector>

#include "polyrank/algebra.hpp"

namespace polyrank {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Elem& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Elem at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<Elem> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  void append_row(std::span<const Elem> values);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

struct Echelon {
  Matrix reduced;                    // reduced row echelon form
  std::vector<std::size_t> pivots;   // pivot column of row i, i < rank
  std::size_t rank() const noexcept { return pivots.size(); }
};

/// Requires a field.
Echelon row_reduce(const Ring& ring, Matrix m);
std::size_t matrix_rank(const Ring& ring, const Matrix& m);

/// Some x with A x = b, free variables set to zero; nullopt when inconsistent.
std::optional<std::vector<Elem>> solve(const Ring& ring, const Matrix& a, std::span<const Elem> b);

/// Basis of {x : A x = 0}, one vector per free column in increasing order.
std::vector<std::vector<Elem>> kernel_basis(const Ring& ring, const Matrix& a);

}  // namespace polyrank
