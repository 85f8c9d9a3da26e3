#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cartier/field.hpp"

namespace cartier {

namespace kernel {

/// Rank by Gaussian elimination; destroys `data` (row-major rows x cols).
std::size_t rank_in_place(const Field& field, std::span<Code> data, std::size_t rows, std::size_t cols);

/// out = a * b for row-major n x n matrices.
void square_mul(const Field& field, std::span<const Code> a, std::span<const Code> b, std::size_t n,
                std::span<Code> out);

}  // namespace kernel

/// Dense row-major matrix over a finite field, 0-indexed.
class Matrix {
 public:
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols);
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols, std::vector<Code> data);

  const FieldPtr& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::span<const Code> data() const noexcept { return data_; }

  Code at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, Code c) { data_[i * cols_ + j] = c; }
  FieldElement element(std::size_t i, std::size_t j) const { return {field_, at(i, j)}; }

  std::size_t rank() const;
  /// Entrywise a -> a^(p^i).
  Matrix frobenius_twist(std::uint64_t i) const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  FieldPtr field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Code> data_;
};

}  // namespace cartier
