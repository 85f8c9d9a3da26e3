#include "cartier/matrix.hpp"

#include <utility>

#include "cartier/error.hpp"

namespace cartier {

namespace kernel {

std::size_t rank_in_place(const Field& field, std::span<Code> data, std::size_t rows, std::size_t cols) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && data[pivot * cols + col] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      for (std::size_t j = col; j < cols; ++j) std::swap(data[pivot * cols + j], data[rank * cols + j]);
    }
    const Code lead_inv = field.inv(data[rank * cols + col]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const Code x = data[r * cols + col];
      if (x == 0) continue;
      const Code factor = field.mul(x, lead_inv);
      for (std::size_t j = col; j < cols; ++j) {
        data[r * cols + j] = field.sub(data[r * cols + j], field.mul(factor, data[rank * cols + j]));
      }
    }
    ++rank;
  }
  return rank;
}

void square_mul(const Field& field, std::span<const Code> a, std::span<const Code> b, std::size_t n,
                std::span<Code> out) {
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Code acc = 0;
      for (std::size_t t = 0; t < n; ++t) acc = field.add(acc, field.mul(a[i * n + t], b[t * n + j]));
      out[i * n + j] = acc;
    }
  }
}

}  // namespace kernel

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : Matrix(std::move(field), rows, cols, std::vector<Code>(rows * cols, 0)) {}

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols, std::vector<Code> data)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(data)) {
  if (!field_) fail(ErrorKind::invalid_input, "matrix without a field");
  if (data_.size() != rows_ * cols_) fail(ErrorKind::invalid_input, "matrix data size mismatch");
}

std::size_t Matrix::rank() const {
  std::vector<Code> copy = data_;
  return kernel::rank_in_place(*field_, copy, rows_, cols_);
}

Matrix Matrix::frobenius_twist(std::uint64_t i) const {
  std::vector<Code> out(data_.size());
  for (std::size_t t = 0; t < data_.size(); ++t) out[t] = field_->frobenius(data_[t], i);
  return {field_, rows_, cols_, std::move(out)};
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_field(*a.field_, *b.field_);
  if (a.cols_ != b.rows_) fail(ErrorKind::invalid_input, "matrix shape mismatch");
  const Field& field = *a.field_;
  Matrix out(a.field_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t j = 0; j < b.cols_; ++j) {
      Code acc = 0;
      for (std::size_t t = 0; t < a.cols_; ++t) acc = field.add(acc, field.mul(a.at(i, t), b.at(t, j)));
      out.set(i, j, acc);
    }
  }
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.field_->same_as(*b.field_) && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

}  // namespace cartier
