/*
 * Copyright 2026 The EviNet Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef EVINET_NUMERICS_DENSE_MATRIX_H_
#define EVINET_NUMERICS_DENSE_MATRIX_H_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace evinet::numerics {

using Real = double;

// Raised on incompatible operand shapes.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Row-major dense matrix of Real.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, Real fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<Real> data);
  DenseMatrix(std::initializer_list<std::initializer_list<Real>> rows);

  static DenseMatrix Zeros(std::size_t rows, std::size_t cols) {
    return DenseMatrix(rows, cols, 0.0);
  }
  static DenseMatrix Identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  Real& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Real operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<Real> row(std::size_t r) {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const Real> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  std::span<Real> data() { return data_; }
  std::span<const Real> data() const { return data_; }
  const std::vector<Real>& storage() const { return data_; }

  void Fill(Real v);
  bool AllFinite() const;
  bool SameShape(const DenseMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }
  std::string ShapeString() const;

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Real> data_;
};

// C = A * B.
DenseMatrix MatMul(const DenseMatrix& a, const DenseMatrix& b);
// C = A * B^T.
DenseMatrix MatMulTransB(const DenseMatrix& a, const DenseMatrix& b);
// C = A^T * B.
DenseMatrix MatMulTransA(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix Transpose(const DenseMatrix& a);

// out += scale * in, shapes must match.
void AddScaledInPlace(DenseMatrix& out, const DenseMatrix& in, Real scale = 1.0);

Real MaxAbsDiff(const DenseMatrix& a, const DenseMatrix& b);

// Throws ShapeError with `what` in the message when the condition fails.
void RequireShape(bool ok, const std::string& what);

}  // namespace evinet::numerics

#endif  // EVINET_NUMERICS_DENSE_MATRIX_H_
