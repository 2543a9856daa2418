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

#ifndef EVINET_NUMERICS_SPARSE_MATRIX_H_
#define EVINET_NUMERICS_SPARSE_MATRIX_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "evinet/numerics/dense_matrix.h"

namespace evinet::numerics {

struct Triplet {
  std::size_t row;
  std::size_t col;
  Real value;
};

// Compressed sparse row matrix. Column indices are sorted within each row.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols,
               std::vector<std::size_t> offsets,
               std::vector<std::size_t> indices, std::vector<Real> values);

  // Duplicate (row, col) entries are summed.
  static SparseMatrix FromTriplets(std::size_t rows, std::size_t cols,
                                   std::vector<Triplet> triplets);
  static SparseMatrix Identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return values_.size(); }

  const std::vector<std::size_t>& offsets() const { return offsets_; }
  const std::vector<std::size_t>& indices() const { return indices_; }
  const std::vector<Real>& values() const { return values_; }

  // Entry lookup by binary search; zero when absent.
  Real At(std::size_t r, std::size_t c) const;
  DenseMatrix ToDense() const;
  SparseMatrix Transposed() const;
  bool IsSymmetric(Real tol = 0.0) const;

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

 private:
  void Validate() const;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<std::size_t> indices_;
  std::vector<Real> values_;
};

// adj * x. Each output row is accumulated in column-index order, so the
// result is bitwise reproducible.
DenseMatrix SpMM(const SparseMatrix& adj, const DenseMatrix& x);
// adj^T * x.
DenseMatrix SpMMTransposed(const SparseMatrix& adj, const DenseMatrix& x);

}  // namespace evinet::numerics

#endif  // EVINET_NUMERICS_SPARSE_MATRIX_H_
