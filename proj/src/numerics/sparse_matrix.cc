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

#include "evinet/numerics/sparse_matrix.h"

#include <algorithm>
#include <cmath>

namespace evinet::numerics {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols,
                           std::vector<std::size_t> offsets,
                           std::vector<std::size_t> indices,
                           std::vector<Real> values)
    : rows_(rows),
      cols_(cols),
      offsets_(std::move(offsets)),
      indices_(std::move(indices)),
      values_(std::move(values)) {
  Validate();
}

void SparseMatrix::Validate() const {
  RequireShape(offsets_.size() == rows_ + 1, "SparseMatrix: offsets size");
  RequireShape(offsets_.front() == 0 && offsets_.back() == indices_.size(),
               "SparseMatrix: offsets bounds");
  RequireShape(indices_.size() == values_.size(),
               "SparseMatrix: indices/values size");
  for (std::size_t r = 0; r < rows_; ++r) {
    RequireShape(offsets_[r] <= offsets_[r + 1], "SparseMatrix: offsets order");
    for (std::size_t p = offsets_[r]; p < offsets_[r + 1]; ++p) {
      RequireShape(indices_[p] < cols_, "SparseMatrix: column out of range");
      if (p > offsets_[r])
        RequireShape(indices_[p - 1] < indices_[p],
                     "SparseMatrix: columns not strictly sorted");
    }
  }
}

SparseMatrix SparseMatrix::FromTriplets(std::size_t rows, std::size_t cols,
                                        std::vector<Triplet> triplets) {
  for (const auto& t : triplets)
    RequireShape(t.row < rows && t.col < cols,
                 "SparseMatrix::FromTriplets: index out of range");
  std::stable_sort(triplets.begin(), triplets.end(),
                   [](const Triplet& a, const Triplet& b) {
                     return a.row != b.row ? a.row < b.row : a.col < b.col;
                   });
  std::vector<std::size_t> offsets(rows + 1, 0);
  std::vector<std::size_t> indices;
  std::vector<Real> values;
  indices.reserve(triplets.size());
  values.reserve(triplets.size());
  for (std::size_t i = 0; i < triplets.size(); ++i) {
    const auto& t = triplets[i];
    if (!indices.empty() && i > 0 && triplets[i - 1].row == t.row &&
        triplets[i - 1].col == t.col) {
      values.back() += t.value;
      continue;
    }
    indices.push_back(t.col);
    values.push_back(t.value);
    ++offsets[t.row + 1];
  }
  for (std::size_t r = 0; r < rows; ++r) offsets[r + 1] += offsets[r];
  return SparseMatrix(rows, cols, std::move(offsets), std::move(indices),
                      std::move(values));
}

SparseMatrix SparseMatrix::Identity(std::size_t n) {
  std::vector<std::size_t> offsets(n + 1), indices(n);
  for (std::size_t i = 0; i < n; ++i) {
    offsets[i + 1] = i + 1;
    indices[i] = i;
  }
  return SparseMatrix(n, n, std::move(offsets), std::move(indices),
                      std::vector<Real>(n, 1.0));
}

Real SparseMatrix::At(std::size_t r, std::size_t c) const {
  auto first = indices_.begin() + static_cast<std::ptrdiff_t>(offsets_[r]);
  auto last = indices_.begin() + static_cast<std::ptrdiff_t>(offsets_[r + 1]);
  auto it = std::lower_bound(first, last, c);
  if (it == last || *it != c) return 0.0;
  return values_[static_cast<std::size_t>(it - indices_.begin())];
}

DenseMatrix SparseMatrix::ToDense() const {
  DenseMatrix d(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t p = offsets_[r]; p < offsets_[r + 1]; ++p)
      d(r, indices_[p]) = values_[p];
  return d;
}

SparseMatrix SparseMatrix::Transposed() const {
  std::vector<Triplet> t;
  t.reserve(nnz());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t p = offsets_[r]; p < offsets_[r + 1]; ++p)
      t.push_back({indices_[p], r, values_[p]});
  return FromTriplets(cols_, rows_, std::move(t));
}

bool SparseMatrix::IsSymmetric(Real tol) const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t p = offsets_[r]; p < offsets_[r + 1]; ++p)
      if (std::abs(At(indices_[p], r) - values_[p]) > tol) return false;
  return true;
}

DenseMatrix SpMM(const SparseMatrix& adj, const DenseMatrix& x) {
  RequireShape(adj.cols() == x.rows(), "SpMM: adjacency " +
                                           std::to_string(adj.rows()) + "x" +
                                           std::to_string(adj.cols()) +
                                           " vs features " + x.ShapeString());
  const std::size_t m = x.cols();
  DenseMatrix out(adj.rows(), m);
  const auto& off = adj.offsets();
  const auto& idx = adj.indices();
  const auto& val = adj.values();
  for (std::size_t r = 0; r < adj.rows(); ++r) {
    Real* o = out.row(r).data();
    for (std::size_t p = off[r]; p < off[r + 1]; ++p) {
      const Real v = val[p];
      const Real* xr = x.row(idx[p]).data();
      for (std::size_t j = 0; j < m; ++j) o[j] += v * xr[j];
    }
  }
  return out;
}

DenseMatrix SpMMTransposed(const SparseMatrix& adj, const DenseMatrix& x) {
  RequireShape(adj.rows() == x.rows(), "SpMMTransposed: shape mismatch");
  const std::size_t m = x.cols();
  DenseMatrix out(adj.cols(), m);
  const auto& off = adj.offsets();
  const auto& idx = adj.indices();
  const auto& val = adj.values();
  for (std::size_t r = 0; r < adj.rows(); ++r) {
    const Real* xr = x.row(r).data();
    for (std::size_t p = off[r]; p < off[r + 1]; ++p) {
      const Real v = val[p];
      Real* o = out.row(idx[p]).data();
      for (std::size_t j = 0; j < m; ++j) o[j] += v * xr[j];
    }
  }
  return out;
}

}  // namespace evinet::numerics
