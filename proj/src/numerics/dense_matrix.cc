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

#include "evinet/numerics/dense_matrix.h"

#include <algorithm>
#include <cmath>

namespace evinet::numerics {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols,
                         std::vector<Real> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  RequireShape(data_.size() == rows * cols,
               "DenseMatrix: data length does not match rows*cols");
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<Real>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    RequireShape(r.size() == cols_, "DenseMatrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

DenseMatrix DenseMatrix::Identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

void DenseMatrix::Fill(Real v) { std::fill(data_.begin(), data_.end(), v); }

bool DenseMatrix::AllFinite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](Real v) { return std::isfinite(v); });
}

std::string DenseMatrix::ShapeString() const {
  return std::to_string(rows_) + "x" + std::to_string(cols_);
}

void RequireShape(bool ok, const std::string& what) {
  if (!ok) throw ShapeError(what);
}

DenseMatrix MatMul(const DenseMatrix& a, const DenseMatrix& b) {
  RequireShape(a.cols() == b.rows(), "MatMul: " + a.ShapeString() + " * " +
                                         b.ShapeString());
  const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
  DenseMatrix c(n, m);
  const Real* bd = b.data().data();
  for (std::size_t i = 0; i < n; ++i) {
    Real* ci = c.row(i).data();
    const Real* ai = a.row(i).data();
    for (std::size_t p = 0; p < k; ++p) {
      const Real av = ai[p];
      if (av == 0.0) continue;
      const Real* bp = bd + p * m;
      for (std::size_t j = 0; j < m; ++j) ci[j] += av * bp[j];
    }
  }
  return c;
}

DenseMatrix MatMulTransB(const DenseMatrix& a, const DenseMatrix& b) {
  RequireShape(a.cols() == b.cols(), "MatMulTransB: " + a.ShapeString() +
                                         " * (" + b.ShapeString() + ")^T");
  const std::size_t n = a.rows(), k = a.cols(), m = b.rows();
  DenseMatrix c(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    const Real* ai = a.row(i).data();
    Real* ci = c.row(i).data();
    for (std::size_t j = 0; j < m; ++j) {
      const Real* bj = b.row(j).data();
      Real s = 0.0;
      for (std::size_t p = 0; p < k; ++p) s += ai[p] * bj[p];
      ci[j] = s;
    }
  }
  return c;
}

DenseMatrix MatMulTransA(const DenseMatrix& a, const DenseMatrix& b) {
  RequireShape(a.rows() == b.rows(), "MatMulTransA: (" + a.ShapeString() +
                                         ")^T * " + b.ShapeString());
  const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
  DenseMatrix c(k, m);
  Real* cd = c.data().data();
  for (std::size_t i = 0; i < n; ++i) {
    const Real* ai = a.row(i).data();
    const Real* bi = b.row(i).data();
    for (std::size_t p = 0; p < k; ++p) {
      const Real av = ai[p];
      if (av == 0.0) continue;
      Real* cp = cd + p * m;
      for (std::size_t j = 0; j < m; ++j) cp[j] += av * bi[j];
    }
  }
  return c;
}

DenseMatrix Transpose(const DenseMatrix& a) {
  DenseMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

void AddScaledInPlace(DenseMatrix& out, const DenseMatrix& in, Real scale) {
  RequireShape(out.SameShape(in), "AddScaledInPlace: " + out.ShapeString() +
                                      " vs " + in.ShapeString());
  auto o = out.data();
  auto x = in.data();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] += scale * x[i];
}

Real MaxAbsDiff(const DenseMatrix& a, const DenseMatrix& b) {
  RequireShape(a.SameShape(b), "MaxAbsDiff: shape mismatch");
  Real m = 0.0;
  auto x = a.data();
  auto y = b.data();
  for (std::size_t i = 0; i < x.size(); ++i)
    m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

}  // namespace evinet::numerics
