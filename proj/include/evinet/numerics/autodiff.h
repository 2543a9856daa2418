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

// Minimal matrix-valued reverse-mode differentiation.
//
// A Tape records each operation's output value together with a closure that
// pushes the output gradient back to its inputs. Parameters enter the tape
// as leaves; Tape::Backward accumulates into Parameter::grad. Nodes whose
// inputs carry no gradient (constants) record no closure, so frozen
// sub-graphs cost nothing on the backward pass.

#ifndef EVINET_NUMERICS_AUTODIFF_H_
#define EVINET_NUMERICS_AUTODIFF_H_

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "evinet/numerics/dense_matrix.h"
#include "evinet/numerics/random.h"
#include "evinet/numerics/sparse_matrix.h"

namespace evinet::numerics {

// A named trainable tensor and its accumulated gradient.
struct Parameter {
  std::string name;
  DenseMatrix value;
  DenseMatrix grad;

  Parameter() = default;
  Parameter(std::string n, DenseMatrix v)
      : name(std::move(n)), value(std::move(v)),
        grad(value.rows(), value.cols()) {}

  void ZeroGrad() {
    if (!grad.SameShape(value)) grad = DenseMatrix(value.rows(), value.cols());
    grad.Fill(0.0);
  }
};

class Tape;

// Handle to a node on a Tape. Cheap to copy; valid while the tape lives.
class Var {
 public:
  Var() = default;
  const DenseMatrix& value() const;
  std::size_t rows() const { return value().rows(); }
  std::size_t cols() const { return value().cols(); }
  Tape* tape() const { return tape_; }
  std::size_t id() const { return id_; }

 private:
  friend class Tape;
  Var(Tape* tape, std::size_t id) : tape_(tape), id_(id) {}
  Tape* tape_ = nullptr;
  std::size_t id_ = 0;
};

class Tape {
 public:
  // Called once with the node's own id; reads Grad(self) and accumulates
  // into its inputs through GradBuffer.
  using BackwardFn = std::function<void(Tape&, std::size_t self)>;

  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  Var Constant(DenseMatrix value);
  // The gradient of this leaf is added to `param.grad` during Backward.
  Var Leaf(Parameter& param);

  // Records an op output. `inputs` decide whether the node needs a gradient;
  // `fn` is dropped when none of them do.
  Var Record(DenseMatrix value, std::initializer_list<Var> inputs,
             BackwardFn fn);
  Var Record(DenseMatrix value, std::span<const Var> inputs, BackwardFn fn);

  // Seeds d(loss)/d(loss) = 1 and runs all closures in reverse order.
  // `loss` must be 1x1.
  void Backward(Var loss);

  const DenseMatrix& Value(std::size_t id) const { return nodes_[id].value; }
  bool RequiresGrad(std::size_t id) const { return nodes_[id].requires_grad; }
  // Gradient accumulated so far; zero-filled on first access.
  DenseMatrix& GradBuffer(std::size_t id);
  bool HasGrad(std::size_t id) const { return !nodes_[id].grad.empty(); }
  const DenseMatrix& Grad(std::size_t id) const { return nodes_[id].grad; }

  std::size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    DenseMatrix value;
    DenseMatrix grad;
    BackwardFn backward;
    Parameter* param = nullptr;
    bool requires_grad = false;
  };
  std::vector<Node> nodes_;
};

namespace ad {

Var MatMul(Var a, Var b);
// adj * x; `adj` must outlive the tape.
Var SpMM(const SparseMatrix& adj, Var x);

Var Add(Var a, Var b);
Var Sub(Var a, Var b);
Var Mul(Var a, Var b);
Var Scale(Var a, Real s);
Var AddScalar(Var a, Real s);
// a (n x c) + v (1 x c) broadcast over rows.
Var AddRowVector(Var a, Var v);
// a (n x c) .* v (1 x c) broadcast over rows.
Var MulRowVector(Var a, Var v);

Var Softplus(Var a);
Var Relu(Var a);
Var LogSigmoid(Var a);
Var Reciprocal(Var a);
Var Digamma(Var a);

// Inverted dropout. Identity when `training` is false or rate == 0.
Var Dropout(Var a, Real rate, Rng& rng, bool training);

struct BatchStats {
  DenseMatrix mean;      // 1 x c
  DenseMatrix variance;  // 1 x c, biased
};
// Training-mode batch normalization over rows; batch moments written to
// `stats` when non-null.
Var BatchNorm(Var x, Var gamma, Var beta, Real eps, BatchStats* stats);
// Inference-mode batch normalization with fixed moments.
Var BatchNormInference(Var x, Var gamma, Var beta, const DenseMatrix& mean,
                       const DenseMatrix& variance, Real eps);

Var SliceCols(Var a, std::size_t begin, std::size_t count);
Var ConcatCols(std::span<const Var> parts);
Var ConcatRows(std::span<const Var> parts);
Var GatherRows(Var a, std::span<const std::size_t> rows);
// 1 x c column means, each a correctly rounded sum divided by the row
// count, so the result is exactly invariant to row order.
Var MeanRows(Var a);
// n x 1 row sums.
Var RowSum(Var a);
// n x 1 with entry i = a(i, cols[i]).
Var PickCols(Var a, std::span<const std::size_t> cols);
Var Sum(Var a);
Var Mean(Var a);

// Mean softmax cross-entropy of logits (n x K) against labels.
Var SoftmaxCrossEntropy(Var logits, std::span<const std::size_t> labels);

}  // namespace ad
}  // namespace evinet::numerics

#endif  // EVINET_NUMERICS_AUTODIFF_H_
