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

#include "evinet/numerics/autodiff.h"

#include <algorithm>
#include <cmath>
#include <memory>

#include "evinet/numerics/special_functions.h"
#include "evinet/numerics/summation.h"

namespace evinet::numerics {

const DenseMatrix& Var::value() const { return tape_->Value(id_); }

Var Tape::Constant(DenseMatrix value) {
  nodes_.push_back(Node{std::move(value), {}, nullptr, nullptr, false});
  return Var(this, nodes_.size() - 1);
}

Var Tape::Leaf(Parameter& param) {
  nodes_.push_back(Node{param.value, {}, nullptr, &param, true});
  return Var(this, nodes_.size() - 1);
}

Var Tape::Record(DenseMatrix value, std::initializer_list<Var> inputs,
                 BackwardFn fn) {
  return Record(std::move(value),
                std::span<const Var>(inputs.begin(), inputs.size()),
                std::move(fn));
}

Var Tape::Record(DenseMatrix value, std::span<const Var> inputs,
                 BackwardFn fn) {
  bool needs = false;
  for (const Var& v : inputs) {
    RequireShape(v.tape() == this, "Tape::Record: input from another tape");
    needs = needs || nodes_[v.id()].requires_grad;
  }
  nodes_.push_back(
      Node{std::move(value), {}, needs ? std::move(fn) : nullptr, nullptr,
           needs});
  return Var(this, nodes_.size() - 1);
}

DenseMatrix& Tape::GradBuffer(std::size_t id) {
  Node& n = nodes_[id];
  if (n.grad.empty() && !n.value.empty())
    n.grad = DenseMatrix(n.value.rows(), n.value.cols());
  return n.grad;
}

void Tape::Backward(Var loss) {
  RequireShape(loss.rows() == 1 && loss.cols() == 1,
               "Tape::Backward: loss must be 1x1, got " +
                   loss.value().ShapeString());
  GradBuffer(loss.id())(0, 0) += 1.0;
  for (std::size_t i = loss.id() + 1; i-- > 0;) {
    Node& n = nodes_[i];
    if (!n.requires_grad || n.grad.empty()) continue;
    if (n.backward) n.backward(*this, i);
    if (n.param != nullptr) {
      if (n.param->grad.SameShape(n.grad))
        AddScaledInPlace(n.param->grad, n.grad);
      else
        n.param->grad = n.grad;
    }
  }
}

namespace ad {
namespace {

template <typename F>
DenseMatrix Map(const DenseMatrix& a, F f) {
  DenseMatrix out(a.rows(), a.cols());
  auto x = a.data();
  auto y = out.data();
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = f(x[i]);
  return out;
}

// Elementwise unary op whose derivative depends on input x and output y.
template <typename F, typename G>
Var Unary(Var a, F f, G dfdx) {
  Tape& t = *a.tape();
  const std::size_t ai = a.id();
  return t.Record(Map(a.value(), f), {a},
                  [ai, dfdx](Tape& tape, std::size_t self) {
                    if (!tape.RequiresGrad(ai)) return;
                    auto g = tape.Grad(self).data();
                    auto x = tape.Value(ai).data();
                    auto y = tape.Value(self).data();
                    auto ga = tape.GradBuffer(ai).data();
                    for (std::size_t i = 0; i < g.size(); ++i)
                      ga[i] += g[i] * dfdx(x[i], y[i]);
                  });
}

void Accumulate(Tape& t, std::size_t id, const DenseMatrix& g) {
  if (t.RequiresGrad(id)) AddScaledInPlace(t.GradBuffer(id), g);
}

}  // namespace

Var MatMul(Var a, Var b) {
  Tape& t = *a.tape();
  const std::size_t ai = a.id(), bi = b.id();
  return t.Record(numerics::MatMul(a.value(), b.value()), {a, b},
                  [ai, bi](Tape& tape, std::size_t self) {
                    const DenseMatrix& g = tape.Grad(self);
                    if (tape.RequiresGrad(ai))
                      AddScaledInPlace(tape.GradBuffer(ai),
                                       MatMulTransB(g, tape.Value(bi)));
                    if (tape.RequiresGrad(bi))
                      AddScaledInPlace(tape.GradBuffer(bi),
                                       MatMulTransA(tape.Value(ai), g));
                  });
}

Var SpMM(const SparseMatrix& adj, Var x) {
  Tape& t = *x.tape();
  const std::size_t xi = x.id();
  const SparseMatrix* a = &adj;
  return t.Record(numerics::SpMM(adj, x.value()), {x},
                  [a, xi](Tape& tape, std::size_t self) {
                    Accumulate(tape, xi, SpMMTransposed(*a, tape.Grad(self)));
                  });
}

Var Add(Var a, Var b) {
  RequireShape(a.value().SameShape(b.value()), "ad::Add: shape mismatch");
  Tape& t = *a.tape();
  DenseMatrix v = a.value();
  AddScaledInPlace(v, b.value());
  const std::size_t ai = a.id(), bi = b.id();
  return t.Record(std::move(v), {a, b}, [ai, bi](Tape& tape, std::size_t self) {
    Accumulate(tape, ai, tape.Grad(self));
    Accumulate(tape, bi, tape.Grad(self));
  });
}

Var Sub(Var a, Var b) {
  RequireShape(a.value().SameShape(b.value()), "ad::Sub: shape mismatch");
  Tape& t = *a.tape();
  DenseMatrix v = a.value();
  AddScaledInPlace(v, b.value(), -1.0);
  const std::size_t ai = a.id(), bi = b.id();
  return t.Record(std::move(v), {a, b}, [ai, bi](Tape& tape, std::size_t self) {
    Accumulate(tape, ai, tape.Grad(self));
    if (tape.RequiresGrad(bi))
      AddScaledInPlace(tape.GradBuffer(bi), tape.Grad(self), -1.0);
  });
}

Var Mul(Var a, Var b) {
  RequireShape(a.value().SameShape(b.value()), "ad::Mul: shape mismatch");
  Tape& t = *a.tape();
  DenseMatrix v(a.rows(), a.cols());
  {
    auto x = a.value().data(), y = b.value().data();
    auto o = v.data();
    for (std::size_t i = 0; i < o.size(); ++i) o[i] = x[i] * y[i];
  }
  const std::size_t ai = a.id(), bi = b.id();
  return t.Record(std::move(v), {a, b}, [ai, bi](Tape& tape, std::size_t self) {
    auto g = tape.Grad(self).data();
    if (tape.RequiresGrad(ai)) {
      auto y = tape.Value(bi).data();
      auto ga = tape.GradBuffer(ai).data();
      for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * y[i];
    }
    if (tape.RequiresGrad(bi)) {
      auto x = tape.Value(ai).data();
      auto gb = tape.GradBuffer(bi).data();
      for (std::size_t i = 0; i < g.size(); ++i) gb[i] += g[i] * x[i];
    }
  });
}

Var Scale(Var a, Real s) {
  return Unary(
      a, [s](Real x) { return s * x; }, [s](Real, Real) { return s; });
}

Var AddScalar(Var a, Real s) {
  return Unary(
      a, [s](Real x) { return x + s; }, [](Real, Real) { return 1.0; });
}

Var AddRowVector(Var a, Var v) {
  RequireShape(v.rows() == 1 && v.cols() == a.cols(),
               "ad::AddRowVector: expected 1x" + std::to_string(a.cols()) +
                   ", got " + v.value().ShapeString());
  Tape& t = *a.tape();
  DenseMatrix out = a.value();
  const auto vr = v.value().row(0);
  for (std::size_t r = 0; r < out.rows(); ++r) {
    auto o = out.row(r);
    for (std::size_t c = 0; c < o.size(); ++c) o[c] += vr[c];
  }
  const std::size_t ai = a.id(), vi = v.id();
  return t.Record(std::move(out), {a, v}, [ai, vi](Tape& tape, std::size_t self) {
    const DenseMatrix& g = tape.Grad(self);
    Accumulate(tape, ai, g);
    if (tape.RequiresGrad(vi)) {
      auto gv = tape.GradBuffer(vi).row(0);
      for (std::size_t r = 0; r < g.rows(); ++r) {
        auto gr = g.row(r);
        for (std::size_t c = 0; c < gr.size(); ++c) gv[c] += gr[c];
      }
    }
  });
}

Var MulRowVector(Var a, Var v) {
  RequireShape(v.rows() == 1 && v.cols() == a.cols(),
               "ad::MulRowVector: expected 1x" + std::to_string(a.cols()) +
                   ", got " + v.value().ShapeString());
  Tape& t = *a.tape();
  DenseMatrix out = a.value();
  const auto vr = v.value().row(0);
  for (std::size_t r = 0; r < out.rows(); ++r) {
    auto o = out.row(r);
    for (std::size_t c = 0; c < o.size(); ++c) o[c] *= vr[c];
  }
  const std::size_t ai = a.id(), vi = v.id();
  return t.Record(std::move(out), {a, v}, [ai, vi](Tape& tape, std::size_t self) {
    const DenseMatrix& g = tape.Grad(self);
    const DenseMatrix& x = tape.Value(ai);
    const auto vr = tape.Value(vi).row(0);
    if (tape.RequiresGrad(ai)) {
      DenseMatrix& ga = tape.GradBuffer(ai);
      for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t c = 0; c < g.cols(); ++c) ga(r, c) += g(r, c) * vr[c];
    }
    if (tape.RequiresGrad(vi)) {
      auto gv = tape.GradBuffer(vi).row(0);
      for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t c = 0; c < g.cols(); ++c) gv[c] += g(r, c) * x(r, c);
    }
  });
}

Var Softplus(Var a) {
  return Unary(
      a, [](Real x) { return numerics::Softplus(x); },
      [](Real x, Real) { return Sigmoid(x); });
}

Var Relu(Var a) {
  return Unary(
      a, [](Real x) { return x > 0.0 ? x : 0.0; },
      [](Real x, Real) { return x > 0.0 ? 1.0 : 0.0; });
}

Var LogSigmoid(Var a) {
  return Unary(
      a, [](Real x) { return numerics::LogSigmoid(x); },
      [](Real x, Real) { return Sigmoid(-x); });
}

Var Reciprocal(Var a) {
  return Unary(
      a, [](Real x) { return 1.0 / x; }, [](Real, Real y) { return -y * y; });
}

Var Digamma(Var a) {
  return Unary(
      a, [](Real x) { return numerics::Digamma(x); },
      [](Real x, Real) { return Trigamma(x); });
}

Var Dropout(Var a, Real rate, Rng& rng, bool training) {
  if (!training || rate <= 0.0) return a;
  RequireShape(rate < 1.0, "ad::Dropout: rate must be < 1");
  Tape& t = *a.tape();
  DenseMatrix mask(a.rows(), a.cols());
  const Real keep = 1.0 / (1.0 - rate);
  for (auto& m : mask.data()) m = rng.Uniform() < rate ? 0.0 : keep;
  return ad::Mul(a, t.Constant(std::move(mask)));
}

Var BatchNorm(Var x, Var gamma, Var beta, Real eps, BatchStats* stats) {
  const std::size_t n = x.rows(), c = x.cols();
  RequireShape(n > 0, "ad::BatchNorm: empty batch");
  RequireShape(gamma.rows() == 1 && gamma.cols() == c && beta.rows() == 1 &&
                   beta.cols() == c,
               "ad::BatchNorm: affine parameter shape");
  Tape& t = *x.tape();
  const DenseMatrix& xv = x.value();
  DenseMatrix mean(1, c), var(1, c);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t j = 0; j < c; ++j) mean(0, j) += xv(r, j);
  for (std::size_t j = 0; j < c; ++j) mean(0, j) /= static_cast<Real>(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t j = 0; j < c; ++j) {
      const Real d = xv(r, j) - mean(0, j);
      var(0, j) += d * d;
    }
  for (std::size_t j = 0; j < c; ++j) var(0, j) /= static_cast<Real>(n);

  auto xhat = std::make_shared<DenseMatrix>(n, c);
  auto inv_std = std::make_shared<DenseMatrix>(1, c);
  for (std::size_t j = 0; j < c; ++j)
    (*inv_std)(0, j) = 1.0 / std::sqrt(var(0, j) + eps);
  DenseMatrix out(n, c);
  const auto g = gamma.value().row(0);
  const auto b = beta.value().row(0);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t j = 0; j < c; ++j) {
      const Real h = (xv(r, j) - mean(0, j)) * (*inv_std)(0, j);
      (*xhat)(r, j) = h;
      out(r, j) = g[j] * h + b[j];
    }
  if (stats != nullptr) *stats = BatchStats{mean, var};

  const std::size_t xi = x.id(), gi = gamma.id(), bi = beta.id();
  return t.Record(
      std::move(out), {x, gamma, beta},
      [xi, gi, bi, xhat, inv_std](Tape& tape, std::size_t self) {
        const DenseMatrix& dy = tape.Grad(self);
        const std::size_t n = dy.rows(), c = dy.cols();
        std::vector<Real> sum_dy(c, 0.0), sum_dy_xhat(c, 0.0);
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t j = 0; j < c; ++j) {
            sum_dy[j] += dy(r, j);
            sum_dy_xhat[j] += dy(r, j) * (*xhat)(r, j);
          }
        if (tape.RequiresGrad(gi)) {
          auto gg = tape.GradBuffer(gi).row(0);
          for (std::size_t j = 0; j < c; ++j) gg[j] += sum_dy_xhat[j];
        }
        if (tape.RequiresGrad(bi)) {
          auto gb = tape.GradBuffer(bi).row(0);
          for (std::size_t j = 0; j < c; ++j) gb[j] += sum_dy[j];
        }
        if (tape.RequiresGrad(xi)) {
          const auto gamma_v = tape.Value(gi).row(0);
          DenseMatrix& gx = tape.GradBuffer(xi);
          const Real inv_n = 1.0 / static_cast<Real>(n);
          for (std::size_t r = 0; r < n; ++r)
            for (std::size_t j = 0; j < c; ++j)
              gx(r, j) += gamma_v[j] * (*inv_std)(0, j) * inv_n *
                          (static_cast<Real>(n) * dy(r, j) - sum_dy[j] -
                           (*xhat)(r, j) * sum_dy_xhat[j]);
        }
      });
}

Var BatchNormInference(Var x, Var gamma, Var beta, const DenseMatrix& mean,
                       const DenseMatrix& variance, Real eps) {
  const std::size_t c = x.cols();
  RequireShape(mean.rows() == 1 && mean.cols() == c && variance.SameShape(mean),
               "ad::BatchNormInference: moment shape");
  Tape& tape = *x.tape();
  DenseMatrix shift(1, c), scale(1, c);
  for (std::size_t j = 0; j < c; ++j) {
    scale(0, j) = 1.0 / std::sqrt(variance(0, j) + eps);
    shift(0, j) = -mean(0, j) * scale(0, j);
  }
  Var normalized = AddRowVector(MulRowVector(x, tape.Constant(std::move(scale))),
                                tape.Constant(std::move(shift)));
  return AddRowVector(MulRowVector(normalized, gamma), beta);
}

Var SliceCols(Var a, std::size_t begin, std::size_t count) {
  RequireShape(begin + count <= a.cols(), "ad::SliceCols: range out of bounds");
  Tape& t = *a.tape();
  const DenseMatrix& av = a.value();
  DenseMatrix out(av.rows(), count);
  for (std::size_t r = 0; r < av.rows(); ++r)
    std::copy_n(av.row(r).begin() + static_cast<std::ptrdiff_t>(begin), count,
                out.row(r).begin());
  const std::size_t ai = a.id();
  return t.Record(std::move(out), {a},
                  [ai, begin, count](Tape& tape, std::size_t self) {
                    if (!tape.RequiresGrad(ai)) return;
                    const DenseMatrix& g = tape.Grad(self);
                    DenseMatrix& ga = tape.GradBuffer(ai);
                    for (std::size_t r = 0; r < g.rows(); ++r)
                      for (std::size_t c = 0; c < count; ++c)
                        ga(r, begin + c) += g(r, c);
                  });
}

Var ConcatCols(std::span<const Var> parts) {
  RequireShape(!parts.empty(), "ad::ConcatCols: no inputs");
  Tape& t = *parts.front().tape();
  const std::size_t n = parts.front().rows();
  std::size_t total = 0;
  std::vector<std::size_t> ids, widths;
  for (const Var& p : parts) {
    RequireShape(p.rows() == n, "ad::ConcatCols: row count mismatch");
    total += p.cols();
    ids.push_back(p.id());
    widths.push_back(p.cols());
  }
  DenseMatrix out(n, total);
  std::size_t offset = 0;
  for (const Var& p : parts) {
    const DenseMatrix& pv = p.value();
    for (std::size_t r = 0; r < n; ++r)
      std::copy(pv.row(r).begin(), pv.row(r).end(),
                out.row(r).begin() + static_cast<std::ptrdiff_t>(offset));
    offset += p.cols();
  }
  return t.Record(std::move(out), parts,
                  [ids, widths](Tape& tape, std::size_t self) {
                    const DenseMatrix& g = tape.Grad(self);
                    std::size_t off = 0;
                    for (std::size_t k = 0; k < ids.size(); ++k) {
                      if (tape.RequiresGrad(ids[k])) {
                        DenseMatrix& gp = tape.GradBuffer(ids[k]);
                        for (std::size_t r = 0; r < g.rows(); ++r)
                          for (std::size_t c = 0; c < widths[k]; ++c)
                            gp(r, c) += g(r, off + c);
                      }
                      off += widths[k];
                    }
                  });
}

Var ConcatRows(std::span<const Var> parts) {
  RequireShape(!parts.empty(), "ad::ConcatRows: no inputs");
  Tape& t = *parts.front().tape();
  const std::size_t c = parts.front().cols();
  std::vector<Real> data;
  std::vector<std::size_t> ids, heights;
  for (const Var& p : parts) {
    RequireShape(p.cols() == c, "ad::ConcatRows: column count mismatch");
    data.insert(data.end(), p.value().data().begin(), p.value().data().end());
    ids.push_back(p.id());
    heights.push_back(p.rows());
  }
  const std::size_t rows = data.size() / std::max<std::size_t>(c, 1);
  return t.Record(DenseMatrix(rows, c, std::move(data)), parts,
                  [ids, heights](Tape& tape, std::size_t self) {
                    const DenseMatrix& g = tape.Grad(self);
                    std::size_t off = 0;
                    for (std::size_t k = 0; k < ids.size(); ++k) {
                      if (tape.RequiresGrad(ids[k])) {
                        DenseMatrix& gp = tape.GradBuffer(ids[k]);
                        for (std::size_t r = 0; r < heights[k]; ++r)
                          for (std::size_t j = 0; j < g.cols(); ++j)
                            gp(r, j) += g(off + r, j);
                      }
                      off += heights[k];
                    }
                  });
}

Var GatherRows(Var a, std::span<const std::size_t> rows) {
  Tape& t = *a.tape();
  const DenseMatrix& av = a.value();
  DenseMatrix out(rows.size(), av.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    RequireShape(rows[i] < av.rows(), "ad::GatherRows: row out of range");
    std::copy(av.row(rows[i]).begin(), av.row(rows[i]).end(),
              out.row(i).begin());
  }
  const std::size_t ai = a.id();
  std::vector<std::size_t> idx(rows.begin(), rows.end());
  return t.Record(std::move(out), {a},
                  [ai, idx = std::move(idx)](Tape& tape, std::size_t self) {
                    if (!tape.RequiresGrad(ai)) return;
                    const DenseMatrix& g = tape.Grad(self);
                    DenseMatrix& ga = tape.GradBuffer(ai);
                    for (std::size_t i = 0; i < idx.size(); ++i) {
                      auto src = g.row(i);
                      auto dst = ga.row(idx[i]);
                      for (std::size_t c = 0; c < src.size(); ++c)
                        dst[c] += src[c];
                    }
                  });
}

Var MeanRows(Var a) {
  RequireShape(a.rows() > 0, "ad::MeanRows: empty input");
  Tape& t = *a.tape();
  const DenseMatrix& av = a.value();
  DenseMatrix out(1, av.cols());
  std::vector<Real> column(av.rows());
  for (std::size_t c = 0; c < av.cols(); ++c) {
    for (std::size_t r = 0; r < av.rows(); ++r) column[r] = av(r, c);
    out(0, c) = ExactSum(column) / static_cast<Real>(av.rows());
  }
  const Real inv = 1.0 / static_cast<Real>(av.rows());
  const std::size_t ai = a.id();
  return t.Record(std::move(out), {a}, [ai, inv](Tape& tape, std::size_t self) {
    if (!tape.RequiresGrad(ai)) return;
    const auto g = tape.Grad(self).row(0);
    DenseMatrix& ga = tape.GradBuffer(ai);
    for (std::size_t r = 0; r < ga.rows(); ++r)
      for (std::size_t c = 0; c < ga.cols(); ++c) ga(r, c) += g[c] * inv;
  });
}

Var RowSum(Var a) {
  Tape& t = *a.tape();
  const DenseMatrix& av = a.value();
  DenseMatrix out(av.rows(), 1);
  for (std::size_t r = 0; r < av.rows(); ++r) {
    Real s = 0.0;
    for (Real v : av.row(r)) s += v;
    out(r, 0) = s;
  }
  const std::size_t ai = a.id();
  return t.Record(std::move(out), {a}, [ai](Tape& tape, std::size_t self) {
    if (!tape.RequiresGrad(ai)) return;
    const DenseMatrix& g = tape.Grad(self);
    DenseMatrix& ga = tape.GradBuffer(ai);
    for (std::size_t r = 0; r < ga.rows(); ++r)
      for (std::size_t c = 0; c < ga.cols(); ++c) ga(r, c) += g(r, 0);
  });
}

Var PickCols(Var a, std::span<const std::size_t> cols) {
  RequireShape(cols.size() == a.rows(), "ad::PickCols: one column per row");
  Tape& t = *a.tape();
  DenseMatrix out(a.rows(), 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    RequireShape(cols[r] < a.cols(), "ad::PickCols: column out of range");
    out(r, 0) = a.value()(r, cols[r]);
  }
  const std::size_t ai = a.id();
  std::vector<std::size_t> idx(cols.begin(), cols.end());
  return t.Record(std::move(out), {a},
                  [ai, idx = std::move(idx)](Tape& tape, std::size_t self) {
                    if (!tape.RequiresGrad(ai)) return;
                    const DenseMatrix& g = tape.Grad(self);
                    DenseMatrix& ga = tape.GradBuffer(ai);
                    for (std::size_t r = 0; r < idx.size(); ++r)
                      ga(r, idx[r]) += g(r, 0);
                  });
}

Var Sum(Var a) {
  Tape& t = *a.tape();
  Real s = 0.0;
  for (Real v : a.value().data()) s += v;
  const std::size_t ai = a.id();
  return t.Record(DenseMatrix(1, 1, s), {a}, [ai](Tape& tape, std::size_t self) {
    if (!tape.RequiresGrad(ai)) return;
    const Real g = tape.Grad(self)(0, 0);
    for (auto& v : tape.GradBuffer(ai).data()) v += g;
  });
}

Var Mean(Var a) {
  RequireShape(a.value().size() > 0, "ad::Mean: empty input");
  return Scale(Sum(a), 1.0 / static_cast<Real>(a.value().size()));
}

Var SoftmaxCrossEntropy(Var logits, std::span<const std::size_t> labels) {
  const std::size_t n = logits.rows(), k = logits.cols();
  RequireShape(labels.size() == n && n > 0,
               "ad::SoftmaxCrossEntropy: one label per row");
  Tape& t = *logits.tape();
  const DenseMatrix& z = logits.value();
  auto probs = std::make_shared<DenseMatrix>(n, k);
  Real loss = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    RequireShape(labels[r] < k, "ad::SoftmaxCrossEntropy: label out of range");
    const auto zr = z.row(r);
    const Real m = *std::max_element(zr.begin(), zr.end());
    Real s = 0.0;
    for (std::size_t c = 0; c < k; ++c) s += std::exp(zr[c] - m);
    const Real lse = m + std::log(s);
    for (std::size_t c = 0; c < k; ++c) (*probs)(r, c) = std::exp(zr[c] - lse);
    loss += lse - zr[labels[r]];
  }
  loss /= static_cast<Real>(n);
  const std::size_t li = logits.id();
  std::vector<std::size_t> y(labels.begin(), labels.end());
  return t.Record(DenseMatrix(1, 1, loss), {logits},
                  [li, probs, y = std::move(y)](Tape& tape, std::size_t self) {
                    if (!tape.RequiresGrad(li)) return;
                    const Real g = tape.Grad(self)(0, 0) /
                                   static_cast<Real>(y.size());
                    DenseMatrix& gl = tape.GradBuffer(li);
                    for (std::size_t r = 0; r < y.size(); ++r)
                      for (std::size_t c = 0; c < gl.cols(); ++c)
                        gl(r, c) += g * ((*probs)(r, c) - (c == y[r] ? 1.0 : 0.0));
                  });
}

}  // namespace ad
}  // namespace evinet::numerics
