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

#include "evinet/beta_reasoning/beta_embedding.h"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include "evinet/numerics/special_functions.h"

namespace evinet::beta {

using numerics::Digamma;
using numerics::LogBeta;
using numerics::Trigamma;

void BetaEmbedding::Validate() const {
  if (alpha.size() != beta.size() || alpha.empty())
    throw std::invalid_argument("Beta embedding needs matching nonempty alpha/beta");
  for (std::size_t j = 0; j < alpha.size(); ++j)
    if (!(alpha[j] > 0.0) || !(beta[j] > 0.0) || !std::isfinite(alpha[j]) ||
        !std::isfinite(beta[j]))
      throw std::invalid_argument("Beta embedding parameter " + std::to_string(j) +
                                  " is not a positive finite number");
}

BetaEmbedding BetaEmbedding::FromRow(std::span<const Real> row) {
  if (row.size() % 2 != 0)
    throw std::invalid_argument("Beta embedding row must have even width");
  const std::size_t d = row.size() / 2;
  return {{row.begin(), row.begin() + static_cast<std::ptrdiff_t>(d)},
          {row.begin() + static_cast<std::ptrdiff_t>(d), row.end()}};
}

DenseMatrix BetaEmbedding::ToRow() const {
  DenseMatrix out(1, 2 * dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    out(0, j) = alpha[j];
    out(0, dim() + j) = beta[j];
  }
  return out;
}

Real BetaKL(Real a_n, Real b_n, Real a_c, Real b_c) {
  const Real s = a_n + b_n;
  return LogBeta(a_c, b_c) - LogBeta(a_n, b_n) + (a_n - a_c) * Digamma(a_n) +
         (b_n - b_c) * Digamma(b_n) + (a_c + b_c - s) * Digamma(s);
}

Real Dist(const BetaEmbedding& node, const BetaEmbedding& cls) {
  if (node.dim() != cls.dim())
    throw std::invalid_argument("Dist: embedding dimensions differ (" +
                                std::to_string(node.dim()) + " vs " +
                                std::to_string(cls.dim()) + ")");
  Real total = 0.0;
  for (std::size_t j = 0; j < node.dim(); ++j)
    total += BetaKL(node.alpha[j], node.beta[j], cls.alpha[j], cls.beta[j]);
  return total;
}

BetaEmbedding Negation(const BetaEmbedding& e) {
  BetaEmbedding out = e;
  for (auto& a : out.alpha) a = 1.0 / a;
  for (auto& b : out.beta) b = 1.0 / b;
  return out;
}

namespace ad {
namespace {

// Per-(row, dim) quantities of one side of the KL.
struct SideTerms {
  DenseMatrix log_beta;   // rows x d
  DenseMatrix psi_a, psi_b, psi_s;
  DenseMatrix tri_a, tri_b, tri_s;
};

SideTerms Precompute(const DenseMatrix& e, bool trigamma) {
  const std::size_t n = e.rows(), d = e.cols() / 2;
  SideTerms t{DenseMatrix(n, d), DenseMatrix(n, d), DenseMatrix(n, d),
              DenseMatrix(n, d), {}, {}, {}};
  if (trigamma) t.tri_a = t.tri_b = t.tri_s = DenseMatrix(n, d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const Real a = e(i, j), b = e(i, d + j);
      t.log_beta(i, j) = LogBeta(a, b);
      t.psi_a(i, j) = Digamma(a);
      t.psi_b(i, j) = Digamma(b);
      t.psi_s(i, j) = Digamma(a + b);
      if (trigamma) {
        t.tri_a(i, j) = Trigamma(a);
        t.tri_b(i, j) = Trigamma(b);
        t.tri_s(i, j) = Trigamma(a + b);
      }
    }
  return t;
}

}  // namespace

Var BetaDistances(Var nodes, Var targets) {
  numerics::RequireShape(nodes.cols() == targets.cols() && nodes.cols() % 2 == 0 &&
                             nodes.cols() > 0,
                         "BetaDistances: nodes " + nodes.value().ShapeString() +
                             " and targets " + targets.value().ShapeString() +
                             " must share an even width");
  Tape& tape = *nodes.tape();
  const DenseMatrix& nv = nodes.value();
  const DenseMatrix& tv = targets.value();
  const std::size_t n = nv.rows(), t_count = tv.rows(), d = nv.cols() / 2;
  const bool need_grad =
      tape.RequiresGrad(nodes.id()) || tape.RequiresGrad(targets.id());
  auto ns = std::make_shared<SideTerms>(Precompute(nv, need_grad));
  auto ts = std::make_shared<SideTerms>(Precompute(tv, false));

  DenseMatrix out(n, t_count);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < t_count; ++t) {
      Real total = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        const Real an = nv(i, j), bn = nv(i, d + j);
        const Real ac = tv(t, j), bc = tv(t, d + j);
        total += ts->log_beta(t, j) - ns->log_beta(i, j) +
                 (an - ac) * ns->psi_a(i, j) + (bn - bc) * ns->psi_b(i, j) +
                 (ac + bc - an - bn) * ns->psi_s(i, j);
      }
      out(i, t) = total;
    }

  const std::size_t ni = nodes.id(), ti = targets.id();
  return tape.Record(
      std::move(out), {nodes, targets},
      [ni, ti, ns, ts, n, t_count, d](Tape& tp, std::size_t self) {
        const DenseMatrix& g = tp.Grad(self);
        const DenseMatrix& nv = tp.Value(ni);
        const DenseMatrix& tv = tp.Value(ti);
        const bool gn = tp.RequiresGrad(ni), gt = tp.RequiresGrad(ti);
        DenseMatrix* gnodes = gn ? &tp.GradBuffer(ni) : nullptr;
        DenseMatrix* gtargets = gt ? &tp.GradBuffer(ti) : nullptr;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t t = 0; t < t_count; ++t) {
            const Real w = g(i, t);
            if (w == 0.0) continue;
            for (std::size_t j = 0; j < d; ++j) {
              const Real an = nv(i, j), bn = nv(i, d + j);
              const Real ac = tv(t, j), bc = tv(t, d + j);
              const Real s = an + bn;
              if (gnodes) {
                const Real common = (ac + bc - s) * ns->tri_s(i, j);
                (*gnodes)(i, j) += w * ((an - ac) * ns->tri_a(i, j) + common);
                (*gnodes)(i, d + j) += w * ((bn - bc) * ns->tri_b(i, j) + common);
              }
              if (gtargets) {
                const Real common = ns->psi_s(i, j) - ts->psi_s(t, j);
                (*gtargets)(t, j) += w * (ts->psi_a(t, j) - ns->psi_a(i, j) + common);
                (*gtargets)(t, d + j) +=
                    w * (ts->psi_b(t, j) - ns->psi_b(i, j) + common);
              }
            }
          }
      });
}

Var Negation(Var e) { return numerics::ad::Reciprocal(e); }

}  // namespace ad
}  // namespace evinet::beta
