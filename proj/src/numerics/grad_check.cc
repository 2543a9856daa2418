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

#include "evinet/numerics/grad_check.h"

#include <algorithm>
#include <cmath>

namespace evinet::numerics {
namespace {

Real Evaluate(const LossBuilder& build) {
  Tape tape;
  Var loss = build(tape);
  RequireShape(loss.rows() == 1 && loss.cols() == 1,
               "GradCheck: loss must be 1x1");
  const Real v = loss.value()(0, 0);
  if (!std::isfinite(v))
    throw NonFiniteLossError("GradCheck: non-finite loss at probe point");
  return v;
}

}  // namespace

Real RelativeError(Real analytic, Real numeric) {
  const Real denom =
      std::max({Real{1.0}, std::abs(analytic), std::abs(numeric)});
  return std::abs(analytic - numeric) / denom;
}

std::vector<GradCheckReport> GradCheck(const LossBuilder& build,
                                       const std::vector<Parameter*>& params,
                                       Real epsilon) {
  if (!(epsilon >= 1e-7 && epsilon <= 1e-3))
    throw std::invalid_argument("GradCheck: epsilon must lie in [1e-7, 1e-3]");

  for (Parameter* p : params) p->ZeroGrad();
  {
    Tape tape;
    Var loss = build(tape);
    if (!std::isfinite(loss.value()(0, 0)))
      throw NonFiniteLossError("GradCheck: non-finite loss at base point");
    tape.Backward(loss);
  }

  std::vector<GradCheckReport> reports;
  reports.reserve(params.size());
  for (Parameter* p : params) {
    GradCheckReport report;
    report.parameter = p->name;
    report.analytic = p->grad;
    report.numeric = DenseMatrix(p->value.rows(), p->value.cols());
    auto values = p->value.data();
    auto numeric = report.numeric.data();
    for (std::size_t i = 0; i < values.size(); ++i) {
      const Real original = values[i];
      values[i] = original + epsilon;
      const Real up = Evaluate(build);
      values[i] = original - epsilon;
      const Real down = Evaluate(build);
      values[i] = original;
      numeric[i] = (up - down) / (2.0 * epsilon);
      report.max_relative_error =
          std::max(report.max_relative_error,
                   RelativeError(report.analytic.data()[i], numeric[i]));
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

Real MaxRelativeError(const std::vector<GradCheckReport>& reports) {
  Real m = 0.0;
  for (const auto& r : reports) m = std::max(m, r.max_relative_error);
  return m;
}

}  // namespace evinet::numerics
