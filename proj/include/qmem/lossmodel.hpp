// Copyright 2026 The qmem Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QMEM_LOSSMODEL_HPP
#define QMEM_LOSSMODEL_HPP

// Order-of-magnitude error budget with spontaneous emission: with optical
// depth α and emission probability per atom η = κ²_tot/α the error is
// ~ A e^{−αη} + B η. A and B default to 1.

#include <cmath>
#include <stdexcept>

namespace qmem {

struct LossPrefactors {
  double interaction = 1.0;  // A, in front of e^{−αη}
  double emission = 1.0;     // B, in front of η
};

struct LossBudget {
  double alpha = 0.0;
  double eta = 0.0;
  double kappa_tot = 0.0;

  static LossBudget from_kappa(double alpha, double kappa_tot) {
    if (!(alpha > 0.0) || !(kappa_tot >= 0.0)) {
      throw std::invalid_argument("loss budget: need alpha > 0 and kappa_tot >= 0");
    }
    return {alpha, kappa_tot / alpha, kappa_tot};
  }
};

inline double total_error(double alpha, double eta, const LossPrefactors& c = {}) {
  if (!(alpha >= 0.0) || !(eta >= 0.0)) {
    throw std::invalid_argument("total_error: alpha and eta must be nonnegative");
  }
  return c.interaction * std::exp(-alpha * eta) + c.emission * eta;
}

inline double total_error(const LossBudget& b, const LossPrefactors& c = {}) { return total_error(b.alpha, b.eta, c); }

struct LossOptimum {
  double eta;
  double error;
};

/// Closed-form minimizer with unit prefactors: η* = ln α/α, error* = (1 + ln α)/α.
inline LossOptimum optimal_eta(double alpha) {
  if (!(alpha > 1.0)) {
    throw std::invalid_argument("optimal_eta: alpha must exceed 1");
  }
  const double l = std::log(alpha);
  return {l / alpha, (1.0 + l) / alpha};
}

/// Numerical minimizer: bisection on the sign of d/dη = B − Aα e^{−αη},
/// which is increasing in η.
inline LossOptimum optimal_eta_numeric(double alpha, const LossPrefactors& c = {}) {
  if (!(alpha > 0.0) || !(c.interaction * alpha > c.emission) || !(c.emission > 0.0)) {
    throw std::invalid_argument("optimal_eta_numeric: no interior optimum");
  }
  auto slope = [&](double eta) { return c.emission - c.interaction * alpha * std::exp(-alpha * eta); };
  double lo = 0.0, hi = 1.0;
  while (slope(hi) < 0.0) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (slope(mid) < 0.0 ? lo : hi) = mid;
  }
  const double eta = 0.5 * (lo + hi);
  return {eta, total_error(alpha, eta, c)};
}

}  // namespace qmem

#endif  // QMEM_LOSSMODEL_HPP
