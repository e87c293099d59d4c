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

#ifndef QMEM_TESTS_ORACLES_SAMPLING_HPP
#define QMEM_TESTS_ORACLES_SAMPLING_HPP

// Haar-random qubit states and a seeded Monte-Carlo average; Richardson
// extrapolated trapezoid quadrature for smooth 1-D integrals.

#include <cmath>
#include <functional>
#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "qmem/qubit.hpp"

namespace oracle {

inline qmem::QubitState haar_qubit(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  const double a = g(rng), b = g(rng), c = g(rng), d = g(rng);
  return qmem::QubitState::normalized({a, b}, {c, d});
}

struct MonteCarlo {
  double mean;
  double standard_error;
};

inline MonteCarlo haar_average(const std::function<double(const qmem::QubitState&)>& f, int samples,
                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double v = f(haar_qubit(rng));
    s += v;
    s2 += v * v;
  }
  const double mean = s / samples;
  return {mean, std::sqrt(std::max(0.0, s2 / samples - mean * mean) / samples)};
}

/// Romberg table of trapezoid rules on [a, b].
inline double richardson_integral(const std::function<double(double)>& f, double a, double b, int levels = 16) {
  std::vector<double> prev, cur;
  double h = b - a;
  double trap = 0.5 * h * (f(a) + f(b));
  prev.push_back(trap);
  long long n = 1;
  for (int k = 1; k < levels; ++k) {
    double mid = 0.0;
    for (long long i = 0; i < n; ++i) mid += f(a + (i + 0.5) * h);
    trap = 0.5 * trap + 0.5 * h * mid;
    h *= 0.5;
    n *= 2;
    cur.assign(1, trap);
    double pow4 = 1.0;
    for (std::size_t j = 0; j < prev.size(); ++j) {
      pow4 *= 4.0;
      cur.push_back(cur[j] + (cur[j] - prev[j]) / (pow4 - 1.0));
    }
    if (k > 3 && std::abs(cur.back() - prev.back()) < 1e-14) return cur.back();
    prev = cur;
  }
  return prev.back();
}

}  // namespace oracle

#endif  // QMEM_TESTS_ORACLES_SAMPLING_HPP
