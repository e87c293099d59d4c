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

#ifndef QMEM_DESIGN_HPP
#define QMEM_DESIGN_HPP

// Coupling profiles that mode-match a temporal mode f.
//
// Storage is perfect when the drive kernel 2κ̃(t) e^{−2∫_t^T κ̃²} equals f(t),
// i.e. κ̃'/κ̃ + 2κ̃² = f'/f. With z = 1/κ̃² this is linear, z' = 2z f'/f − 4,
// with solution κ̃² = f² / (C + 4∫₀ᵗ f²). Retrieval is the time reverse,
// κ̃² = f² / (C + 4∫ₜᵀ f²). C = 0 is the optimum and diverges at the start
// (storage) or end (retrieval); realizable profiles are truncated at φ.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qmem/grid.hpp"
#include "qmem/profile.hpp"
#include "qmem/protocol.hpp"

namespace qmem {

namespace detail {

/// Builds min(raw, φ) with its running integral. `raw` may hold +inf at a
/// singular point; `raw_increment[i]` is the exact ∫ raw² over bin i and is
/// used whenever the whole bin lies below φ.
inline CouplingProfile assemble_truncated(Grid grid, const std::vector<double>& raw,
                                          const std::vector<double>& raw_increment, double phi, ProfileTag tag) {
  const std::size_t n = grid.size();
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    values[i] = std::min(raw[i], phi);
  }
  std::vector<double> cumulative(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double tau = grid[i + 1] - grid[i];
    double inc = 0.0;
    if (raw[i] >= phi && raw[i + 1] >= phi) {
      inc = phi * phi * tau;
    } else if (raw[i] <= phi && raw[i + 1] <= phi) {
      inc = raw_increment[i];
    } else {
      // Crossover bin: z = 1/κ̃² taken linear across the bin (exact for the
      // closed-form profiles), integrand min(1/z, φ²).
      const double z0 = 1.0 / (raw[i] * raw[i]);
      const double z1 = 1.0 / (raw[i + 1] * raw[i + 1]);
      const double lo = std::min(z0, z1);
      const double hi = std::max(z0, z1);
      const double zc = 1.0 / (phi * phi);
      const double frac = (zc - lo) / (hi - lo);
      inc = phi * phi * tau * frac + tau / (hi - lo) * std::log(hi / zc);
    }
    cumulative[i + 1] = cumulative[i] + inc;
  }
  tag.truncation = phi;
  return CouplingProfile(std::move(grid), std::move(values), std::move(cumulative), tag);
}

inline bool is_flat(const ModeFunction& f) {
  const double v0 = f.values().front();
  for (double v : f.values()) {
    if (std::abs(v - v0) > 1e-12 * std::abs(v0)) return false;
  }
  return true;
}

}  // namespace detail

/// Mode-matched profile for f. `regularization` is the dimensionless C ≥ 0
/// (C = 4 with flat f gives 1/(2√(t + T)) on T = 1). C = 0 is singular on a
/// grid covering [0, T] and needs a truncation level φ.
inline CouplingProfile solve_profile(const ModeFunction& f, Direction direction, double regularization,
                                     std::optional<double> truncation = std::nullopt) {
  const double C = regularization;
  if (!(C >= 0.0) || !std::isfinite(C)) {
    throw std::invalid_argument("solve_profile: regularization C must be finite and >= 0");
  }
  const double phi = truncation.value_or(std::numeric_limits<double>::infinity());
  if (!(phi > 0.0)) {
    throw std::invalid_argument("solve_profile: truncation must be > 0");
  }
  if (C == 0.0 && !std::isfinite(phi)) {
    throw std::invalid_argument("solve_profile: C = 0 diverges at the grid endpoint; give a truncation level");
  }
  const Grid& grid = f.grid();
  const std::size_t n = grid.size();
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = f.values()[i];
    if (v < 0.0) {
      throw std::invalid_argument("solve_profile: only nonnegative mode functions are supported");
    }
    sq[i] = v * v;
  }
  const std::vector<double> F = cumulative_trapezoid(grid, sq);
  const double total = F.back();
  std::vector<double> den(n), raw(n), inc(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    den[i] = C + 4.0 * (direction == Direction::storage ? F[i] : total - F[i]);
    raw[i] = den[i] > 0.0 ? f.values()[i] / std::sqrt(den[i]) : std::numeric_limits<double>::infinity();
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    // ∫ f²/den = ±¼ Δ ln den, exact along the trapezoid F.
    const double d = 0.25 * std::log(den[i + 1] / den[i]);
    inc[i] = direction == Direction::storage ? d : -d;
    if (!std::isfinite(inc[i])) inc[i] = std::numeric_limits<double>::infinity();
  }
  ProfileTag tag;
  tag.regularization = C;
  if (detail::is_flat(f)) {
    tag.shape = direction == Direction::storage ? ProfileShape::storage_optimal : ProfileShape::retrieval_optimal;
  } else {
    tag.shape = ProfileShape::mode_matched;
  }
  return detail::assemble_truncated(grid, raw, inc, phi, tag);
}

/// min(κ̃(t), φ) on the profile's grid.
inline CouplingProfile truncate_profile(const CouplingProfile& p, double phi) {
  if (!(phi > 0.0) || std::isnan(phi)) {
    throw std::invalid_argument("truncate_profile: phi must be > 0");
  }
  std::vector<double> inc(p.size() - 1);
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    inc[i] = p.cumulative()[i + 1] - p.cumulative()[i];
  }
  return detail::assemble_truncated(p.grid(), p.values(), inc, std::min(phi, p.tag().truncation), p.tag());
}

/// κ̃(t) = 1/(2√(t + T)): the atom ends in a 50/50 superposition with light.
inline CouplingProfile beamsplitter_profile(Grid grid) {
  check_grid(grid);
  const double T = grid.back();
  std::vector<double> values(grid.size()), cumulative(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    values[i] = 0.5 / std::sqrt(grid[i] + T);
    cumulative[i] = 0.25 * std::log1p(grid[i] / T);
  }
  ProfileTag tag;
  tag.shape = ProfileShape::beamsplitter;
  tag.regularization = 4.0;
  return CouplingProfile(std::move(grid), std::move(values), std::move(cumulative), tag);
}

/// Two-pass retrieval profile κ̃(t) = √(a/(2T − 2t)), truncated at φ.
inline CouplingProfile retrieval_profile_a(Grid grid, double a, std::optional<double> truncation = std::nullopt) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw std::invalid_argument("retrieval_profile_a: a must be > 0");
  }
  if (!truncation || !std::isfinite(*truncation)) {
    throw std::invalid_argument("retrieval_profile_a: the profile diverges at t = T; give a truncation level");
  }
  if (!(*truncation > 0.0)) {
    throw std::invalid_argument("retrieval_profile_a: truncation must be > 0");
  }
  check_grid(grid);
  const double T = grid.back();
  const std::size_t n = grid.size();
  std::vector<double> raw(n), inc(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double rest = T - grid[i];
    raw[i] = rest > 0.0 ? std::sqrt(a / (2.0 * rest)) : std::numeric_limits<double>::infinity();
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double r0 = T - grid[i];
    const double r1 = T - grid[i + 1];
    inc[i] = r1 > 0.0 ? 0.5 * a * std::log(r0 / r1) : std::numeric_limits<double>::infinity();
  }
  ProfileTag tag;
  tag.shape = ProfileShape::retrieval_a;
  tag.gain = a;
  return detail::assemble_truncated(std::move(grid), raw, inc, *truncation, tag);
}

/// Flat-mode output relations of the untruncated retrieval-a profile:
///   x^out = light_x·x^in + atom_p·p_A(0),  p^out = light_p·p^in + atom_x·x_A(0).
struct RetrievalResponse {
  double light_x;
  double atom_p;
  double light_p;
  double atom_x;
};

inline RetrievalResponse retrieval_a_response(double a) {
  if (!(a > 0.0)) {
    throw std::invalid_argument("retrieval_a_response: a must be > 0");
  }
  const double r = std::sqrt(2.0 * a);
  return {1.0 / (1.0 + a), r / (1.0 + a), 1.0 - a, -r};
}

/// Σ over stages of (pass count · ∫κ̃² dt).
inline double kappa_tot(std::span<const Stage> stages) {
  double total = 0.0;
  for (const Stage& s : stages) {
    total += s.passes() * s.profile.squared_integral();
  }
  return total;
}

inline double kappa_tot(const ProtocolSpec& spec) { return kappa_tot(std::span<const Stage>(spec.stages)); }

/// Truncation level φ at which a truncated C = 0 storage + retrieval pair of
/// four-pass stages on duration T reaches κ²_tot = 2 + 2 ln(4φ²T).
inline double four_four_truncation_for(double kappa_tot_target, double duration = 1.0) {
  return std::sqrt(std::exp(0.5 * (kappa_tot_target - 2.0)) / (4.0 * duration));
}

/// max over interior grid points with κ̃ < φ of |κ̃'/κ̃ ± 2κ̃² − f'/f| (+ for
/// storage, − for retrieval), by three-point finite differences of ln κ̃ and
/// ln f. Points where f or κ̃ vanish, or that touch the truncated plateau,
/// are skipped.
inline double mode_matching_residual(const CouplingProfile& p, const ModeFunction& f, Direction direction) {
  if (f.grid() != p.grid()) {
    throw std::invalid_argument("mode_matching_residual: profile and mode must share a grid");
  }
  const Grid& g = p.grid();
  const auto& k = p.values();
  const auto& fv = f.values();
  const double phi = p.tag().truncation;
  const double sign = direction == Direction::storage ? 2.0 : -2.0;
  auto dlog = [&g](const std::vector<double>& v, std::size_t i) {
    const double h0 = g[i] - g[i - 1];
    const double h1 = g[i + 1] - g[i];
    const double l0 = std::log(v[i - 1]), l1 = std::log(v[i]), l2 = std::log(v[i + 1]);
    return (-h1 / (h0 * (h0 + h1))) * l0 + ((h1 - h0) / (h0 * h1)) * l1 + (h0 / (h1 * (h0 + h1))) * l2;
  };
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < g.size(); ++i) {
    bool ok = true;
    for (std::size_t j = i - 1; j <= i + 1; ++j) {
      if (!(k[j] > 0.0) || !(fv[j] > 0.0) || k[j] >= phi) ok = false;
    }
    if (!ok) continue;
    const double r = dlog(k, i) + sign * k[i] * k[i] - dlog(fv, i);
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

}  // namespace qmem

#endif  // QMEM_DESIGN_HPP
