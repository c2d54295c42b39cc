// Copyright 2026 The binocov Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "binocov/intervals.hpp"

#include <algorithm>
#include <cmath>

namespace binocov {

IntervalSpec make_spec(TrialCount n, double delta) {
  if (!(delta > 0.0 && delta < 1.0))
    throw std::domain_error("make_spec: delta must be in (0, 1)");
  const double z = upper_tail_quantile(delta / 2.0);
  const double theta = z * z / n.value;
  return IntervalSpec{n, delta, z, theta, theta < 3.0};
}

namespace {

void check_k(const IntervalSpec& spec, int k, const char* who) {
  if (k < 0 || k > spec.n.value)
    throw std::domain_error(std::string(who) + ": k out of [0, n]");
}

double halfwidth(const IntervalSpec& spec, int k) {
  const double f = static_cast<double>(k) / spec.n.value;
  return spec.z * std::sqrt(f * (1.0 - f) / spec.n.value);
}

}  // namespace

double wald_lower(const IntervalSpec& spec, int k) {
  check_k(spec, k, "wald_lower");
  if (k == 0) return 0.0;
  if (k == spec.n.value) return 1.0;
  return static_cast<double>(k) / spec.n.value - halfwidth(spec, k);
}

double wald_upper(const IntervalSpec& spec, int k) {
  check_k(spec, k, "wald_upper");
  if (k == 0) return 0.0;
  if (k == spec.n.value) return 1.0;
  return static_cast<double>(k) / spec.n.value + halfwidth(spec, k);
}

double t_minus_count(const IntervalSpec& spec, double p) {
  const double th = spec.theta;
  const double disc = th * (th + 4.0 * p * (1.0 - p));
  // Conjugate form of (2p + theta - sqrt(disc)) / (2 (1+theta)).
  return spec.n.value * 2.0 * p * p / (2.0 * p + th + std::sqrt(disc));
}

double t_plus_count(const IntervalSpec& spec, double p) {
  const double th = spec.theta;
  const double disc = th * (th + 4.0 * p * (1.0 - p));
  return spec.n.value * (2.0 * p + th + std::sqrt(disc)) / (2.0 * (1.0 + th));
}

namespace {

// Smallest violating pair index in one limit table; -1 when monotone.
int first_violation_in(const std::vector<double>& t) {
  const auto in_range = [](double v) { return v >= 0.0 && v <= 1.0; };
  const auto clip = [](double v) { return std::clamp(v, 0.0, 1.0); };
  for (int k = 0; k + 1 < static_cast<int>(t.size()); ++k) {
    if (clip(t[k + 1]) < clip(t[k])) return k;
    if (in_range(t[k]) && in_range(t[k + 1]) && t[k + 1] <= t[k]) return k;
  }
  return -1;
}

}  // namespace

MonotoneResult verify_monotone(const IntervalFamily& family) {
  const int vl = first_violation_in(family.lower);
  const int vu = first_violation_in(family.upper);
  int violation = vl;
  if (vu >= 0 && (violation < 0 || vu < violation)) violation = vu;
  return MonotoneResult{violation < 0, violation};
}

namespace {

IntervalFamily finish(std::string name, int n, std::vector<double> lower,
                      std::vector<double> upper) {
  IntervalFamily fam{std::move(name), n, std::move(lower), std::move(upper),
                     false, false};
  fam.monotone_lower = first_violation_in(fam.lower) < 0;
  fam.monotone_upper = first_violation_in(fam.upper) < 0;
  return fam;
}

}  // namespace

IntervalFamily make_wald_family(const IntervalSpec& spec) {
  const int n = spec.n.value;
  std::vector<double> lo(n + 1), up(n + 1);
  for (int k = 0; k <= n; ++k) {
    lo[k] = wald_lower(spec, k);
    up[k] = wald_upper(spec, k);
  }
  return finish("wald", n, std::move(lo), std::move(up));
}

IntervalFamily make_wilson_family(const IntervalSpec& spec) {
  const int n = spec.n.value;
  const double th = spec.theta;
  std::vector<double> lo(n + 1), up(n + 1);
  for (int k = 0; k <= n; ++k) {
    // The k=0 / k=n limits simplify algebraically; computing them directly
    // avoids ~1e-17 residue that would register as a spurious breakpoint.
    if (k == 0) {
      lo[k] = 0.0;
      up[k] = th / (1.0 + th);
      continue;
    }
    if (k == n) {
      lo[k] = 1.0 / (1.0 + th);
      up[k] = 1.0;
      continue;
    }
    const double f = static_cast<double>(k) / n;
    const double center = f + th / 2.0;
    const double hw = spec.z * std::sqrt(f * (1.0 - f) / n + th / (4.0 * n));
    lo[k] = (center - hw) / (1.0 + th);
    up[k] = (center + hw) / (1.0 + th);
  }
  return finish("wilson", n, std::move(lo), std::move(up));
}

IntervalFamily make_agresti_coull_family(const IntervalSpec& spec) {
  const int n = spec.n.value;
  const double z2 = spec.z * spec.z;
  const double nt = n + z2;
  std::vector<double> lo(n + 1), up(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double pt = (k + z2 / 2.0) / nt;
    const double hw = spec.z * std::sqrt(pt * (1.0 - pt) / nt);
    lo[k] = pt - hw;
    up[k] = pt + hw;
  }
  return finish("agresti-coull", n, std::move(lo), std::move(up));
}

}  // namespace binocov
