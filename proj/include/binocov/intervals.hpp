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

#ifndef BINOCOV_INTERVALS_HPP
#define BINOCOV_INTERVALS_HPP

#include <string>
#include <vector>

#include "binocov/binom.hpp"

namespace binocov {

/// One Wald analysis: n, nominal non-coverage level delta, the critical
/// value z = upper_tail_quantile(delta/2), and theta = z^2 / n.
/// theorem_valid is theta < 3; construction never rejects theta >= 3 — the
/// rejection happens at the theorem entry point.
struct IntervalSpec {
  TrialCount n;
  double delta;
  double z;
  double theta;
  bool theorem_valid;
};

IntervalSpec make_spec(TrialCount n, double delta);

/// Lower Wald limit for count k. Raw value: may lie outside [0, 1]; the
/// candidate filters use the unclipped value. k=0 and k=n are exact (0 and 1).
double wald_lower(const IntervalSpec& spec, int k);
double wald_upper(const IntervalSpec& spec, int k);

/// Lower root of the boundary quadratic (p - k/n)^2 = theta (k/n)(1 - k/n),
/// on COUNT scale (multiplied by n once, here). Counts k between
/// t_minus_count(p) and t_plus_count(p) are exactly those whose Wald interval
/// covers p. Evaluated via the conjugate form 2p^2/(2p + theta + sqrt(disc))
/// which has no cancellation near p = 0.
double t_minus_count(const IntervalSpec& spec, double p);
double t_plus_count(const IntervalSpec& spec, double p);

/// A materialized monotone interval family: limit tables for k = 0..n.
/// Limits are raw (unclipped). The monotone flags are verified at
/// construction, never assumed.
struct IntervalFamily {
  std::string name;
  int n;
  std::vector<double> lower;  // size n+1
  std::vector<double> upper;  // size n+1
  bool monotone_lower;
  bool monotone_upper;
};

struct MonotoneResult {
  bool ok;
  int first_violation;  // smallest violating k; -1 when ok
};

/// Strict monotonicity check in the sense of Lemma 1: the clipped-to-[0,1]
/// sequences must be non-decreasing, and any consecutive pair with both raw
/// values inside [0,1] must strictly increase. Raw Wald limits dip outside
/// [0,1] near k=0 / k=n, which is why the check is scoped to the in-range
/// region; this is also exactly what contiguous acceptance sets need.
MonotoneResult verify_monotone(const IntervalFamily& family);

IntervalFamily make_wald_family(const IntervalSpec& spec);
IntervalFamily make_wilson_family(const IntervalSpec& spec);
IntervalFamily make_agresti_coull_family(const IntervalSpec& spec);

}  // namespace binocov

#endif  // BINOCOV_INTERVALS_HPP
