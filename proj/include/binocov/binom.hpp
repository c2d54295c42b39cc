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

#ifndef BINOCOV_BINOM_HPP
#define BINOCOV_BINOM_HPP

#include <stdexcept>

namespace binocov {

/// Number of Bernoulli trials, n >= 1.
struct TrialCount {
  explicit TrialCount(int n) : value(n) {
    if (n < 1) throw std::domain_error("TrialCount: n must be >= 1");
  }
  int value;
};

/// A probability in [0, 1]. Rejects NaN and out-of-range values at
/// construction. The closed endpoints are deliberately allowed; kernel-level
/// scans touch p = 0 and p = 1 even though the analysis itself lives on (0,1).
struct Probability {
  explicit Probability(double v) : value(v) {
    if (!(v >= 0.0 && v <= 1.0))
      throw std::domain_error("Probability: value must be in [0, 1]");
  }
  double value;
};

/// ln[ C(n,k) p^k (1-p)^(n-k) ], computed via log-gamma so single-term
/// accuracy is uniform in k. Exact conventions at the degenerate endpoints:
/// p=0 gives 0 for k=0 and -inf otherwise (mirrored at p=1).
/// Throws std::domain_error if k is outside [0, n].
double log_binom_pmf(TrialCount n, int k, Probability p);

/// Pr{ a <= K <= b | p } for K ~ Binomial(n, p). The range is clamped to
/// [0, n]; an empty (or fully out-of-range) range yields exactly 0. Terms are
/// accumulated from the mode outward in descending magnitude with compensated
/// summation; absolute accuracy 1e-13 or better. Total function, never throws
/// on ordering.
double binom_range_prob(TrialCount n, long long a, long long b, Probability p);

/// Standard-normal upper-tail quantile: the z with Q(z) = half_delta, where
/// Q is the upper-tail CDF. Rational approximation plus one Newton step
/// against the erfc-based CDF; relative accuracy <= 1e-12.
/// Throws std::domain_error unless 0 < half_delta < 0.5.
double upper_tail_quantile(double half_delta);

/// Standard-normal upper-tail probability Q(z) = 0.5 * erfc(z / sqrt(2)).
double normal_upper_tail(double z);

}  // namespace binocov

#endif  // BINOCOV_BINOM_HPP
