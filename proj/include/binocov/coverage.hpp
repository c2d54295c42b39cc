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

#ifndef BINOCOV_COVERAGE_HPP
#define BINOCOV_COVERAGE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "binocov/intervals.hpp"

namespace binocov {

/// Endpoint rule: does the interval cover p when a limit equals p?
enum class Variant { Closed, Open };

enum class Side { Lower, Upper };

/// Default coefficient for the integer-snap tolerance eps_int = coeff * n.
/// Values within eps_int of an integer are snapped before ceil/floor, so
/// floating noise cannot flip a boundary count in or out of a candidate
/// range. Overridable (BINOCOV_EPS_INT / --eps-int); 0 disables snapping.
inline constexpr double kDefaultSnapEps = 1e-9;

/// One evaluated candidate probability: Pr{ a <= K <= b | p_eval } with the
/// evaluation point pinned at a breakpoint L(k) or U(k). b < a is a valid
/// empty range with prob 0; empty candidates are kept, not dropped.
struct CandidateEval {
  int k;
  Side side;
  Variant variant;
  double p_eval;
  long long a;
  long long b;
  double prob;
};

/// Minimum-coverage result. argmin is absent only in the no-breakpoint
/// degenerate case (no limit of the family lies inside (0,1)), where the
/// acceptance set is constant on (0,1) and the infimum is taken at the
/// endpoints. Ties break to the smallest k, lower side before upper.
struct MinCoverageReport {
  double value;
  std::optional<CandidateEval> argmin;
  std::vector<CandidateEval> candidates;
  std::string method;  // "theorem1", "boundary_scan", "grid"
  Variant variant;
};

struct Breakpoint {
  double value;
  int k;
  Side side;
};

struct CurveSample {
  double p;
  double coverage;
  int piece_index;
};

struct CoverageCurve {
  std::vector<CurveSample> samples;
  std::vector<Breakpoint> breakpoints;
};

struct MonteCarloResult {
  double estimate;
  double std_error;
};

/// Contiguous acceptance count-range {k : family interval covers p} for a
/// given pair of comparison rules (strict or non-strict against the lower /
/// upper limit tables). Requires the monotone flags; binary search.
struct AcceptRange {
  long long a;
  long long b;  // b < a means empty
};
AcceptRange acceptance_range(const IntervalFamily& family, double p,
                             bool lower_strict, bool upper_strict);

/// All limits of the family that fall strictly inside (0,1), each annotated
/// with its (k, side) provenance, sorted by (value, k, side).
std::vector<Breakpoint> breakpoints(const IntervalFamily& family);

/// Coverage probability at p under the chosen endpoint rule: the sum of
/// pmf(n,k,p) over counts whose interval covers p. Uses the contiguous-range
/// binary search when the monotone flags hold, otherwise a linear membership
/// scan. Throws std::domain_error unless 0 < p < 1.
double coverage_at(const IntervalFamily& family, double p, Variant variant);

/// The finite candidate set of the exact-minimum theorem for the Wald
/// family: at each breakpoint L(k) (resp. U(k)) inside (0,1), the probability
/// of the acceptance range one step outside the breakpoint. Requires
/// theta < 3 (throws std::domain_error otherwise, citing n > z^2/3).
std::vector<CandidateEval> theorem1_candidates(const IntervalSpec& spec,
                                               Variant variant,
                                               double snap_eps = kDefaultSnapEps);

/// Exact minimum coverage of the Wald family via the finite candidate set.
/// Requires theta < 3. For the Closed variant the value is an infimum over
/// the breakpoint hull (it need not be attained); Open is an attained min.
MinCoverageReport min_coverage_theorem1(const IntervalSpec& spec,
                                        Variant variant,
                                        double snap_eps = kDefaultSnapEps);

/// Generic exact minimizer for any monotone family: enumerates breakpoints
/// and, at each, evaluates the acceptance sets just below, at, and just
/// above the breakpoint. The sets are obtained by strict / non-strict
/// comparisons against the limit tables — the evaluation point stays at the
/// breakpoint; no epsilon-perturbation of p is involved. With monotone
/// limits each piece's acceptance range is constant and Pr{a<=K<=b|p} is
/// unimodal in p, so piecewise minima occur at piece endpoints (cross-checked
/// by the grid oracle). Throws std::invalid_argument for non-monotone input.
MinCoverageReport min_coverage_boundary_scan(const IntervalFamily& family,
                                             Variant variant);

/// Independent sampling oracle: evaluates coverage_at on the uniform grid
/// {grid_step, 2*grid_step, ...} restricted to the breakpoint hull, plus the
/// one-sided coverage limits at every breakpoint b (membership decided at
/// b +- pad, range probability evaluated at b). An upper bound on the
/// infimum (including one-sided limits at the hull edges) that converges as
/// grid_step -> 0. The report carries only the argmin (as a synthetic
/// candidate with k = -1), not the full grid.
MinCoverageReport grid_oracle_min(const IntervalFamily& family, Variant variant,
                                  double grid_step, double pad);

/// Seeded Monte Carlo estimate of the coverage at p with its binomial
/// standard error. Deterministic for a fixed seed.
MonteCarloResult monte_carlo_coverage(const IntervalFamily& family,
                                      Probability p, long long trials,
                                      std::uint64_t seed, Variant variant);

/// Samples coverage_at on the interior of every piece between consecutive
/// distinct breakpoints (including the two outer pieces touching 0 and 1),
/// samples_per_piece uniformly spaced points per piece.
CoverageCurve coverage_curve(const IntervalFamily& family,
                             int samples_per_piece, Variant variant);

}  // namespace binocov

#endif  // BINOCOV_COVERAGE_HPP
