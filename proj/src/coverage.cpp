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

#include "binocov/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace binocov {

namespace {

bool monotone(const IntervalFamily& f) {
  return f.monotone_lower && f.monotone_upper;
}

// With no breakpoint inside (0,1) the acceptance set is the same for every
// p in (0,1): a count k is accepted for all p iff its lower limit is <= 0 and
// its upper limit >= 1. The infimum is then taken at p -> 0+ / p -> 1-:
// 1 if every count is accepted, otherwise 0.
double no_breakpoint_value(const IntervalFamily& f) {
  for (int k = 0; k <= f.n; ++k)
    if (!(f.lower[k] <= 0.0 && f.upper[k] >= 1.0)) return 0.0;
  return 1.0;
}

MinCoverageReport degenerate_report(const IntervalFamily& f, Variant variant,
                                    std::string method) {
  return MinCoverageReport{no_breakpoint_value(f), std::nullopt, {},
                           std::move(method), variant};
}

// Deterministic tie-breaking: smaller probability wins; on an exact tie,
// smaller k, then lower side before upper.
bool better(const CandidateEval& c, const CandidateEval& best) {
  if (c.prob != best.prob) return c.prob < best.prob;
  if (c.k != best.k) return c.k < best.k;
  return c.side == Side::Lower && best.side == Side::Upper;
}

MinCoverageReport reduce(std::vector<CandidateEval> candidates,
                         std::string method, Variant variant) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i)
    if (better(candidates[i], candidates[best])) best = i;
  return MinCoverageReport{candidates[best].prob, candidates[best],
                           std::move(candidates), std::move(method), variant};
}

}  // namespace

AcceptRange acceptance_range(const IntervalFamily& family, double p,
                             bool lower_strict, bool upper_strict) {
  if (!monotone(family))
    throw std::invalid_argument("acceptance_range: family is not monotone");
  const auto& lo = family.lower;
  const auto& up = family.upper;
  // lower-limit predicate is true-then-false in k, upper-limit predicate
  // false-then-true; both single-crossing for p in (0,1) given the clipped
  // monotonicity verified at construction.
  const auto up_ok = [&](long long k) {
    return upper_strict ? up[static_cast<std::size_t>(k)] > p
                        : up[static_cast<std::size_t>(k)] >= p;
  };
  const auto lo_ok = [&](long long k) {
    return lower_strict ? lo[static_cast<std::size_t>(k)] < p
                        : lo[static_cast<std::size_t>(k)] <= p;
  };
  // First k with up_ok (false...false,true...true).
  long long l = 0, r = family.n + 1;
  while (l < r) {
    const long long mid = l + (r - l) / 2;
    if (up_ok(mid)) r = mid; else l = mid + 1;
  }
  const long long a = l;
  // Last k with lo_ok (true...true,false...false).
  l = 0;
  r = family.n + 1;
  while (l < r) {
    const long long mid = l + (r - l) / 2;
    if (lo_ok(mid)) l = mid + 1; else r = mid;
  }
  const long long b = l - 1;
  return AcceptRange{a, b};
}

std::vector<Breakpoint> breakpoints(const IntervalFamily& family) {
  std::vector<Breakpoint> out;
  for (int k = 0; k <= family.n; ++k) {
    if (family.lower[k] > 0.0 && family.lower[k] < 1.0)
      out.push_back({family.lower[k], k, Side::Lower});
    if (family.upper[k] > 0.0 && family.upper[k] < 1.0)
      out.push_back({family.upper[k], k, Side::Upper});
  }
  std::sort(out.begin(), out.end(), [](const Breakpoint& x, const Breakpoint& y) {
    if (x.value != y.value) return x.value < y.value;
    if (x.k != y.k) return x.k < y.k;
    return x.side == Side::Lower && y.side == Side::Upper;
  });
  return out;
}

double coverage_at(const IntervalFamily& family, double p, Variant variant) {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("coverage_at: p must be in (0, 1)");
  const TrialCount n(family.n);
  const bool strict = variant == Variant::Open;
  if (monotone(family)) {
    const AcceptRange r = acceptance_range(family, p, strict, strict);
    return binom_range_prob(n, r.a, r.b, Probability(p));
  }
  // Non-monotone fallback: the acceptance set may not be contiguous.
  long double sum = 0.0L;
  for (int k = 0; k <= family.n; ++k) {
    const bool in = strict ? family.lower[k] < p && p < family.upper[k]
                           : family.lower[k] <= p && p <= family.upper[k];
    if (in) sum += expl(static_cast<long double>(
                 log_binom_pmf(n, k, Probability(p))));
  }
  return static_cast<double>(std::min(sum, 1.0L));
}

namespace {

double snap(double x, double eps_int) {
  const double r = std::nearbyint(x);
  return std::abs(x - r) <= eps_int ? r : x;
}

}  // namespace

std::vector<CandidateEval> theorem1_candidates(const IntervalSpec& spec,
                                               Variant variant,
                                               double snap_eps) {
  if (!spec.theorem_valid)
    throw std::domain_error(
        "theorem1: requires theta < 3, i.e. n > z_{delta/2}^2 / 3");
  const int n = spec.n.value;
  const double eps_int = snap_eps * n;
  const bool closed = variant == Variant::Closed;
  std::vector<CandidateEval> out;
  for (int k = 0; k <= n; ++k) {
    const double lk = wald_lower(spec, k);
    if (lk > 0.0 && lk < 1.0) {
      const double tm = snap(t_minus_count(spec, lk), eps_int);
      const long long a = closed ? static_cast<long long>(std::ceil(tm))
                                 : static_cast<long long>(std::floor(tm)) + 1;
      const long long b = k - 1;
      const double prob = binom_range_prob(spec.n, a, b, Probability(lk));
      out.push_back({k, Side::Lower, variant, lk, a, b, prob});
    }
    const double uk = wald_upper(spec, k);
    if (uk > 0.0 && uk < 1.0) {
      const double tp = snap(t_plus_count(spec, uk), eps_int);
      const long long a = k + 1;
      const long long b = closed ? static_cast<long long>(std::floor(tp))
                                 : static_cast<long long>(std::ceil(tp)) - 1;
      const double prob = binom_range_prob(spec.n, a, b, Probability(uk));
      out.push_back({k, Side::Upper, variant, uk, a, b, prob});
    }
  }
  return out;
}

MinCoverageReport min_coverage_theorem1(const IntervalSpec& spec,
                                        Variant variant, double snap_eps) {
  auto candidates = theorem1_candidates(spec, variant, snap_eps);
  if (candidates.empty()) {
    // Happens for tiny n (e.g. n=2, delta=0.05): every limit falls outside
    // (0,1) even though theta < 3, so there is nothing to enumerate and the
    // acceptance set is constant on (0,1).
    return degenerate_report(make_wald_family(spec), variant, "theorem1");
  }
  return reduce(std::move(candidates), "theorem1", variant);
}

MinCoverageReport min_coverage_boundary_scan(const IntervalFamily& family,
                                             Variant variant) {
  if (!monotone(family))
    throw std::invalid_argument(
        "boundary_scan: family must have monotone limits");
  const auto bps = breakpoints(family);
  if (bps.empty()) return degenerate_report(family, variant, "boundary_scan");

  const TrialCount n(family.n);
  const bool open = variant == Variant::Open;
  std::vector<CandidateEval> candidates;
  candidates.reserve(bps.size() * 3);
  for (const Breakpoint& bp : bps) {
    // Acceptance sets just below / at / just above the breakpoint, obtained
    // by exact strict / non-strict comparisons against the limit tables; the
    // evaluation point stays at the breakpoint itself.
    const AcceptRange pos[3] = {
        acceptance_range(family, bp.value, /*lower_strict=*/true,
                         /*upper_strict=*/false),              // below
        acceptance_range(family, bp.value, open, open),        // at
        acceptance_range(family, bp.value, /*lower_strict=*/false,
                         /*upper_strict=*/true),               // above
    };
    for (const AcceptRange& r : pos) {
      const double prob = binom_range_prob(n, r.a, r.b, Probability(bp.value));
      candidates.push_back({bp.k, bp.side, variant, bp.value, r.a, r.b, prob});
    }
  }
  return reduce(std::move(candidates), "boundary_scan", variant);
}

MinCoverageReport grid_oracle_min(const IntervalFamily& family, Variant variant,
                                  double grid_step, double pad) {
  if (!(grid_step > 0.0 && grid_step < 1.0))
    throw std::domain_error("grid_oracle_min: grid_step must be in (0, 1)");
  const auto bps = breakpoints(family);
  double lo = 0.0, hi = 1.0;
  if (!bps.empty()) {
    lo = bps.front().value;
    hi = bps.back().value;
  }

  const bool strict = variant == Variant::Open;
  const bool mono = monotone(family);
  bool have = false;
  double best_val = 1.0, best_p = 0.0;
  AcceptRange best_range{0, family.n};
  const auto record = [&](double c, double p, AcceptRange r) {
    if (!have || c < best_val) {
      have = true;
      best_val = c;
      best_p = p;
      best_range = r;
    }
  };
  const auto consider = [&](double p) {
    if (!(p > 0.0 && p < 1.0)) return;
    if (!bps.empty() && (p < lo || p > hi)) return;
    const AcceptRange r = mono ? acceptance_range(family, p, strict, strict)
                               : AcceptRange{0, family.n};
    record(coverage_at(family, p, variant), p, r);
  };

  for (long long j = 1; j * grid_step < 1.0; ++j) consider(j * grid_step);
  // One-sided limits at each breakpoint: membership is decided at b -+ pad
  // (which side of the jump we are on) while the range probability is
  // evaluated at b itself. Evaluating coverage_at(b - pad) literally would
  // miss the limit by ~pad * slope, far above the agreement tolerances.
  const auto side_limit = [&](double at, double sel_p) {
    if (!(sel_p > 0.0 && sel_p < 1.0)) return;
    if (mono) {
      const AcceptRange r = acceptance_range(family, sel_p, strict, strict);
      record(binom_range_prob(TrialCount(family.n), r.a, r.b, Probability(at)),
             at, r);
      return;
    }
    long double sum = 0.0L;
    for (int k = 0; k <= family.n; ++k) {
      const bool in = strict
                          ? family.lower[k] < sel_p && sel_p < family.upper[k]
                          : family.lower[k] <= sel_p &&
                                sel_p <= family.upper[k];
      if (in)
        sum += expl(static_cast<long double>(
            log_binom_pmf(TrialCount(family.n), k, Probability(at))));
    }
    record(static_cast<double>(std::min(sum, 1.0L)), at,
           AcceptRange{0, family.n});
  };
  for (const Breakpoint& bp : bps) {
    side_limit(bp.value, bp.value - pad);
    side_limit(bp.value, bp.value + pad);
  }

  if (!have) return degenerate_report(family, variant, "grid");
  CandidateEval argmin{-1, Side::Lower, variant, best_p,
                       best_range.a, best_range.b, best_val};
  return MinCoverageReport{best_val, argmin, {argmin}, "grid", variant};
}

MonteCarloResult monte_carlo_coverage(const IntervalFamily& family,
                                      Probability p, long long trials,
                                      std::uint64_t seed, Variant variant) {
  if (trials < 1)
    throw std::domain_error("monte_carlo_coverage: trials must be >= 1");
  std::vector<char> covered(family.n + 1);
  for (int k = 0; k <= family.n; ++k)
    covered[k] = variant == Variant::Open
                     ? family.lower[k] < p.value && p.value < family.upper[k]
                     : family.lower[k] <= p.value && p.value <= family.upper[k];
  std::mt19937_64 gen(seed);
  std::binomial_distribution<int> dist(family.n, p.value);
  long long hits = 0;
  for (long long t = 0; t < trials; ++t) hits += covered[dist(gen)];
  const double est = static_cast<double>(hits) / static_cast<double>(trials);
  const double se = std::sqrt(est * (1.0 - est) / static_cast<double>(trials));
  return MonteCarloResult{est, se};
}

CoverageCurve coverage_curve(const IntervalFamily& family,
                             int samples_per_piece, Variant variant) {
  if (samples_per_piece < 1)
    throw std::domain_error("coverage_curve: samples_per_piece must be >= 1");
  const auto bps = breakpoints(family);
  std::vector<double> bounds;
  bounds.push_back(0.0);
  for (const Breakpoint& bp : bps) bounds.push_back(bp.value);
  bounds.push_back(1.0);
  bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());

  CoverageCurve curve;
  curve.breakpoints = bps;
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    const double v0 = bounds[i], v1 = bounds[i + 1];
    for (int j = 1; j <= samples_per_piece; ++j) {
      const double p = v0 + (v1 - v0) * j / (samples_per_piece + 1);
      if (!(p > v0 && p < v1)) continue;  // piece narrower than double spacing
      curve.samples.push_back(
          {p, coverage_at(family, p, variant), static_cast<int>(i)});
    }
  }
  return curve;
}

}  // namespace binocov
