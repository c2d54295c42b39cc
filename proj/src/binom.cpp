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

#include "binocov/binom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace binocov {
namespace {

constexpr int kLogFactTableSize = 4097;

// ln(m!) with an eagerly built long-double table for the common range.
// Magic-static init keeps this safe under concurrent first use.
long double log_factorial(long long m) {
  static const std::vector<long double>* table = [] {
    auto* t = new std::vector<long double>(kLogFactTableSize);
    for (int i = 0; i < kLogFactTableSize; ++i) (*t)[i] = lgammal(i + 1.0L);
    return t;
  }();
  if (m < kLogFactTableSize) return (*table)[static_cast<std::size_t>(m)];
  return lgammal(static_cast<long double>(m) + 1.0L);
}

long double log_pmf_ld(int n, long long k, double p) {
  if (p == 0.0) return k == 0 ? 0.0L : -std::numeric_limits<long double>::infinity();
  if (p == 1.0) return k == n ? 0.0L : -std::numeric_limits<long double>::infinity();
  const long double lp = logl(static_cast<long double>(p));
  const long double lq = log1pl(-static_cast<long double>(p));
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k) +
         static_cast<long double>(k) * lp + static_cast<long double>(n - k) * lq;
}

}  // namespace

double log_binom_pmf(TrialCount n, int k, Probability p) {
  if (k < 0 || k > n.value)
    throw std::domain_error("log_binom_pmf: k out of [0, n]");
  return static_cast<double>(log_pmf_ld(n.value, k, p.value));
}

double binom_range_prob(TrialCount n, long long a, long long b, Probability p) {
  a = std::max<long long>(a, 0);
  b = std::min<long long>(b, n.value);
  if (a > b) return 0.0;

  const double pv = p.value;
  if (pv == 0.0) return a == 0 ? 1.0 : 0.0;
  if (pv == 1.0) return b == n.value ? 1.0 : 0.0;

  // Terms are unimodal in j with the mode near floor((n+1)p); walk outward
  // from the mode, always taking the larger remaining term, so the
  // compensated sum accumulates in descending magnitude.
  long long mode = static_cast<long long>(std::floor((n.value + 1) * pv));
  mode = std::clamp(mode, a, b);

  long double sum = 0.0L, comp = 0.0L;
  const auto add = [&](long double t) {  // Kahan step
    const long double y = t - comp;
    const long double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
  };
  const auto term = [&](long long j) { return expl(log_pmf_ld(n.value, j, pv)); };

  add(term(mode));
  long long lo = mode - 1, hi = mode + 1;
  long double term_lo = lo >= a ? term(lo) : 0.0L;
  long double term_hi = hi <= b ? term(hi) : 0.0L;
  while (lo >= a || hi <= b) {
    if (hi > b || (lo >= a && term_lo >= term_hi)) {
      add(term_lo);
      --lo;
      term_lo = lo >= a ? term(lo) : 0.0L;
    } else {
      add(term_hi);
      ++hi;
      term_hi = hi <= b ? term(hi) : 0.0L;
    }
  }
  return static_cast<double>(std::clamp(sum, 0.0L, 1.0L));
}

double normal_upper_tail(double z) { return 0.5 * std::erfc(z * M_SQRT1_2); }

namespace {

// Rational approximation for the lower-tail inverse normal CDF
// (Acklam's coefficients); relative error ~1.15e-9 before refinement.
double inv_normal_cdf_approx(double u) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  if (u < plow) {
    const double q = std::sqrt(-2.0 * std::log(u));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (u <= 1.0 - plow) {
    const double q = u - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  const double q = std::sqrt(-2.0 * std::log(1.0 - u));
  return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
         ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

}  // namespace

double upper_tail_quantile(double half_delta) {
  if (!(half_delta > 0.0 && half_delta < 0.5))
    throw std::domain_error("upper_tail_quantile: half_delta must be in (0, 0.5)");
  // Upper-tail z is minus the lower-tail quantile of half_delta.
  double z = -inv_normal_cdf_approx(half_delta);
  // One Newton step against the erfc-based CDF: Q'(z) = -phi(z).
  const double phi = std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
  z += (normal_upper_tail(z) - half_delta) / phi;
  return z;
}

}  // namespace binocov
