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

#include <cmath>
#include <random>

#include <doctest.h>

#include "binocov/binom.hpp"

using namespace binocov;

TEST_CASE("domain types reject invalid values") {
  CHECK_THROWS_AS(TrialCount(0), std::domain_error);
  CHECK_THROWS_AS(Probability(-0.1), std::domain_error);
  CHECK_THROWS_AS(Probability(1.5), std::domain_error);
  CHECK_THROWS_AS(Probability(std::nan("")), std::domain_error);
  CHECK(Probability(0.0).value == 0.0);
  CHECK(Probability(1.0).value == 1.0);
}

TEST_CASE("log_binom_pmf basics and degenerate endpoints") {
  CHECK(log_binom_pmf(TrialCount(1), 1, Probability(0.5)) ==
        doctest::Approx(std::log(0.5)).epsilon(1e-15));
  CHECK(log_binom_pmf(TrialCount(5), 0, Probability(0.0)) == 0.0);
  CHECK(log_binom_pmf(TrialCount(5), 3, Probability(0.0)) ==
        -std::numeric_limits<double>::infinity());
  CHECK(log_binom_pmf(TrialCount(5), 5, Probability(1.0)) == 0.0);
  CHECK(log_binom_pmf(TrialCount(5), 2, Probability(1.0)) ==
        -std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(log_binom_pmf(TrialCount(5), 6, Probability(0.5)),
                  std::domain_error);
  CHECK_THROWS_AS(log_binom_pmf(TrialCount(5), -1, Probability(0.5)),
                  std::domain_error);
  // 50-digit reference value.
  const double ref = -1.8062926549204250303;
  const double got = log_binom_pmf(TrialCount(20), 7, Probability(0.3));
  CHECK(std::abs(got - ref) <= 1e-13 * std::abs(ref));
}

TEST_CASE("binom_range_prob basics") {
  CHECK(binom_range_prob(TrialCount(10), 0, 10, Probability(0.37)) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(binom_range_prob(TrialCount(10), 5, 3, Probability(0.5)) == 0.0);
  CHECK(binom_range_prob(TrialCount(2), 1, 1, Probability(0.5)) ==
        doctest::Approx(0.5).epsilon(1e-15));
  // Clamping: out-of-range ends are harmless.
  CHECK(binom_range_prob(TrialCount(10), -5, 20, Probability(0.2)) ==
        doctest::Approx(1.0).epsilon(1e-14));
  // 50-digit reference value.
  CHECK(std::abs(binom_range_prob(TrialCount(50), 10, 30, Probability(0.4)) -
                 0.9978689417250752126) <= 1e-13);
}

TEST_CASE("pmf sums to one and range-prob identities") {
  std::mt19937_64 gen(1234);
  std::uniform_int_distribution<int> pick_n(1, 400);
  std::uniform_real_distribution<double> pick_p(0.0, 1.0);
  for (int rep = 0; rep < 50; ++rep) {
    const TrialCount n(pick_n(gen));
    const Probability p(pick_p(gen));
    long double total = 0.0L;
    for (int k = 0; k <= n.value; ++k)
      total += expl(static_cast<long double>(log_binom_pmf(n, k, p)));
    CHECK(std::abs(static_cast<double>(total) - 1.0) <= 1e-12);

    std::uniform_int_distribution<int> pick_k(0, n.value);
    int a = pick_k(gen), b = pick_k(gen);
    if (a > b) std::swap(a, b);
    const double full = binom_range_prob(n, a, b, p);
    const double prefix = binom_range_prob(n, 0, b, p) -
                          binom_range_prob(n, 0, a - 1, p);
    CHECK(std::abs(full - prefix) <= 1e-12);
    // Reflection symmetry k -> n-k, p -> 1-p.
    const double mirrored =
        binom_range_prob(n, n.value - b, n.value - a, Probability(1.0 - p.value));
    CHECK(std::abs(full - mirrored) <= 1e-12);
  }
}

TEST_CASE("upper_tail_quantile reference values and round trip") {
  CHECK(std::abs(upper_tail_quantile(0.025) - 1.959963984540054) <=
        1e-12 * 1.96);
  CHECK(std::abs(upper_tail_quantile(0.005) - 2.575829303548901) <=
        1e-12 * 2.58);
  CHECK_THROWS_AS(upper_tail_quantile(0.0), std::domain_error);
  CHECK_THROWS_AS(upper_tail_quantile(0.5), std::domain_error);
  CHECK_THROWS_AS(upper_tail_quantile(-0.1), std::domain_error);

  for (const double h : {1e-6, 1e-3, 0.025, 0.1, 0.25}) {
    const double z = upper_tail_quantile(h);
    CHECK(std::abs(normal_upper_tail(z) - h) <= 1e-11 * h);
  }
  // Monotone decreasing toward 0+ as half_delta -> 0.5-.
  CHECK(upper_tail_quantile(0.49999) > 0.0);
  CHECK(upper_tail_quantile(0.49999) < 1e-3);
  CHECK(upper_tail_quantile(0.1) > upper_tail_quantile(0.2));
}
