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

#include "mpfr_oracle.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include <gmp.h>
#include <mpfr.h>

namespace binocov_oracle {
namespace {

constexpr mpfr_prec_t kPrec = 256;

// binom(n,k) * p^k * (1-p)^(n-k) into out.
void pmf_term(mpfr_t out, int n, int k, const mpfr_t p, const mpfr_t q) {
  mpz_t c;
  mpz_init(c);
  mpz_bin_uiui(c, static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  mpfr_t t;
  mpfr_init2(t, kPrec);
  mpfr_pow_ui(out, p, static_cast<unsigned long>(k), MPFR_RNDN);
  mpfr_pow_ui(t, q, static_cast<unsigned long>(n - k), MPFR_RNDN);
  mpfr_mul(out, out, t, MPFR_RNDN);
  mpfr_mul_z(out, out, c, MPFR_RNDN);
  mpfr_clear(t);
  mpz_clear(c);
}

}  // namespace

double oracle_log_binom_pmf(int n, int k, double p) {
  if (n < 1 || k < 0 || k > n || !(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("oracle_log_binom_pmf: bad arguments");
  if (p == 0.0) return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  if (p == 1.0) return k == n ? 0.0 : -std::numeric_limits<double>::infinity();
  mpfr_t mp, mq, term;
  mpfr_inits2(kPrec, mp, mq, term, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_d(mp, p, MPFR_RNDN);
  mpfr_ui_sub(mq, 1, mp, MPFR_RNDN);
  pmf_term(term, n, k, mp, mq);
  mpfr_log(term, term, MPFR_RNDN);
  const double out = mpfr_get_d(term, MPFR_RNDN);
  mpfr_clears(mp, mq, term, static_cast<mpfr_ptr>(nullptr));
  return out;
}

double oracle_binom_range_prob(int n, long long a, long long b, double p) {
  if (n < 1 || !(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("oracle_binom_range_prob: bad arguments");
  a = std::max(a, 0LL);
  b = std::min(b, static_cast<long long>(n));
  if (a > b) return 0.0;
  if (p == 0.0) return a == 0 ? 1.0 : 0.0;
  if (p == 1.0) return b == n ? 1.0 : 0.0;
  mpfr_t mp, mq, term, sum;
  mpfr_inits2(kPrec, mp, mq, term, sum, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_d(mp, p, MPFR_RNDN);
  mpfr_ui_sub(mq, 1, mp, MPFR_RNDN);
  mpfr_set_zero(sum, 1);
  for (long long k = a; k <= b; ++k) {
    pmf_term(term, n, static_cast<int>(k), mp, mq);
    mpfr_add(sum, sum, term, MPFR_RNDN);
  }
  const double out = mpfr_get_d(sum, MPFR_RNDN);
  mpfr_clears(mp, mq, term, sum, static_cast<mpfr_ptr>(nullptr));
  return std::min(out, 1.0);
}

double oracle_normal_upper_tail(double z) {
  // Q(z) = erfc(z / sqrt(2)) / 2.
  mpfr_t t;
  mpfr_init2(t, kPrec);
  mpfr_set_d(t, z, MPFR_RNDN);
  mpfr_sqrt_ui(t, 2, MPFR_RNDN);
  mpfr_t x;
  mpfr_init2(x, kPrec);
  mpfr_set_d(x, z, MPFR_RNDN);
  mpfr_div(x, x, t, MPFR_RNDN);
  mpfr_erfc(x, x, MPFR_RNDN);
  mpfr_div_ui(x, x, 2, MPFR_RNDN);
  const double out = mpfr_get_d(x, MPFR_RNDN);
  mpfr_clears(t, x, static_cast<mpfr_ptr>(nullptr));
  return out;
}

}  // namespace binocov_oracle
