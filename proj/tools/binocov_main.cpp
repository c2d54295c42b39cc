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
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "binocov/coverage.hpp"

namespace {

using namespace binocov;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitUsage = 64;
constexpr int kExitIo = 74;

constexpr const char* kSchemaVersion = "1.0";

// 17 significant digits: round-trip safe, '.' decimal separator (the process
// never touches the locale).
std::string fdbl(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string jstr(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

const char* side_name(Side s) { return s == Side::Lower ? "lower" : "upper"; }
const char* variant_name(Variant v) {
  return v == Variant::Closed ? "closed" : "open";
}

double eps_from_env() {
  if (const char* e = std::getenv("BINOCOV_EPS_INT")) {
    char* end = nullptr;
    const double v = std::strtod(e, &end);
    if (end != e && v >= 0.0) return v;
  }
  return kDefaultSnapEps;
}

struct CommonArgs {
  int n = 0;
  double delta = 0.0;
  std::string family = "wald";
  std::string variant = "closed";
  std::string method = "auto";
  std::string format = "text";
  double eps_int = eps_from_env();
};

Variant parse_variant(const std::string& v) {
  return v == "open" ? Variant::Open : Variant::Closed;
}

IntervalFamily build_family(const std::string& name, const IntervalSpec& spec) {
  if (name == "wald") return make_wald_family(spec);
  if (name == "wilson") return make_wilson_family(spec);
  if (name == "agresti-coull") return make_agresti_coull_family(spec);
  throw std::domain_error("unknown family: " + name);
}

std::string candidate_json(const CandidateEval& c) {
  std::string s = "{";
  s += "\"k\":" + std::to_string(c.k);
  s += ",\"side\":" + jstr(side_name(c.side));
  s += ",\"p_eval\":" + fdbl(c.p_eval);
  s += ",\"a\":" + std::to_string(c.a);
  s += ",\"b\":" + std::to_string(c.b);
  s += ",\"prob\":" + fdbl(c.prob);
  s += "}";
  return s;
}

std::string envelope(const std::string& command, const std::string& inputs,
                     const std::string& results, const std::string& method,
                     double eps_int_abs, const char* value_is = nullptr) {
  std::string s = "{";
  s += "\"schema_version\":" + jstr(kSchemaVersion);
  s += ",\"command\":" + jstr(command);
  s += ",\"inputs\":" + inputs;
  s += ",\"results\":" + results;
  s += ",\"provenance\":{\"method\":" + jstr(method);
  if (value_is) s += ",\"value_is\":" + jstr(value_is);
  s += ",\"eps_int\":" + fdbl(eps_int_abs);
  s += ",\"tolerances\":{\"quantile_rel\":1e-12,\"range_prob_abs\":1e-13,"
       "\"engine_agreement_abs\":1e-12}}}";
  return s;
}

std::string common_inputs(const CommonArgs& a, const std::string& extra = "") {
  std::string s = "{";
  s += "\"n\":" + std::to_string(a.n);
  s += ",\"delta\":" + fdbl(a.delta);
  s += ",\"family\":" + jstr(a.family);
  s += ",\"variant\":" + jstr(a.variant);
  s += ",\"method\":" + jstr(a.method);
  if (!extra.empty()) s += "," + extra;
  s += "}";
  return s;
}

// Resolves the engine for min-coverage style commands. Returns the report or
// an exit code on precondition failure.
struct MinResult {
  MinCoverageReport report{0.0, std::nullopt, {}, "", Variant::Closed};
  std::string method_used;
  int exit_code = kExitOk;
  std::string error;
};

MinResult run_min(const CommonArgs& a) {
  MinResult res;
  const IntervalSpec spec = make_spec(TrialCount(a.n), a.delta);
  const Variant variant = parse_variant(a.variant);
  std::string method = a.method;
  if (method == "auto")
    method = (a.family == "wald" && spec.theorem_valid) ? "theorem1"
                                                        : "boundary-scan";
  if (method == "theorem1") {
    if (a.family != "wald") {
      res.exit_code = kExitUsage;
      res.error = "--method theorem1 requires --family wald";
      return res;
    }
    if (!spec.theorem_valid) {
      res.exit_code = kExitPrecondition;
      res.error = "theorem1 unavailable: theta = " + fdbl(spec.theta) +
                  " >= 3; requires n > Z^2_{delta/2}/3 = " +
                  fdbl(spec.z * spec.z / 3.0);
      return res;
    }
    res.report = min_coverage_theorem1(spec, variant, a.eps_int);
  } else {
    const IntervalFamily fam = build_family(a.family, spec);
    try {
      res.report = min_coverage_boundary_scan(fam, variant);
    } catch (const std::invalid_argument& e) {
      res.exit_code = kExitPrecondition;
      res.error = e.what();
      return res;
    }
  }
  res.method_used = method;
  return res;
}

int write_or_fail(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open for writing: " << path << "\n";
    return kExitIo;
  }
  out << content;
  out.flush();
  if (!out) {
    std::cerr << "error: write failed: " << path << "\n";
    return kExitIo;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- commands

int cmd_min_coverage(const CommonArgs& a) {
  MinResult r = run_min(a);
  if (r.exit_code != kExitOk) {
    std::cerr << "error: " << r.error << "\n";
    return r.exit_code;
  }
  const auto& rep = r.report;
  const char* value_is =
      parse_variant(a.variant) == Variant::Closed ? "infimum" : "minimum";
  if (a.format == "json") {
    std::string results = "{\"value\":" + fdbl(rep.value) + ",\"argmin\":";
    results += rep.argmin ? candidate_json(*rep.argmin) : std::string("null");
    results +=
        ",\"candidate_count\":" + std::to_string(rep.candidates.size()) + "}";
    std::cout << envelope("min-coverage", common_inputs(a), results,
                          r.method_used, a.eps_int * a.n, value_is)
              << "\n";
  } else if (a.format == "csv") {
    std::cout << "n,delta,family,variant,method,value,argmin_k,argmin_side,"
                 "argmin_p,a,b,candidates\n";
    std::cout << a.n << "," << fdbl(a.delta) << "," << a.family << ","
              << a.variant << "," << r.method_used << "," << fdbl(rep.value);
    if (rep.argmin)
      std::cout << "," << rep.argmin->k << "," << side_name(rep.argmin->side)
                << "," << fdbl(rep.argmin->p_eval) << "," << rep.argmin->a
                << "," << rep.argmin->b;
    else
      std::cout << ",,,,,";
    std::cout << "," << rep.candidates.size() << "\n";
  } else {
    std::cout << "minimum coverage (" << a.variant << ", " << value_is
              << "): " << fdbl(rep.value) << "\n";
    std::cout << "method: " << r.method_used << "\n";
    if (rep.argmin)
      std::cout << "argmin: k=" << rep.argmin->k
                << " side=" << side_name(rep.argmin->side)
                << " p=" << fdbl(rep.argmin->p_eval) << " range=["
                << rep.argmin->a << "," << rep.argmin->b << "]\n";
    else
      std::cout << "argmin: none (no breakpoint inside (0,1); value is the "
                   "endpoint limit)\n";
    std::cout << "candidates: " << rep.candidates.size() << "\n";
  }
  return kExitOk;
}

int cmd_coverage(const CommonArgs& a, double p) {
  if (!(p > 0.0 && p < 1.0)) {
    std::cerr << "error: --p must be in (0, 1)\n";
    return kExitUsage;
  }
  const IntervalSpec spec = make_spec(TrialCount(a.n), a.delta);
  const IntervalFamily fam = build_family(a.family, spec);
  const Variant variant = parse_variant(a.variant);
  const double cov = coverage_at(fam, p, variant);
  const bool strict = variant == Variant::Open;
  AcceptRange range{0, fam.n};
  if (fam.monotone_lower && fam.monotone_upper)
    range = acceptance_range(fam, p, strict, strict);
  if (a.format == "json") {
    std::string results = "{\"p\":" + fdbl(p) + ",\"coverage\":" + fdbl(cov) +
                          ",\"acceptance\":{\"a\":" + std::to_string(range.a) +
                          ",\"b\":" + std::to_string(range.b) + "}}";
    std::cout << envelope("coverage", common_inputs(a, "\"p\":" + fdbl(p)),
                          results, "direct", a.eps_int * a.n)
              << "\n";
  } else if (a.format == "csv") {
    std::cout << "n,delta,family,variant,p,coverage,a,b\n";
    std::cout << a.n << "," << fdbl(a.delta) << "," << a.family << ","
              << a.variant << "," << fdbl(p) << "," << fdbl(cov) << ","
              << range.a << "," << range.b << "\n";
  } else {
    std::cout << "coverage at p=" << fdbl(p) << " (" << a.variant
              << "): " << fdbl(cov) << "\n";
    std::cout << "acceptance counts: [" << range.a << "," << range.b << "]\n";
  }
  return kExitOk;
}

int cmd_curve(const CommonArgs& a, int samples_per_piece,
              const std::string& out_path) {
  const IntervalSpec spec = make_spec(TrialCount(a.n), a.delta);
  const IntervalFamily fam = build_family(a.family, spec);
  const CoverageCurve curve =
      coverage_curve(fam, samples_per_piece, parse_variant(a.variant));

  if (a.format == "json") {
    std::string samples = "[";
    for (std::size_t i = 0; i < curve.samples.size(); ++i) {
      const auto& s = curve.samples[i];
      if (i) samples += ",";
      samples += "{\"p\":" + fdbl(s.p) + ",\"coverage\":" + fdbl(s.coverage) +
                 ",\"piece_index\":" + std::to_string(s.piece_index) + "}";
    }
    samples += "]";
    std::string bps = "[";
    for (std::size_t i = 0; i < curve.breakpoints.size(); ++i) {
      const auto& b = curve.breakpoints[i];
      if (i) bps += ",";
      bps += "{\"p\":" + fdbl(b.value) + ",\"k\":" + std::to_string(b.k) +
             ",\"side\":" + jstr(side_name(b.side)) + "}";
    }
    bps += "]";
    const std::string results =
        "{\"samples\":" + samples + ",\"breakpoints\":" + bps + "}";
    const std::string doc =
        envelope("curve", common_inputs(a, "\"samples_per_piece\":" +
                                               std::to_string(samples_per_piece)),
                 results, "direct", a.eps_int * a.n) +
        "\n";
    return write_or_fail(out_path, doc);
  }

  std::string csv = "p,coverage,piece_index\n";
  for (const auto& s : curve.samples)
    csv += fdbl(s.p) + "," + fdbl(s.coverage) + "," +
           std::to_string(s.piece_index) + "\n";
  std::string bcsv = "p,k,side\n";
  for (const auto& b : curve.breakpoints)
    bcsv += fdbl(b.value) + "," + std::to_string(b.k) + "," +
            side_name(b.side) + "\n";

  std::string bpath = out_path;
  const auto dot = bpath.rfind(".csv");
  if (dot != std::string::npos && dot == bpath.size() - 4)
    bpath = bpath.substr(0, dot) + ".breakpoints.csv";
  else
    bpath += ".breakpoints.csv";
  if (int rc = write_or_fail(out_path, csv); rc != kExitOk) return rc;
  return write_or_fail(bpath, bcsv);
}

int cmd_candidates(const CommonArgs& a) {
  const IntervalSpec spec = make_spec(TrialCount(a.n), a.delta);
  if (!spec.theorem_valid) {
    std::cerr << "error: theta = " << fdbl(spec.theta)
              << " >= 3; requires n > Z^2_{delta/2}/3 = "
              << fdbl(spec.z * spec.z / 3.0) << "\n";
    return kExitPrecondition;
  }
  const Variant variant = parse_variant(a.variant);
  const MinCoverageReport rep =
      min_coverage_theorem1(spec, variant, a.eps_int);
  const auto is_min = [&](const CandidateEval& c) {
    return rep.argmin && c.k == rep.argmin->k && c.side == rep.argmin->side;
  };
  if (a.format == "json") {
    std::string rows = "[";
    for (std::size_t i = 0; i < rep.candidates.size(); ++i) {
      const auto& c = rep.candidates[i];
      if (i) rows += ",";
      std::string cj = candidate_json(c);
      cj.back() = ',';  // replace closing brace
      cj += std::string("\"is_min\":") + (is_min(c) ? "true" : "false") + "}";
      rows += cj;
    }
    rows += "]";
    const std::string results = "{\"theta\":" + fdbl(spec.theta) +
                                ",\"value\":" + fdbl(rep.value) +
                                ",\"rows\":" + rows + "}";
    std::cout << envelope("candidates", common_inputs(a), results, "theorem1",
                          a.eps_int * a.n)
              << "\n";
  } else if (a.format == "csv") {
    std::cout << "k,side,p_eval,a,b,prob,is_min\n";
    for (const auto& c : rep.candidates)
      std::cout << c.k << "," << side_name(c.side) << "," << fdbl(c.p_eval)
                << "," << c.a << "," << c.b << "," << fdbl(c.prob) << ","
                << (is_min(c) ? 1 : 0) << "\n";
  } else {
    std::cout << "theorem candidates, n=" << a.n << " delta=" << fdbl(a.delta)
              << " variant=" << a.variant << " (theta=" << fdbl(spec.theta)
              << ")\n";
    for (const auto& c : rep.candidates)
      std::cout << (is_min(c) ? "* " : "  ") << "k=" << c.k
                << " side=" << side_name(c.side) << " p=" << fdbl(c.p_eval)
                << " range=[" << c.a << "," << c.b
                << "] prob=" << fdbl(c.prob) << "\n";
    std::cout << "minimum: " << fdbl(rep.value) << "\n";
  }
  return kExitOk;
}

int cmd_sweep(const CommonArgs& a, int n_min, int n_max) {
  if (!(n_min >= 2 && n_min <= n_max)) {
    std::cerr << "error: require 2 <= n-min <= n-max\n";
    return kExitUsage;
  }
  struct Row {
    int n;
    MinCoverageReport rep{0.0, std::nullopt, {}, "", Variant::Closed};
    std::string method;
  };
  std::vector<Row> rows;
  for (int n = n_min; n <= n_max; ++n) {
    CommonArgs an = a;
    an.n = n;
    MinResult r = run_min(an);
    if (r.exit_code == kExitPrecondition && a.method == "theorem1") {
      // Theorem path unavailable for this n; fall back and note it.
      an.method = "boundary-scan";
      r = run_min(an);
      r.method_used = "boundary-scan(fallback)";
    }
    if (r.exit_code != kExitOk) {
      std::cerr << "error at n=" << n << ": " << r.error << "\n";
      return r.exit_code;
    }
    rows.push_back({n, std::move(r.report), r.method_used});
  }

  if (a.format == "json") {
    std::string rj = "[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      if (i) rj += ",";
      rj += "{\"n\":" + std::to_string(r.n) +
            ",\"min_coverage\":" + fdbl(r.rep.value) + ",\"argmin_k\":";
      rj += r.rep.argmin ? std::to_string(r.rep.argmin->k) : std::string("null");
      rj += ",\"argmin_side\":";
      rj += r.rep.argmin ? jstr(side_name(r.rep.argmin->side))
                         : std::string("null");
      rj += ",\"method\":" + jstr(r.method) + "}";
    }
    rj += "]";
    const std::string inputs =
        common_inputs(a, "\"n_min\":" + std::to_string(n_min) +
                             ",\"n_max\":" + std::to_string(n_max));
    std::cout << envelope("sweep", inputs, "{\"rows\":" + rj + "}", a.method,
                          0.0)
              << "\n";
  } else if (a.format == "csv") {
    std::cout << "n,min_coverage,argmin_k,argmin_side,method\n";
    for (const auto& r : rows) {
      std::cout << r.n << "," << fdbl(r.rep.value) << ",";
      if (r.rep.argmin)
        std::cout << r.rep.argmin->k << "," << side_name(r.rep.argmin->side);
      else
        std::cout << ",";
      std::cout << "," << r.method << "\n";
    }
  } else {
    for (const auto& r : rows) {
      std::cout << "n=" << r.n << " min=" << fdbl(r.rep.value);
      if (r.rep.argmin)
        std::cout << " argmin k=" << r.rep.argmin->k << " "
                  << side_name(r.rep.argmin->side);
      std::cout << " (" << r.method << ")\n";
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------- verify

struct Suite {
  std::string name;
  long long checks = 0;
  long long failures = 0;
  std::string first_counterexample;

  void check(bool ok, const std::string& detail) {
    ++checks;
    if (!ok) {
      ++failures;
      if (first_counterexample.empty()) first_counterexample = detail;
    }
  }
};

int cmd_verify(const CommonArgs& a, int n_max, std::vector<double> deltas,
               std::uint64_t seed) {
  if (deltas.empty()) deltas = {0.1, 0.05, 0.01};
  Suite lemma{"lemma1-monotonicity"};
  Suite agree{"theorem-scan-agreement"};
  Suite ordering{"open-le-closed"};
  Suite roots{"root-identities"};
  Suite snaps{"candidate-snap-identity"};
  Suite symmetry{"coverage-symmetry"};
  Suite mc{"monte-carlo-consistency"};

  for (double delta : deltas) {
    for (int n = 1; n <= n_max; ++n) {
      const IntervalSpec spec = make_spec(TrialCount(n), delta);
      if (!spec.theorem_valid) continue;
      const IntervalFamily fam = make_wald_family(spec);
      const auto mono = verify_monotone(fam);
      lemma.check(mono.ok, "n=" + std::to_string(n) + " delta=" + fdbl(delta) +
                               " first violation k=" +
                               std::to_string(mono.first_violation));

      for (int k = 0; k <= n; ++k) {
        const double lk = wald_lower(spec, k);
        const double uk = wald_upper(spec, k);
        if (lk > 0.0 && lk < 1.0) {
          const double tp = t_plus_count(spec, lk);
          roots.check(std::abs(tp - k) <= 1e-8 * n,
                      "t_plus(L(k)) n=" + std::to_string(n) +
                          " k=" + std::to_string(k) + " got " + fdbl(tp));
          const double r = std::nearbyint(tp);
          const bool snapped =
              std::abs(tp - r) <= a.eps_int * n && r == static_cast<double>(k);
          snaps.check(snapped, "snap(t_plus(L(k))) != k at n=" +
                                   std::to_string(n) + " k=" +
                                   std::to_string(k) + " (eps_int=" +
                                   fdbl(a.eps_int * n) + ")");
        }
        if (uk > 0.0 && uk < 1.0) {
          const double tm = t_minus_count(spec, uk);
          roots.check(std::abs(tm - k) <= 1e-8 * n,
                      "t_minus(U(k)) n=" + std::to_string(n) +
                          " k=" + std::to_string(k) + " got " + fdbl(tm));
        }
      }

      if (n < 2) continue;
      double mins[2] = {0.0, 0.0};
      for (Variant variant : {Variant::Closed, Variant::Open}) {
        const auto t = min_coverage_theorem1(spec, variant, a.eps_int);
        const auto s = min_coverage_boundary_scan(fam, variant);
        agree.check(std::abs(t.value - s.value) <= 1e-12,
                    "n=" + std::to_string(n) + " delta=" + fdbl(delta) +
                        " variant=" + variant_name(variant) + " theorem=" +
                        fdbl(t.value) + " scan=" + fdbl(s.value));
        mins[variant == Variant::Open ? 1 : 0] = t.value;
      }
      ordering.check(mins[1] <= mins[0],
                     "open > closed at n=" + std::to_string(n) +
                         " delta=" + fdbl(delta));
    }
  }

  // Symmetry of Wald coverage about p = 1/2.
  for (double delta : deltas) {
    for (int n : {2, 5, 10, 37, 100}) {
      if (n > n_max) continue;
      const IntervalSpec spec = make_spec(TrialCount(n), delta);
      if (!spec.theorem_valid) continue;
      const IntervalFamily fam = make_wald_family(spec);
      for (double p : {0.07, 0.23, 0.4, 0.49}) {
        for (Variant variant : {Variant::Closed, Variant::Open}) {
          const double c1 = coverage_at(fam, p, variant);
          const double c2 = coverage_at(fam, 1.0 - p, variant);
          symmetry.check(std::abs(c1 - c2) <= 1e-12,
                         "n=" + std::to_string(n) + " p=" + fdbl(p) +
                             " diff=" + fdbl(c1 - c2));
        }
      }
    }
  }

  // Seeded Monte Carlo versus exact coverage.
  {
    std::mt19937_64 gen(seed);
    std::uniform_int_distribution<int> pick_n(2, std::min(n_max, 200));
    std::uniform_real_distribution<double> pick_p(0.05, 0.95);
    const long long trials = 200000;
    for (int i = 0; i < 6; ++i) {
      const int n = pick_n(gen);
      const double delta = deltas[i % deltas.size()];
      const double p = pick_p(gen);
      const IntervalSpec spec = make_spec(TrialCount(n), delta);
      const IntervalFamily fam = make_wald_family(spec);
      const auto est = monte_carlo_coverage(fam, Probability(p), trials,
                                            gen(), Variant::Closed);
      const double exact = coverage_at(fam, p, Variant::Closed);
      const double tol = 4.0 * std::max(est.std_error, 1e-9);
      mc.check(std::abs(est.estimate - exact) <= tol,
               "n=" + std::to_string(n) + " p=" + fdbl(p) + " est=" +
                   fdbl(est.estimate) + " exact=" + fdbl(exact));
    }
  }

  const Suite* suites[] = {&lemma, &agree, &ordering, &roots,
                           &snaps, &symmetry, &mc};
  bool all_pass = true;
  if (a.format == "json") {
    std::string sj = "[";
    bool first = true;
    for (const Suite* s : suites) {
      if (!first) sj += ",";
      first = false;
      sj += "{\"name\":" + jstr(s->name) +
            ",\"checks\":" + std::to_string(s->checks) +
            ",\"failures\":" + std::to_string(s->failures) +
            ",\"first_counterexample\":" + jstr(s->first_counterexample) + "}";
      if (s->failures > 0) all_pass = false;
    }
    sj += "]";
    std::string deltas_j = "[";
    for (std::size_t i = 0; i < deltas.size(); ++i)
      deltas_j += (i ? "," : "") + fdbl(deltas[i]);
    deltas_j += "]";
    const std::string inputs = "{\"n_max\":" + std::to_string(n_max) +
                               ",\"deltas\":" + deltas_j +
                               ",\"seed\":" + std::to_string(seed) + "}";
    const std::string results =
        std::string("{\"suites\":") + sj +
        ",\"all_pass\":" + (all_pass ? "true" : "false") + "}";
    std::cout << envelope("verify", inputs, results, "verify",
                          a.eps_int * n_max)
              << "\n";
  } else {
    for (const Suite* s : suites) {
      if (s->failures > 0) all_pass = false;
      std::cout << (s->failures == 0 ? "PASS " : "FAIL ") << s->name
                << " checks=" << s->checks << " failures=" << s->failures;
      if (!s->first_counterexample.empty())
        std::cout << " first: " << s->first_counterexample;
      std::cout << "\n";
    }
    std::cout << (all_pass ? "all suites passed\n" : "verification FAILED\n");
  }
  return all_pass ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact coverage analysis of binomial-proportion confidence "
               "intervals (Wald, Wilson, Agresti-Coull)"};
  app.require_subcommand(1);

  CommonArgs args;
  double p_value = 0.5;
  int samples_per_piece = 16;
  std::string out_path;
  int n_min = 2, n_max_sweep = 2;
  int verify_n_max = 300;
  std::string deltas_csv = "0.1,0.05,0.01";
  std::uint64_t seed = 20080401;

  const auto add_common = [&](CLI::App* sub, bool with_method) {
    sub->add_option("--n", args.n, "number of trials")->required();
    sub->add_option("--delta", args.delta, "nominal non-coverage level")
        ->required();
    sub->add_option("--family", args.family, "interval family")
        ->check(CLI::IsMember({"wald", "wilson", "agresti-coull"}))
        ->capture_default_str();
    sub->add_option("--variant", args.variant, "endpoint rule")
        ->check(CLI::IsMember({"closed", "open"}))
        ->capture_default_str();
    if (with_method)
      sub->add_option("--method", args.method, "engine selection")
          ->check(CLI::IsMember({"auto", "theorem1", "boundary-scan"}))
          ->capture_default_str();
    sub->add_option("--format", args.format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    sub->add_option("--eps-int", args.eps_int,
                    "integer-snap tolerance coefficient (eps_int = value*n)")
        ->capture_default_str();
  };

  auto* mc = app.add_subcommand("min-coverage",
                                "exact minimum coverage probability");
  add_common(mc, true);

  auto* cov = app.add_subcommand("coverage", "coverage probability at p");
  add_common(cov, false);
  cov->add_option("--p", p_value, "evaluation point in (0,1)")->required();

  auto* curve = app.add_subcommand("curve", "piecewise coverage curve export");
  add_common(curve, false);
  curve->add_option("--samples-per-piece", samples_per_piece,
                    "interior samples per piece")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  curve->add_option("--out", out_path, "output file path")->required();

  auto* cand = app.add_subcommand("candidates", "theorem candidate table");
  add_common(cand, false);

  auto* sweep = app.add_subcommand("sweep", "minimum coverage for a range of n");
  sweep->add_option("--n-min", n_min, "first n")->required();
  sweep->add_option("--n-max", n_max_sweep, "last n")->required();
  sweep->add_option("--delta", args.delta, "nominal non-coverage level")
      ->required();
  sweep->add_option("--family", args.family, "interval family")
      ->check(CLI::IsMember({"wald", "wilson", "agresti-coull"}))
      ->capture_default_str();
  sweep->add_option("--variant", args.variant, "endpoint rule")
      ->check(CLI::IsMember({"closed", "open"}))
      ->capture_default_str();
  sweep->add_option("--method", args.method, "engine selection")
      ->check(CLI::IsMember({"auto", "theorem1", "boundary-scan"}))
      ->capture_default_str();
  sweep->add_option("--format", args.format, "output format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  sweep->add_option("--eps-int", args.eps_int,
                    "integer-snap tolerance coefficient")
      ->capture_default_str();

  auto* verify = app.add_subcommand("verify", "run the invariant self-tests");
  verify->add_option("--n-max", verify_n_max, "largest n to test")
      ->capture_default_str();
  verify->add_option("--deltas", deltas_csv, "comma-separated delta list")
      ->capture_default_str();
  verify->add_option("--seed", seed, "Monte Carlo seed")->capture_default_str();
  verify->add_option("--format", args.format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  verify->add_option("--eps-int", args.eps_int,
                     "integer-snap tolerance coefficient")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (mc->parsed()) return cmd_min_coverage(args);
    if (cov->parsed()) return cmd_coverage(args, p_value);
    if (curve->parsed()) return cmd_curve(args, samples_per_piece, out_path);
    if (cand->parsed()) return cmd_candidates(args);
    if (sweep->parsed()) return cmd_sweep(args, n_min, n_max_sweep);
    if (verify->parsed()) {
      std::vector<double> deltas;
      std::stringstream ss(deltas_csv);
      std::string tok;
      while (std::getline(ss, tok, ',')) deltas.push_back(std::stod(tok));
      return cmd_verify(args, verify_n_max, deltas, seed);
    }
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  }
  return kExitUsage;
}
