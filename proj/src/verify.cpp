#include "quota/verify.hpp"

#include <cmath>
#include <sstream>

#include "quota/analysis.hpp"
#include "quota/bernoulli_model.hpp"
#include "quota/homology_oracle.hpp"

namespace quota {

bool VerifyReport::ok() const noexcept {
  for (const SuiteResult& s : suites)
    if (!s.passed) return false;
  return true;
}

std::string VerifyReport::first_failure() const {
  for (const SuiteResult& s : suites)
    if (!s.passed) return s.name + ": " + s.detail;
  return {};
}

QuotaSystem random_quota_system(SplitMix64& rng, int max_vertices, int max_weight,
                                long long max_quota) {
  const int n = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_vertices)));
  std::vector<Rational> weights;
  weights.reserve(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v)
    weights.emplace_back(1 + static_cast<long long>(rng.next_below(static_cast<std::uint64_t>(max_weight))));
  const long long quota =
      2 + static_cast<long long>(rng.next_below(static_cast<std::uint64_t>(max_quota - 1)));
  return QuotaSystem(std::move(weights), Rational(quota));
}

namespace {

std::string describe_system(const QuotaSystem& system) {
  std::ostringstream os;
  os << "weights (";
  for (int v = 0; v < system.vertex_count(); ++v) {
    if (v) os << ',';
    os << system.weight(v);
  }
  os << "), q=" << system.quota();
  return os.str();
}

// Counting theorem vs boundary-rank homology, plus dd = 0 and the reduced
// Euler characteristic, on randomly generated systems.
SuiteResult counting_vs_homology(int target_systems, int max_vertices) {
  SuiteResult result{"counting-vs-homology", true, ""};
  SplitMix64 rng(0x5eed0001ULL);
  int checked = 0;
  while (checked < target_systems) {
    const QuotaSystem system = random_quota_system(rng, max_vertices, 8, 20);
    if (!(system.weight(system.min_weight_vertex()) < system.quota())) continue;
    ++checked;
    const ExplicitComplex complex = build_complex(system);
    const BettiVector counted = betti_by_counting(system);
    const BettiVector ranked = reduced_betti(complex);
    if (!(counted == ranked)) {
      result.passed = false;
      result.detail = describe_system(system) + ": counting " + to_string(counted) +
                      " != homology " + to_string(ranked);
      return result;
    }
    // dd = 0 for every consecutive pair, including the augmentation.
    for (int m = 1; m <= complex.top_dim(); ++m) {
      const BoundaryMatrix upper = boundary_matrix(complex, m);
      const BoundaryMatrix lower = boundary_matrix(complex, m - 1);
      for (std::size_t i = 0; i < lower.rows; ++i)
        for (std::size_t j = 0; j < upper.cols; ++j) {
          long long dot = 0;
          for (std::size_t k = 0; k < upper.rows; ++k)
            dot += static_cast<long long>(lower.at(i, k)) * upper.at(k, j);
          if (dot != 0) {
            result.passed = false;
            result.detail = describe_system(system) + ": d_" + std::to_string(m - 1) + " * d_" +
                            std::to_string(m) + " != 0";
            return result;
          }
        }
    }
    // Reduced Euler characteristic from chain dims must match the Betti sum.
    long long chain_alt = -1, betti_alt = 0;
    for (int m = 0; m <= complex.top_dim(); ++m)
      chain_alt += (m % 2 == 0 ? 1 : -1) * complex.chain_dim(m);
    for (std::size_t m = 0; m < ranked.values.size(); ++m)
      betti_alt += (m % 2 == 0 ? 1 : -1) * ranked.values[m];
    if (chain_alt != betti_alt) {
      result.passed = false;
      result.detail = describe_system(system) + ": Euler characteristic mismatch";
      return result;
    }
  }
  result.detail = std::to_string(checked) + " random systems (<= " +
                  std::to_string(max_vertices) + " vertices)";
  return result;
}

SuiteResult formula_vs_enumeration(int max_n, const std::vector<std::pair<int, int>>& p_tenths) {
  SuiteResult result{"expectation-formula-vs-enumeration", true, ""};
  long long cases = 0;
  for (int n = 2; n <= max_n; ++n) {
    for (long long q = 3; q <= n + 1; ++q) {
      for (auto [num, den] : p_tenths) {
        const Rational p_exact(num, den);
        const double p = static_cast<double>(num) / static_cast<double>(den);
        for (int m = -1; m <= n + 1; ++m) {
          const double closed = expected_betti(BernoulliParams(n, q, p), m);
          const double enumerated = to_double(exact_expectation_by_enumeration(n, q, p_exact, m));
          ++cases;
          if (std::abs(closed - enumerated) > 1e-12 * std::max(1.0, enumerated)) {
            std::ostringstream os;
            os << "N=" << n << " q=" << q << " p=" << p << " m=" << m << ": closed " << closed
               << " vs enumeration " << enumerated;
            result.passed = false;
            result.detail = os.str();
            return result;
          }
        }
      }
    }
  }
  result.detail = std::to_string(cases) + " (N,q,p,m) cases, N <= " + std::to_string(max_n);
  return result;
}

SuiteResult quotient_identities() {
  SuiteResult result{"forward-quotient-identities", true, ""};
  const std::pair<int, long long> shapes[] = {{17, 9}, {20, 11}, {39, 40}, {59, 40}, {90, 61}};
  const double ps[] = {0.2, 0.5, 0.8};
  long long cases = 0;
  for (auto [n, q] : shapes) {
    const SupportRange support = support_range(n, q);
    for (double p : ps) {
      const Rational p_exact = rational_from_double(p);
      Rational prev = exact_expected_betti(n, q, p_exact, support.lo);
      for (int m = support.lo + 1; m <= support.hi; ++m) {
        const Rational current = exact_expected_betti(n, q, p_exact, m);
        const Rational m1 = forward_quotient_1_exact(n, q, p_exact, m);
        ++cases;
        if (m1 * prev != current) {
          result.passed = false;
          result.detail = "M1 != expectation ratio at N=" + std::to_string(n) +
                          " q=" + std::to_string(q) + " m=" + std::to_string(m);
          return result;
        }
        if (m >= support.lo + 2) {
          const Rational m2 = forward_quotient_2_exact(n, q, m);
          if (m2 * forward_quotient_1_exact(n, q, p_exact, m - 1) != m1 || !(m2 < 1)) {
            result.passed = false;
            result.detail = "M2 identity failed at N=" + std::to_string(n) +
                            " q=" + std::to_string(q) + " m=" + std::to_string(m);
            return result;
          }
        }
        prev = current;
      }
    }
  }
  result.detail = std::to_string(cases) + " interior support points";
  return result;
}

SuiteResult root_identities(int grid) {
  SuiteResult result{"peak-quadratic-roots", true, ""};
  for (int i = 1; i < grid; ++i) {
    const double p = static_cast<double>(i) / grid;
    for (int j = 1; j <= grid; ++j) {
      const double d = 0.5 + 1.5 * static_cast<double>(j) / grid;
      const double pbar2 = (1.0 - p) * (1.0 - p);
      if (std::abs(quadratic_T(1.0, p, d) + p) > 1e-12 ||
          std::abs(quadratic_T(0.5, p, d) - 0.5 * pbar2 * (d - 0.5)) > 1e-12) {
        result.passed = false;
        result.detail = "endpoint identity failed at p=" + std::to_string(p) +
                        " d=" + std::to_string(d);
        return result;
      }
      const PeakSolution peak = solve_tau_infinity(p, d);  // validates T(tau)~0 and the range
      const BoundConstants bc = bound_constants(p, d, peak.tau_infinity);
      if (std::abs(bc.c2 - bc.c1 - 1.0 / peak.tau_infinity) > 1e-10) {
        result.passed = false;
        result.detail = "c2 - c1 != 1/tau at p=" + std::to_string(p) + " d=" + std::to_string(d);
        return result;
      }
    }
  }
  result.detail = std::to_string((grid - 1) * grid) + " (p,d) grid points";
  return result;
}

SuiteResult sandwich_bounds(int max_n, long long max_q) {
  // The q-denominator upper bound printed in the source material fails on
  // parts of this grid, so the grid sweep uses the proof-exact k-denominator
  // form; the q-form is spot-checked where it does hold.
  SuiteResult result{"sandwich-bounds-proof-exact", true, ""};
  long long cases = 0;
  for (int n = 2; n <= max_n; n += 2) {
    for (long long q = 3; q <= max_q; ++q) {
      const SupportRange support = support_range(n, q);
      for (double p : {0.2, 0.5, 0.8}) {
        const BernoulliParams params(n, q, p);
        for (int m = support.lo; m <= support.hi; ++m) {
          ++cases;
          if (!sandwich_check_proven(params, m)) {
            result.passed = false;
            result.detail = "proof-exact sandwich failed at N=" + std::to_string(n) +
                            " q=" + std::to_string(q) + " p=" + std::to_string(p) +
                            " m=" + std::to_string(m);
            return result;
          }
        }
      }
    }
  }
  if (!sandwich_check(BernoulliParams(17, 9, 0.5), 5)) {
    result.passed = false;
    result.detail = "q-denominator sandwich failed at its reference point N=17 q=9 p=0.5 m=5";
    return result;
  }
  result.detail = std::to_string(cases) + " support points, N <= " + std::to_string(max_n);
  return result;
}

SuiteResult unimodality_scan() {
  SuiteResult result{"unimodality-scan", true, ""};
  int cases = 0;
  for (long long q : {21, 41}) {
    for (double d : {0.75, 1.0, 1.5}) {
      for (double p : {0.2, 0.5, 0.8}) {
        const long long n = std::llround(d * static_cast<double>(q)) - 1;
        const BernoulliParams params(static_cast<int>(n), q, p);
        if (support_range(params).empty()) continue;
        ++cases;
        const UnimodalityReport report = check_unimodality(params);
        if (!report.is_unimodal) {
          result.passed = false;
          result.detail = "not unimodal at q=" + std::to_string(q) + " d=" + std::to_string(d) +
                          " p=" + std::to_string(p);
          return result;
        }
      }
    }
  }
  result.detail = std::to_string(cases) + " (q,d,p) curves";
  return result;
}

SuiteResult mc_coverage(int runs, long long trials) {
  SuiteResult result{"monte-carlo-coverage", true, ""};
  const BernoulliParams params(6, 5, 0.5);
  const double expected = to_double(exact_expectation_by_enumeration(6, 5, Rational(1, 2), 2));
  int hits = 0;
  for (int run = 0; run < runs; ++run) {
    const McEstimate estimate =
        monte_carlo_expectation(params, 2, trials, 0xC0FFEE00ULL + static_cast<std::uint64_t>(run));
    if (std::abs(estimate.mean - expected) <= 4.0 * estimate.std_error) ++hits;
  }
  if (hits * 100 < runs * 95) {
    result.passed = false;
    result.detail = std::to_string(hits) + "/" + std::to_string(runs) + " runs within 4 sigma";
    return result;
  }
  result.detail = std::to_string(hits) + "/" + std::to_string(runs) + " runs within 4 sigma of " +
                  std::to_string(expected);
  return result;
}

}  // namespace

VerifyReport run_verification(VerifyLevel level) {
  VerifyReport report;
  if (level == VerifyLevel::Quick) {
    report.suites.push_back(counting_vs_homology(60, 8));
    report.suites.push_back(formula_vs_enumeration(9, {{1, 10}, {1, 2}, {9, 10}}));
    report.suites.push_back(quotient_identities());
    report.suites.push_back(root_identities(20));
    report.suites.push_back(sandwich_bounds(40, 20));
    report.suites.push_back(unimodality_scan());
  } else {
    report.suites.push_back(counting_vs_homology(220, 10));
    report.suites.push_back(
        formula_vs_enumeration(12, {{1, 10}, {3, 10}, {1, 2}, {7, 10}, {9, 10}}));
    report.suites.push_back(quotient_identities());
    report.suites.push_back(root_identities(50));
    report.suites.push_back(sandwich_bounds(60, 30));
    report.suites.push_back(unimodality_scan());
    report.suites.push_back(mc_coverage(20, 100000));
  }
  return report;
}

}  // namespace quota
