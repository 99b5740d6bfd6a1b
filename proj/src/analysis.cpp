#include "quota/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "quota/parallel.hpp"

namespace quota {

namespace {

void require_open_unit(double p, const char* where) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument(std::string(where) + ": p must be in the open interval (0, 1)");
}

// Factors of M1(m); zero denominators are the support edges.
void require_m1_defined(long long quota, int m, const char* where) {
  if (2LL * m + 3 - quota == 0 || 2LL * m + 2 - quota == 0)
    throw SupportBoundaryError(std::string(where) + ": forward quotient undefined at m = " +
                               std::to_string(m) + " (support boundary)");
}

std::string fmt(double x, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

}  // namespace

Rational forward_quotient_1_exact(int n_random, long long quota, const Rational& p, int m) {
  require_m1_defined(quota, m, "forward_quotient_1");
  if (!(p > 0 && p < 1))
    throw std::invalid_argument("forward_quotient_1: p must be in the open interval (0, 1)");
  const Rational pbar = 1 - p;
  return pbar * pbar / p *
         Rational(BigInt(n_random - m) * BigInt(quota - m - 1),
                  BigInt(2LL * m + 3 - quota) * BigInt(2LL * m + 2 - quota));
}

double forward_quotient_1(const BernoulliParams& params, int m) {
  require_open_unit(params.p, "forward_quotient_1");
  require_m1_defined(params.quota, m, "forward_quotient_1");
  const double pbar = 1.0 - params.p;
  return pbar * pbar / params.p *
         (static_cast<double>(params.n_random - m) * static_cast<double>(params.quota - m - 1)) /
         (static_cast<double>(2LL * m + 3 - params.quota) *
          static_cast<double>(2LL * m + 2 - params.quota));
}

Rational forward_quotient_2_exact(int n_random, long long quota, int m) {
  require_m1_defined(quota, m, "forward_quotient_2");
  require_m1_defined(quota, m - 1, "forward_quotient_2");
  if (n_random - m + 1 == 0 || quota - m == 0)
    throw SupportBoundaryError("forward_quotient_2: undefined at m = " + std::to_string(m) +
                               " (support boundary)");
  const long long a = 2LL * m - quota;
  return Rational(BigInt(a) * BigInt(a + 1) * BigInt(n_random - m) * BigInt(quota - m - 1),
                  BigInt(a + 2) * BigInt(a + 3) * BigInt(n_random - m + 1) * BigInt(quota - m));
}

double forward_quotient_2(const BernoulliParams& params, int m) {
  return to_double(forward_quotient_2_exact(params.n_random, params.quota, m));
}

namespace {

// Decimal mantissa/exponent from a natural log, for values past double range.
std::string fmt_from_log(double log_value) {
  const double log10_value = log_value / std::numbers::ln10;
  const double exponent = std::floor(log10_value);
  std::ostringstream os;
  os << std::setprecision(12) << std::pow(10.0, log10_value - exponent) << "e+"
     << static_cast<long long>(exponent);
  return os.str();
}

}  // namespace

void write_quotient_csv(const QuotientTable& table, std::ostream& os) {
  os << "m,expectation,M1,M2\n";
  for (const QuotientRow& row : table.rows) {
    os << row.m << ',';
    if (row.expectation && std::isfinite(*row.expectation))
      os << fmt(*row.expectation, 17);
    else if (row.log_expectation)
      os << fmt_from_log(*row.log_expectation);
    os << ',';
    if (row.m1) os << fmt(*row.m1, 17);
    os << ',';
    if (row.m2) os << fmt(*row.m2, 17);
    os << '\n';
  }
}

namespace {

// Largest m whose exact M1 exceeds 1 (the curve rises into m), plus the
// adjacent tie when M1 hits 1 exactly.
PeakScan scan_peak(int n_random, long long quota, const Rational& p, const SupportRange& support) {
  PeakScan scan;
  scan.m_peak = support.lo;
  for (int m = support.lo + 1; m <= support.hi; ++m) {
    const Rational m1 = forward_quotient_1_exact(n_random, quota, p, m);
    if (m1 > 1) {
      scan.m_peak = m;
    } else {
      if (m1 == 1) scan.tie = m;
      break;
    }
  }
  return scan;
}

}  // namespace

PeakScan find_peak_exact(const BernoulliParams& params) {
  require_open_unit(params.p, "find_peak_exact");
  if (!(params.density() > 0.5))
    throw std::invalid_argument("find_peak_exact: requires d = (N+1)/q > 1/2");
  const SupportRange support = support_range(params);
  if (support.empty()) throw std::domain_error("find_peak_exact: empty expectation support");
  return scan_peak(params.n_random, params.quota, rational_from_double(params.p), support);
}

UnimodalityReport check_unimodality(const BernoulliParams& params) {
  require_open_unit(params.p, "check_unimodality");
  if (!(params.density() > 0.5))
    throw std::invalid_argument("check_unimodality: requires d = (N+1)/q > 1/2");
  const SupportRange support = support_range(params);
  if (support.empty()) throw std::domain_error("check_unimodality: empty expectation support");

  const Rational p_exact = rational_from_double(params.p);
  const int lo = support.lo, hi = support.hi;

  UnimodalityReport report;
  report.peak = scan_peak(params.n_random, params.quota, p_exact, support);

  bool m2_below_one = true;
  bool single_sign_change = true;
  bool seen_non_increasing = false;
  for (int m = lo + 1; m <= hi; ++m) {
    const Rational m1 = forward_quotient_1_exact(params.n_random, params.quota, p_exact, m);
    if (m1 > 1) {
      if (seen_non_increasing) single_sign_change = false;
    } else {
      seen_non_increasing = true;
    }
    if (m >= lo + 2 && forward_quotient_2_exact(params.n_random, params.quota, m) >= 1)
      m2_below_one = false;
  }
  report.is_unimodal = m2_below_one && single_sign_change;

  // Expectation column: exact cumulative products while cheap, else log space.
  report.exact_curve = params.n_random <= 512;
  const std::size_t points = static_cast<std::size_t>(hi - lo + 1);
  std::vector<double> curve(points), log_curve(points);
  if (report.exact_curve) {
    Rational value = exact_expected_betti(params.n_random, params.quota, p_exact, lo);
    curve[0] = to_double(value);
    log_curve[0] = log_to_double(value);
    for (int m = lo + 1; m <= hi; ++m) {
      value *= forward_quotient_1_exact(params.n_random, params.quota, p_exact, m);
      curve[static_cast<std::size_t>(m - lo)] = to_double(value);
      log_curve[static_cast<std::size_t>(m - lo)] = log_to_double(value);
    }
  } else {
    for (int m = lo; m <= hi; ++m) {
      curve[static_cast<std::size_t>(m - lo)] = expected_betti(params, m);
      log_curve[static_cast<std::size_t>(m - lo)] = log_expected_betti(params, m);
    }
  }

  for (int m = lo; m <= hi; ++m) {
    QuotientRow row;
    row.m = m;
    row.expectation = curve[static_cast<std::size_t>(m - lo)];
    row.log_expectation = log_curve[static_cast<std::size_t>(m - lo)];
    if (m >= lo + 1)
      row.m1 = to_double(forward_quotient_1_exact(params.n_random, params.quota, p_exact, m));
    if (m >= lo + 2) row.m2 = to_double(forward_quotient_2_exact(params.n_random, params.quota, m));
    report.table.rows.push_back(row);
  }
  return report;
}

double quadratic_T(double tau, double p, double d) {
  const double pbar2 = (1.0 - p) * (1.0 - p);
  return tau * tau * (pbar2 - 4.0 * p) + tau * (4.0 * p - pbar2 * (d + 1.0)) + pbar2 * d - p;
}

const char* to_string(PeakBranch branch) noexcept {
  return branch == PeakBranch::LinearSpecialCase ? "linear-special-case" : "quadratic-minus-root";
}

PeakSolution solve_tau_infinity(double p, double d) {
  require_open_unit(p, "solve_tau_infinity");
  if (!(d >= 0.5)) throw std::invalid_argument("solve_tau_infinity: requires d >= 1/2");

  const double pbar2 = (1.0 - p) * (1.0 - p);
  const double alpha = pbar2 - 4.0 * p;
  const double b = pbar2 * (d + 1.0) - 4.0 * p;
  const double gamma = pbar2 * d - p;
  const double discriminant = b * b - 4.0 * alpha * gamma;

  PeakSolution solution;
  solution.discriminant = discriminant;
  if (std::abs(alpha) <= 1e-12 * std::max(pbar2, 4.0 * p)) {
    solution.branch = PeakBranch::LinearSpecialCase;
    solution.tau_infinity = (4.0 * d - 1.0) / (4.0 * d);
  } else {
    if (discriminant < 0.0)
      throw std::logic_error("solve_tau_infinity: negative discriminant (unreachable for d >= 1/2)");
    const double sqrt_d = std::sqrt(discriminant);
    solution.branch = PeakBranch::QuadraticMinusRoot;
    // The minus root (B - sqrt(D))/(2 alpha), written to avoid cancellation:
    // multiply through by (B + sqrt(D)) when B > 0.
    solution.tau_infinity = (b > 0.0) ? (2.0 * gamma) / (b + sqrt_d) : (b - sqrt_d) / (2.0 * alpha);
  }

  const double scale = std::max({1.0, std::abs(alpha), std::abs(b), std::abs(gamma)});
  if (!(solution.tau_infinity >= 0.5 - 1e-9 && solution.tau_infinity < 1.0) ||
      std::abs(quadratic_T(solution.tau_infinity, p, d)) > 1e-10 * scale)
    throw std::logic_error("solve_tau_infinity: root validation failed");
  solution.tau_infinity = std::max(solution.tau_infinity, 0.5);
  return solution;
}

BoundConstants bound_constants(double p, double d, double tau) {
  require_open_unit(p, "bound_constants");
  if (!(d > 0.5)) throw std::invalid_argument("bound_constants: requires d > 1/2");
  if (!(tau >= 0.5 && tau <= 1.0))
    throw std::invalid_argument("bound_constants: requires tau in [1/2, 1]");
  const double inv_tau = 1.0 / tau;
  BoundConstants bc;
  bc.p = p;
  bc.d = d;
  bc.tau = tau;
  const double coeff1 = 2.0 - inv_tau;  // exactly 0 at tau = 1/2
  const double coeff3 = inv_tau - 1.0;  // exactly 0 at tau = 1
  bc.c1 = (coeff1 == 0.0 ? 0.0 : coeff1 * std::log((1.0 - p) / tau)) + std::log(d) +
          (coeff3 == 0.0 ? 0.0 : coeff3 * std::log(p));
  bc.c2 = bc.c1 + inv_tau;
  return bc;
}

namespace {

bool sandwich_in_log_space(const BernoulliParams& params, int m, bool k_denominator) {
  require_open_unit(params.p, "sandwich_check");
  if (!support_range(params).contains(m))
    throw std::invalid_argument("sandwich_check: m is outside the expectation support");
  const long long k1 = params.quota - m - 2;
  const long long k2 = 2LL * m + 3 - params.quota;
  const double denom = k_denominator ? static_cast<double>(k1) : static_cast<double>(params.quota);

  double log_lower = static_cast<double>(m + 1) * std::log(static_cast<double>(params.n_random)) +
                     static_cast<double>(k2) * std::log((1.0 - params.p) / static_cast<double>(m + 1));
  if (k1 > 0) log_lower += static_cast<double>(k1) * std::log(params.p / denom);

  const double log_e = log_expected_betti(params, m);
  const double slack = 1e-9 * std::max({1.0, std::abs(log_e), std::abs(log_lower)});
  return log_lower - slack <= log_e &&
         log_e <= log_lower + static_cast<double>(params.quota - 1) + slack;
}

}  // namespace

bool sandwich_check(const BernoulliParams& params, int m) {
  return sandwich_in_log_space(params, m, /*k_denominator=*/false);
}

bool sandwich_check_proven(const BernoulliParams& params, int m) {
  return sandwich_in_log_space(params, m, /*k_denominator=*/true);
}

const char* to_string(RegionClass cls) noexcept {
  switch (cls) {
    case RegionClass::BothNeg: return "BOTH_NEG";
    case RegionClass::BothPos: return "BOTH_POS";
    case RegionClass::Mixed: break;
  }
  return "MIXED";
}

RegionClass classify_region(double p, double d) {
  require_open_unit(p, "classify_region");
  if (!(d > 0.5)) throw std::invalid_argument("classify_region: requires d > 1/2");
  const PeakSolution peak = solve_tau_infinity(p, d);
  const BoundConstants bc = bound_constants(p, d, peak.tau_infinity);
  if (bc.c2 < 0.0) return RegionClass::BothNeg;
  if (bc.c1 > 0.0) return RegionClass::BothPos;
  return RegionClass::Mixed;
}

std::int64_t RegionReport::count(RegionClass cls) const noexcept {
  return std::count_if(rows.begin(), rows.end(),
                       [cls](const RegionRow& row) { return row.cls == cls; });
}

RegionReport region_grid(double p_min, double p_max, double d_min, double d_max, int resolution) {
  if (!(0.0 < p_min && p_min < p_max && p_max < 1.0))
    throw std::invalid_argument("region_grid: requires 0 < p_min < p_max < 1");
  if (!(0.5 < d_min && d_min < d_max))
    throw std::invalid_argument("region_grid: requires 1/2 < d_min < d_max");
  if (resolution < 2) throw std::invalid_argument("region_grid: resolution must be >= 2");

  RegionReport report;
  report.rows.resize(static_cast<std::size_t>(resolution) * static_cast<std::size_t>(resolution));
  const double p_step = (p_max - p_min) / (resolution - 1);
  const double d_step = (d_max - d_min) / (resolution - 1);
  // Row-parallel; each task writes its own slots, so ordering is by (d, p)
  // regardless of the worker count.
  parallel_for_index(resolution, [&](long long j) {
    const double d = (j == resolution - 1) ? d_max : d_min + static_cast<double>(j) * d_step;
    for (int i = 0; i < resolution; ++i) {
      const double p = (i == resolution - 1) ? p_max : p_min + i * p_step;
      RegionRow row;
      row.p = p;
      row.d = d;
      const PeakSolution peak = solve_tau_infinity(p, d);
      const BoundConstants bc = bound_constants(p, d, peak.tau_infinity);
      row.tau_inf = peak.tau_infinity;
      row.c1 = bc.c1;
      row.c2 = bc.c2;
      row.cls = (bc.c2 < 0.0)   ? RegionClass::BothNeg
                : (bc.c1 > 0.0) ? RegionClass::BothPos
                                : RegionClass::Mixed;
      report.rows[static_cast<std::size_t>(j) * static_cast<std::size_t>(resolution) +
                  static_cast<std::size_t>(i)] = row;
    }
  });
  return report;
}

void write_region_csv(const RegionReport& report, std::ostream& os) {
  os << "p,d,tau_inf,c1,c2,class\n";
  for (const RegionRow& row : report.rows) {
    os << fmt(row.p, 10) << ',' << fmt(row.d, 10) << ',' << fmt(row.tau_inf, 10) << ','
       << fmt(row.c1, 10) << ',' << fmt(row.c2, 10) << ',' << to_string(row.cls) << '\n';
  }
}

std::vector<PeakConvergenceRow> peak_convergence_study(double p, double d,
                                                       std::vector<long long> q_list) {
  require_open_unit(p, "peak_convergence_study");
  if (!(d > 0.5)) throw std::invalid_argument("peak_convergence_study: requires d > 1/2");
  const double tau_inf = solve_tau_infinity(p, d).tau_infinity;
  const Rational p_exact = rational_from_double(p);
  std::sort(q_list.begin(), q_list.end());

  std::vector<PeakConvergenceRow> rows(q_list.size());
  parallel_for_index(static_cast<long long>(q_list.size()), [&](long long index) {
    const long long q = q_list[static_cast<std::size_t>(index)];
    PeakConvergenceRow row;
    row.q = q;
    row.tau_inf = tau_inf;
    const long long n = std::llround(d * static_cast<double>(q)) - 1;
    if (q >= 2 && n >= 1) {
      row.n_random = static_cast<int>(n);
      row.d_realized = static_cast<double>(n + 1) / static_cast<double>(q);
      const SupportRange support = support_range(row.n_random, q);
      if (!support.empty()) {
        // Ties resolve to the smaller index, which scan_peak already returns.
        row.m_peak = scan_peak(row.n_random, q, p_exact, support).m_peak;
        row.tau_q = static_cast<double>(row.m_peak + 1) / static_cast<double>(q);
        row.gap = std::abs(row.tau_q - tau_inf);
        row.has_peak = true;
      }
    }
    rows[static_cast<std::size_t>(index)] = row;
  });
  return rows;
}

void write_peak_convergence_csv(const std::vector<PeakConvergenceRow>& rows, std::ostream& os) {
  os << "q,m_peak,tau_q,tau_inf,gap\n";
  for (const PeakConvergenceRow& row : rows) {
    os << row.q << ',';
    if (row.has_peak) os << row.m_peak;
    os << ',';
    if (row.has_peak) os << fmt(row.tau_q, 17);
    os << ',' << fmt(row.tau_inf, 17) << ',';
    if (row.has_peak) os << fmt(row.gap, 17);
    os << '\n';
  }
}

}  // namespace quota
