#pragma once
// Analytic machinery for the Bernoulli model: forward quotients of the
// expectation curve, unimodality verification, the asymptotic peak location
// tau_infinity, the growth-bound constants c1/c2, and the (p, d) sign-region
// grid.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "quota/bernoulli_model.hpp"

namespace quota {

// A forward quotient was requested where one of its factors has a zero
// denominator (the edge of the expectation support).
struct SupportBoundaryError : std::domain_error {
  using std::domain_error::domain_error;
};

// M1(m) = E[b_m]/E[b_{m-1}] in closed form:
// (pbar^2/p) (N-m)(q-m-1) / ((2m+3-q)(2m+2-q)). Requires p in (0,1) and both
// denominator factors nonzero.
double forward_quotient_1(const BernoulliParams& params, int m);
Rational forward_quotient_1_exact(int n_random, long long quota, const Rational& p, int m);

// M2(m) = M1(m)/M1(m-1), in the telescoped product form
// [(2m-q)/(2m-q+2)] [(2m-q+1)/(2m-q+3)] [(N-m)/(N-m+1)] [(q-m-1)/(q-m)].
// p cancels. Requires every factor of M1(m) and M1(m-1) to be defined.
double forward_quotient_2(const BernoulliParams& params, int m);
Rational forward_quotient_2_exact(int n_random, long long quota, int m);

struct QuotientRow {
  int m = 0;
  std::optional<double> expectation;      // may overflow to +inf at large q
  std::optional<double> log_expectation;  // always finite on the support
  std::optional<double> m1;
  std::optional<double> m2;
};

struct QuotientTable {
  std::vector<QuotientRow> rows;
};

// CSV: header "m,expectation,M1,M2"; absent entries are empty fields.
void write_quotient_csv(const QuotientTable& table, std::ostream& os);

// Location of the expectation curve's mode; tie holds the second index when
// two adjacent values are exactly equal (M1 = 1 at tie.value()).
struct PeakScan {
  int m_peak = 0;
  std::optional<int> tie;
};

struct UnimodalityReport {
  bool is_unimodal = false;
  PeakScan peak;
  QuotientTable table;
  bool exact_curve = false;  // table expectations from the big-integer path
};

// Verifies, in exact rational arithmetic, that (a) M2 < 1 at every interior
// support point and (b) the sign of M1 - 1 changes at most once, from + to -;
// locates the peak. Requires p in (0,1), d > 1/2 and nonempty support (the
// last is implied by the first two for valid params).
UnimodalityReport check_unimodality(const BernoulliParams& params);

// Peak location alone (exact scan, no table).
PeakScan find_peak_exact(const BernoulliParams& params);

// T(tau) = tau^2 (pbar^2 - 4p) + tau (4p - pbar^2 (d+1)) + pbar^2 d - p.
// The peak's normalized dimension tau = (m+1)/q solves T = 0 as q grows.
double quadratic_T(double tau, double p, double d);

enum class PeakBranch { LinearSpecialCase, QuadraticMinusRoot };

const char* to_string(PeakBranch branch) noexcept;

struct PeakSolution {
  double tau_infinity = 0.0;
  PeakBranch branch = PeakBranch::QuadraticMinusRoot;
  double discriminant = 0.0;
};

// Root of T in [1/2, 1). Uses the linear branch when the leading coefficient
// alpha = pbar^2 - 4p vanishes (relative threshold 1e-12 * max(pbar^2, 4p)),
// and a cancellation-free form of the minus root otherwise. Requires
// p in (0,1) and d >= 1/2.
PeakSolution solve_tau_infinity(double p, double d);

struct BoundConstants {
  double c1 = 0.0;
  double c2 = 0.0;
  double tau = 0.0;
  double p = 0.0;
  double d = 0.0;
};

// c1 = (2 - 1/tau) log(pbar/tau) + log d + (1/tau - 1) log p and
// c2 = c1 + 1/tau (natural logs). Finite at tau = 1/2 since the first
// coefficient vanishes there.
BoundConstants bound_constants(double p, double d, double tau);

// True iff N^(m+1) (p/q)^(q-m-2) (pbar/(m+1))^(2m+3-q) <= E[b_m] <= the same
// times e^(q-1), checked in log space with 1e-9 relative slack. This is the
// q-denominator form; its upper half is not attained everywhere (see
// sandwich_check_proven). Requires m in support, p in (0,1).
bool sandwich_check(const BernoulliParams& params, int m);

// Variant with (p/(q-m-2))^(q-m-2) in place of (p/q)^(q-m-2), the form the
// binomial bounds (n/k)^k <= C(n,k) <= (ne/k)^k actually yield; both halves
// hold for every support point.
bool sandwich_check_proven(const BernoulliParams& params, int m);

enum class RegionClass { BothNeg, BothPos, Mixed };

const char* to_string(RegionClass cls) noexcept;

// Sign class of (c1, c2) at tau = tau_infinity(p, d): BothNeg when c2 < 0,
// BothPos when c1 > 0, Mixed otherwise. Requires p in (0,1), d > 1/2.
RegionClass classify_region(double p, double d);

struct RegionRow {
  double p = 0.0, d = 0.0, tau_inf = 0.0, c1 = 0.0, c2 = 0.0;
  RegionClass cls = RegionClass::Mixed;
};

struct RegionReport {
  std::vector<RegionRow> rows;  // sorted by (d, p)

  std::int64_t count(RegionClass cls) const noexcept;
};

inline constexpr double kDefaultRegionPMin = 0.01;
inline constexpr double kDefaultRegionPMax = 0.99;
inline constexpr double kDefaultRegionDMin = 0.51;
inline constexpr double kDefaultRegionDMax = 2.0;

// classify_region on a resolution x resolution uniform grid (endpoints
// included). Requires 0 < p_min < p_max < 1, 1/2 < d_min < d_max,
// resolution >= 2.
RegionReport region_grid(double p_min, double p_max, double d_min, double d_max, int resolution);

// CSV: header "p,d,tau_inf,c1,c2,class"; floats with 10 significant digits.
void write_region_csv(const RegionReport& report, std::ostream& os);

struct PeakConvergenceRow {
  long long q = 0;
  bool has_peak = false;  // false when the support at this q is empty
  int n_random = 0;
  double d_realized = 0.0;
  long long m_peak = 0;
  double tau_q = 0.0;    // (m_peak + 1)/q
  double tau_inf = 0.0;
  double gap = 0.0;      // |tau_q - tau_inf|
};

// For each q (ascending): N = round(d q) - 1, peak by exact scan (ties use
// the smaller index), gap against tau_infinity at the nominal d. The realized
// d = (N+1)/q is recorded per row.
std::vector<PeakConvergenceRow> peak_convergence_study(double p, double d,
                                                       std::vector<long long> q_list);

// CSV: header "q,m_peak,tau_q,tau_inf,gap"; absent rows keep q and tau_inf
// and leave the other fields empty.
void write_peak_convergence_csv(const std::vector<PeakConvergenceRow>& rows, std::ostream& os);

}  // namespace quota
