#pragma once
// The Bernoulli random quota model: N random vertices of weight 1 + Ber(p)
// plus one fixed vertex of weight 1, integer quota q. The reduced m-th Betti
// number of a realization equals the number of (m+1)-subsets of the random
// vertices whose weights sum to exactly q-1.

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "quota/exact.hpp"
#include "quota/quota_core.hpp"

namespace quota {

struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BernoulliParams {
  int n_random;     // N: number of random vertices (total vertices N+1)
  long long quota;  // integer q >= 2
  double p;         // Bernoulli probability of the +1 weight increment

  BernoulliParams(int n_random_, long long quota_, double p_);

  // d = (N+1)/q.
  double density() const noexcept {
    return static_cast<double>(n_random + 1) / static_cast<double>(quota);
  }
};

// Dimensions m with (q-1)/2 <= m+1 < q and m+1 <= N; empty when lo > hi.
struct SupportRange {
  int lo = 0, hi = -1;

  bool empty() const noexcept { return lo > hi; }
  int size() const noexcept { return empty() ? 0 : hi - lo + 1; }
  bool contains(int m) const noexcept { return m >= lo && m <= hi; }
};

SupportRange support_range(const BernoulliParams& params);
SupportRange support_range(int n_random, long long quota);

// One realization of the model: weight 0 is exactly 1, weights 1..N are
// i.i.d. 1 + Ber(p) drawn in index order from a SplitMix64 stream.
QuotaSystem sample_weights(const BernoulliParams& params, std::uint64_t seed);

// Closed-form E[reduced Betti_m] = C(N,m+1) C(m+1,q-m-2) p^(q-m-2)
// (1-p)^(2m+3-q), evaluated in log space; exact 0 outside the support.
// 0^0 = 1, so p in {0,1} degenerates to the deterministic complex.
double expected_betti(const BernoulliParams& params, int m);

// log of the above; -infinity where the expectation is 0.
double log_expected_betti(const BernoulliParams& params, int m);

// The whole curve over the support (ascending m); empty support gives an
// empty value list.
struct ExpectationCurve {
  BernoulliParams params;
  std::vector<std::pair<int, double>> values;  // (m, E[reduced Betti_m])
};

ExpectationCurve expectation_curve(const BernoulliParams& params);

// CSV: header "m,expectation"; 17 significant digits.
void write_expectation_csv(const ExpectationCurve& curve, std::ostream& os);

// Same closed form over exact rationals (p taken as the exact value of the
// given probability). Cost grows with N; tests use it up to N ~ 64 and the
// unimodality scan beyond.
Rational exact_expected_betti(const BernoulliParams& params, int m);
Rational exact_expected_betti(int n_random, long long quota, const Rational& p, int m);

// Independent oracle: sums p^k (1-p)^(N-k) * C(k, q-m-2) * C(N-k, m+1-(q-m-2))
// over all 2^N Bernoulli outcomes, k = popcount. Exact. Requires N <= 20
// (throws ResourceError beyond).
Rational exact_expectation_by_enumeration(const BernoulliParams& params, int m);
Rational exact_expectation_by_enumeration(int n_random, long long quota, const Rational& p, int m);

// Per-realization reduced Betti_m computed from the number k of weight-2
// vertices: C(k, q-m-2) * C(N-k, m+1-(q-m-2)).
BigInt betti_from_success_count(const BernoulliParams& params, int m, int k);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  long long trials = 0;
  std::uint64_t seed = 0;
};

// Name of the sampling stream (generator + substream chunking policy),
// recorded in CLI output so runs are reproducible across machines.
inline constexpr const char* kRngAlgorithm = "splitmix64-chunk4096";
inline constexpr long long kMcChunkTrials = 4096;

// Monte Carlo estimate of E[reduced Betti_m]. Trials are processed in fixed
// chunks of kMcChunkTrials, chunk i drawing from substream_seed(seed, i), and
// chunk sums are combined in index order, so the result is identical no
// matter how many workers run the chunks (capped by QUOTA_BETTI_THREADS).
McEstimate monte_carlo_expectation(const BernoulliParams& params, int m, long long trials,
                                   std::uint64_t seed);

}  // namespace quota
