#include "quota/bernoulli_model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <vector>

#include "quota/parallel.hpp"
#include "quota/splitmix64.hpp"

namespace quota {

BernoulliParams::BernoulliParams(int n_random_, long long quota_, double p_)
    : n_random(n_random_), quota(quota_), p(p_) {
  if (n_random < 1) throw std::invalid_argument("BernoulliParams: N must be >= 1");
  if (quota < 2) throw std::invalid_argument("BernoulliParams: quota must be an integer >= 2");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("BernoulliParams: p must be in [0, 1]");
}

SupportRange support_range(int n_random, long long quota) {
  // m+1 >= ceil((q-1)/2) = q/2 for integer q >= 2.
  const int lo = static_cast<int>(quota / 2) - 1;
  const int hi = static_cast<int>(std::min<long long>(quota - 2, n_random - 1));
  return SupportRange{lo, hi};
}

SupportRange support_range(const BernoulliParams& params) {
  return support_range(params.n_random, params.quota);
}

QuotaSystem sample_weights(const BernoulliParams& params, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<Rational> weights;
  weights.reserve(static_cast<std::size_t>(params.n_random) + 1);
  weights.emplace_back(1);
  for (int j = 1; j <= params.n_random; ++j)
    weights.emplace_back(rng.next_double() < params.p ? 2 : 1);
  return QuotaSystem(std::move(weights), Rational(params.quota));
}

double log_expected_betti(const BernoulliParams& params, int m) {
  const SupportRange support = support_range(params);
  if (!support.contains(m)) return -std::numeric_limits<double>::infinity();
  const long long k1 = params.quota - m - 2;       // weight-2 vertices in the subset
  const long long k2 = 2LL * m + 3 - params.quota; // weight-1 vertices in the subset
  double log_e = log_binomial(params.n_random, m + 1) + log_binomial(m + 1, k1);
  if (k1 > 0) {
    if (params.p == 0.0) return -std::numeric_limits<double>::infinity();
    log_e += static_cast<double>(k1) * std::log(params.p);
  }
  if (k2 > 0) {
    if (params.p == 1.0) return -std::numeric_limits<double>::infinity();
    log_e += static_cast<double>(k2) * std::log1p(-params.p);
  }
  return log_e;
}

double expected_betti(const BernoulliParams& params, int m) {
  const double log_e = log_expected_betti(params, m);
  return std::isinf(log_e) ? 0.0 : std::exp(log_e);
}

ExpectationCurve expectation_curve(const BernoulliParams& params) {
  ExpectationCurve curve{params, {}};
  const SupportRange support = support_range(params);
  for (int m = support.lo; m <= support.hi; ++m)
    curve.values.emplace_back(m, expected_betti(params, m));
  return curve;
}

void write_expectation_csv(const ExpectationCurve& curve, std::ostream& os) {
  os << "m,expectation\n";
  for (const auto& [m, value] : curve.values) {
    os << m << ',' << std::setprecision(17) << value << '\n';
  }
}

Rational exact_expected_betti(int n_random, long long quota, const Rational& p, int m) {
  if (!support_range(n_random, quota).contains(m)) return Rational(0);
  const long long k1 = quota - m - 2;
  const long long k2 = 2LL * m + 3 - quota;
  return Rational(binomial(n_random, m + 1) * binomial(m + 1, k1)) * pow_rational(p, k1) *
         pow_rational(1 - p, k2);
}

Rational exact_expected_betti(const BernoulliParams& params, int m) {
  return exact_expected_betti(params.n_random, params.quota, rational_from_double(params.p), m);
}

Rational exact_expectation_by_enumeration(int n_random, long long quota, const Rational& p, int m) {
  if (n_random > 20)
    throw ResourceError("exact_expectation_by_enumeration: 2^N enumeration needs N <= 20");
  const long long k1 = quota - m - 2;
  const long long r = static_cast<long long>(m) + 1 - k1;

  // Per-outcome probability and subset count depend only on k = popcount.
  std::vector<Rational> term(static_cast<std::size_t>(n_random) + 1);
  for (int k = 0; k <= n_random; ++k)
    term[static_cast<std::size_t>(k)] = pow_rational(p, k) * pow_rational(1 - p, n_random - k) *
                                        Rational(binomial(k, k1) * binomial(n_random - k, r));
  Rational total = 0;
  const std::uint64_t outcomes = 1ULL << n_random;
  for (std::uint64_t mask = 0; mask < outcomes; ++mask)
    total += term[static_cast<std::size_t>(std::popcount(mask))];
  return total;
}

Rational exact_expectation_by_enumeration(const BernoulliParams& params, int m) {
  return exact_expectation_by_enumeration(params.n_random, params.quota,
                                          rational_from_double(params.p), m);
}

BigInt betti_from_success_count(const BernoulliParams& params, int m, int k) {
  const long long k1 = params.quota - m - 2;
  const long long r = static_cast<long long>(m) + 1 - k1;
  return binomial(k, k1) * binomial(params.n_random - k, r);
}

namespace {

struct ChunkSums {
  double sum = 0.0;
  double sum_sq = 0.0;
};

}  // namespace

McEstimate monte_carlo_expectation(const BernoulliParams& params, int m, long long trials,
                                   std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("monte_carlo_expectation: trials must be >= 1");
  const int n = params.n_random;
  const long long k1 = params.quota - m - 2;
  const long long r = static_cast<long long>(m) + 1 - k1;

  // count(k) = C(k, k1) * C(n-k, r); tabulated once, exact while < 2^53.
  std::vector<double> count(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k)
    count[static_cast<std::size_t>(k)] = to_double(Rational(binomial(k, k1) * binomial(n - k, r)));

  const long long num_chunks = (trials + kMcChunkTrials - 1) / kMcChunkTrials;
  std::vector<ChunkSums> chunk_sums(static_cast<std::size_t>(num_chunks));

  parallel_for_index(num_chunks, [&](long long chunk) {
    SplitMix64 rng(substream_seed(seed, static_cast<std::uint64_t>(chunk)));
    const long long begin = chunk * kMcChunkTrials;
    const long long end = std::min(trials, begin + kMcChunkTrials);
    ChunkSums sums;
    for (long long t = begin; t < end; ++t) {
      int k = 0;
      for (int j = 0; j < n; ++j) k += (rng.next_double() < params.p);
      const double x = count[static_cast<std::size_t>(k)];
      sums.sum += x;
      sums.sum_sq += x * x;
    }
    chunk_sums[static_cast<std::size_t>(chunk)] = sums;
  });

  // Combine in chunk order: the estimate is independent of worker count.
  double sum = 0.0, sum_sq = 0.0;
  for (const ChunkSums& s : chunk_sums) {
    sum += s.sum;
    sum_sq += s.sum_sq;
  }
  McEstimate estimate;
  estimate.trials = trials;
  estimate.seed = seed;
  estimate.mean = sum / static_cast<double>(trials);
  if (trials > 1) {
    const double variance =
        std::max(0.0, (sum_sq - static_cast<double>(trials) * estimate.mean * estimate.mean) /
                          static_cast<double>(trials - 1));
    estimate.std_error = std::sqrt(variance / static_cast<double>(trials));
  }
  return estimate;
}

}  // namespace quota
