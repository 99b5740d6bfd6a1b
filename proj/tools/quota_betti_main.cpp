// quota-betti: quota-complex Betti numbers, the Bernoulli random model, and
// peak/region analysis from the command line. Machine-first output: JSON to
// stdout by default, CSV via --format/--out extension.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error,
// 3 domain error (e.g. empty complex).

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "quota/analysis.hpp"
#include "quota/bernoulli_model.hpp"
#include "quota/homology_oracle.hpp"
#include "quota/verify.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

// Explicit --format wins; otherwise the --out extension decides.
std::string resolve_format(const std::string& format_flag, const std::string& out_path,
                           const std::string& fallback) {
  if (!format_flag.empty()) return format_flag;
  if (out_path.size() >= 4 && out_path.substr(out_path.size() - 4) == ".csv") return "csv";
  if (out_path.size() >= 5 && out_path.substr(out_path.size() - 5) == ".json") return "json";
  return fallback;
}

// Returns the stream to write results to; opens out_path when given.
std::ostream& open_sink(const std::string& out_path, std::ofstream& file) {
  if (out_path.empty()) return std::cout;
  file.open(out_path);
  if (!file) throw std::invalid_argument("cannot write to '" + out_path + "'");
  return file;
}

ordered_json betti_values_json(const quota::BettiVector& betti) {
  ordered_json values = ordered_json::array();
  for (auto v : betti.values) values.push_back(v);
  return values;
}

int run_betti(const std::string& weights_path, const std::string& quota_text, bool with_oracle,
              const std::string& format_flag, const std::string& out_path) {
  const quota::QuotaSystem system(quota::load_weights_file(weights_path),
                                  quota::parse_decimal(quota_text));
  const quota::BettiVector counted = quota::betti_by_counting(system);

  std::ofstream file;
  std::ostream& os = open_sink(out_path, file);
  const std::string format = resolve_format(format_flag, out_path, "json");

  bool agree = true;
  quota::BettiVector ranked;
  if (with_oracle) {
    ranked = quota::reduced_betti(quota::build_complex(system));
    agree = (counted == ranked);
  }

  if (format == "csv") {
    os << "m,betti\n";
    for (std::size_t m = 0; m < counted.values.size(); ++m)
      os << m << ',' << counted.values[m] << '\n';
  } else {
    ordered_json out{{"betti", betti_values_json(counted)}};
    if (with_oracle) {
      out["oracle"] = betti_values_json(ranked);
      out["agree"] = agree;
    }
    os << out.dump() << '\n';
  }
  if (!agree) {
    std::cerr << "counting theorem and homology oracle disagree: " << quota::to_string(counted)
              << " vs " << quota::to_string(ranked) << '\n';
    return kExitVerifyFailure;
  }
  return kExitOk;
}

int run_expect(int n, long long q, double p, std::optional<int> m, const std::string& format_flag,
               const std::string& out_path) {
  const quota::BernoulliParams params(n, q, p);
  std::ofstream file;
  std::ostream& os = open_sink(out_path, file);
  if (m) {
    os << ordered_json(quota::expected_betti(params, *m)).dump() << '\n';
    return kExitOk;
  }
  const quota::ExpectationCurve curve = quota::expectation_curve(params);
  const std::string format = resolve_format(format_flag, out_path, "csv");
  if (format == "json") {
    ordered_json rows = ordered_json::array();
    for (const auto& [mm, value] : curve.values)
      rows.push_back({{"m", mm}, {"expectation", value}});
    os << ordered_json{{"curve", std::move(rows)}}.dump() << '\n';
  } else {
    quota::write_expectation_csv(curve, os);
  }
  return kExitOk;
}

int run_simulate(int n, long long q, double p, int m, long long trials,
                 std::optional<std::uint64_t> seed_flag, const std::string& out_path) {
  const quota::BernoulliParams params(n, q, p);
  if (trials < 1) throw std::invalid_argument("simulate: --trials must be >= 1");
  const std::uint64_t seed = seed_flag ? *seed_flag : fresh_seed();
  const quota::McEstimate estimate = quota::monte_carlo_expectation(params, m, trials, seed);
  ordered_json out{{"N", n},
                   {"q", q},
                   {"p", p},
                   {"m", m},
                   {"trials", estimate.trials},
                   {"seed", estimate.seed},
                   {"mean", estimate.mean},
                   {"std_error", estimate.std_error},
                   {"rng_algorithm", quota::kRngAlgorithm}};
  std::ofstream file;
  std::ostream& os = open_sink(out_path, file);
  os << out.dump() << '\n';
  return kExitOk;
}

int run_peak(double p, double d, const std::vector<long long>& q_list,
             const std::string& out_path) {
  if (!(d > 0.5)) throw std::invalid_argument("peak: requires --d > 0.5");
  const quota::PeakSolution solution = quota::solve_tau_infinity(p, d);
  std::cout << ordered_json{{"tau_infinity", solution.tau_infinity},
                            {"branch", quota::to_string(solution.branch)},
                            {"discriminant", solution.discriminant}}
                   .dump()
            << '\n';
  if (!q_list.empty()) {
    const auto rows = quota::peak_convergence_study(p, d, q_list);
    std::ofstream file;
    std::ostream& os = open_sink(out_path, file);
    quota::write_peak_convergence_csv(rows, os);
  }
  return kExitOk;
}

int run_unimodal(int n, long long q, double p, const std::string& out_path) {
  const quota::UnimodalityReport report =
      quota::check_unimodality(quota::BernoulliParams(n, q, p));
  ordered_json out{{"is_unimodal", report.is_unimodal}, {"m_peak", report.peak.m_peak}};
  if (report.peak.tie) out["m_peak_tie"] = *report.peak.tie;
  std::cout << out.dump() << '\n';
  std::ofstream file;
  std::ostream& os = open_sink(out_path, file);
  quota::write_quotient_csv(report.table, os);
  return report.is_unimodal ? kExitOk : kExitVerifyFailure;
}

int run_regions(double p_min, double p_max, double d_min, double d_max, int resolution,
                const std::string& out_path) {
  const quota::RegionReport report = quota::region_grid(p_min, p_max, d_min, d_max, resolution);
  {
    std::ofstream file;
    std::ostream& os = open_sink(out_path, file);
    quota::write_region_csv(report, os);
  }
  std::ostream& summary = out_path.empty() ? std::cerr : std::cout;
  summary << "rows=" << report.rows.size()
          << " BOTH_NEG=" << report.count(quota::RegionClass::BothNeg)
          << " BOTH_POS=" << report.count(quota::RegionClass::BothPos)
          << " MIXED=" << report.count(quota::RegionClass::Mixed) << '\n';
  return kExitOk;
}

int run_verify(const std::string& level) {
  const quota::VerifyReport report = quota::run_verification(
      level == "full" ? quota::VerifyLevel::Full : quota::VerifyLevel::Quick);
  for (const quota::SuiteResult& suite : report.suites)
    std::cout << (suite.passed ? "[PASS] " : "[FAIL] ") << suite.name << " - " << suite.detail
              << '\n';
  if (!report.ok()) {
    std::cout << "first counterexample: " << report.first_failure() << '\n';
    return kExitVerifyFailure;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quota-complex Betti numbers and the Bernoulli random quota model"};
  app.require_subcommand(1);

  auto* betti = app.add_subcommand("betti", "Betti vector of a quota complex from a weights file");
  std::string weights_path, quota_text, betti_format, betti_out;
  bool with_oracle = false;
  betti->add_option("weights", weights_path, "weights file: one positive decimal per line")
      ->required();
  betti->add_option("--q", quota_text, "quota (positive decimal)")->required();
  betti->add_flag("--oracle", with_oracle, "also run the homology oracle and report agreement");
  betti->add_option("--format", betti_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  betti->add_option("--out", betti_out, "write output to a file");

  auto* expect = app.add_subcommand("expect", "expected Betti numbers of the Bernoulli model");
  int expect_n = 0;
  long long expect_q = 0;
  double expect_p = 0.0;
  std::optional<int> expect_m;
  std::string expect_format, expect_out;
  expect->add_option("--n", expect_n, "number of random vertices N")->required();
  expect->add_option("--q", expect_q, "integer quota >= 2")->required();
  expect->add_option("--p", expect_p, "Bernoulli probability")->required();
  expect->add_option("--m", expect_m, "single dimension (omit for the full support curve)");
  expect->add_option("--format", expect_format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  expect->add_option("--out", expect_out, "write output to a file");

  auto* simulate =
      app.add_subcommand("simulate", "Monte Carlo estimate of an expected Betti number");
  int sim_n = 0, sim_m = 0;
  long long sim_q = 0, sim_trials = 0;
  double sim_p = 0.0;
  std::optional<std::uint64_t> sim_seed;
  std::string sim_out;
  simulate->add_option("--n", sim_n, "number of random vertices N")->required();
  simulate->add_option("--q", sim_q, "integer quota >= 2")->required();
  simulate->add_option("--p", sim_p, "Bernoulli probability")->required();
  simulate->add_option("--m", sim_m, "dimension")->required();
  simulate->add_option("--trials", sim_trials, "number of samples")->required();
  simulate->add_option("--seed", sim_seed, "64-bit seed (default: fresh, recorded in output)");
  simulate->add_option("--out", sim_out, "write output to a file");

  auto* peak = app.add_subcommand("peak", "asymptotic peak location tau_infinity");
  double peak_p = 0.0, peak_d = 0.0;
  std::vector<long long> peak_q_list;
  std::string peak_out;
  peak->add_option("--p", peak_p, "Bernoulli probability in (0,1)")->required();
  peak->add_option("--d", peak_d, "density d = (N+1)/q, > 1/2")->required();
  peak->add_option("--q-list", peak_q_list, "quotas for a finite-q convergence table")
      ->delimiter(',');
  peak->add_option("--out", peak_out, "write the convergence table to a file");

  auto* unimodal =
      app.add_subcommand("unimodal", "verify unimodality of the expectation curve, emit the "
                                     "forward-quotient table");
  int uni_n = 0;
  long long uni_q = 0;
  double uni_p = 0.0;
  std::string uni_out;
  unimodal->add_option("--n", uni_n, "number of random vertices N")->required();
  unimodal->add_option("--q", uni_q, "integer quota >= 2")->required();
  unimodal->add_option("--p", uni_p, "Bernoulli probability in (0,1)")->required();
  unimodal->add_option("--out", uni_out, "write the m,expectation,M1,M2 table to a file");

  auto* regions = app.add_subcommand("regions", "sign classes of (c1, c2) on a (p, d) grid");
  double r_pmin = quota::kDefaultRegionPMin, r_pmax = quota::kDefaultRegionPMax;
  double r_dmin = quota::kDefaultRegionDMin, r_dmax = quota::kDefaultRegionDMax;
  int r_res = 200;
  std::string regions_out;
  regions->add_option("--pmin", r_pmin, "grid lower p (default 0.01)");
  regions->add_option("--pmax", r_pmax, "grid upper p (default 0.99)");
  regions->add_option("--dmin", r_dmin, "grid lower d (default 0.51)");
  regions->add_option("--dmax", r_dmax, "grid upper d (default 2)");
  regions->add_option("--res", r_res, "grid resolution per axis (default 200)");
  regions->add_option("--out", regions_out, "CSV output file (default: stdout)");

  auto* verify = app.add_subcommand("verify", "run the cross-oracle verification suites");
  std::string verify_level = "quick";
  verify->add_option("--level", verify_level, "quick or full")
      ->check(CLI::IsMember({"quick", "full"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (betti->parsed())
      return run_betti(weights_path, quota_text, with_oracle, betti_format, betti_out);
    if (expect->parsed())
      return run_expect(expect_n, expect_q, expect_p, expect_m, expect_format, expect_out);
    if (simulate->parsed())
      return run_simulate(sim_n, sim_q, sim_p, sim_m, sim_trials, sim_seed, sim_out);
    if (peak->parsed()) return run_peak(peak_p, peak_d, peak_q_list, peak_out);
    if (unimodal->parsed()) return run_unimodal(uni_n, uni_q, uni_p, uni_out);
    if (regions->parsed()) return run_regions(r_pmin, r_pmax, r_dmin, r_dmax, r_res, regions_out);
    if (verify->parsed()) return run_verify(verify_level);
  } catch (const std::domain_error& e) {
    std::cerr << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
