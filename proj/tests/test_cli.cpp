#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "quota/analysis.hpp"
#include "quota/bernoulli_model.hpp"

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
  const std::string command = std::string(QUOTA_BETTI_CLI) + " " + args + " 2>&1";
  RunResult result;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buffer[4096];
  while (std::size_t got = std::fread(buffer, 1, sizeof buffer, pipe))
    result.output.append(buffer, got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string write_temp(const std::string& name, const std::string& contents) {
  const std::string path = std::string("cli_tmp_") + name;
  std::ofstream(path) << contents;
  return path;
}

int count_lines(const std::string& text) {
  int lines = 0;
  for (char c : text) lines += (c == '\n');
  return lines;
}

}  // namespace

TEST_CASE("betti subcommand") {
  const std::string weights = write_temp("w1347.txt", "1\n3\n4\n7\n");
  SUBCASE("json output") {
    const RunResult r12 = run_cli("betti " + weights + " --q 12");
    CHECK(r12.exit_code == 0);
    CHECK(r12.output == "{\"betti\":[0,1]}\n");
    const RunResult r10 = run_cli("betti " + weights + " --q 10");
    CHECK(r10.exit_code == 0);
    CHECK(r10.output == "{\"betti\":[]}\n");
  }
  SUBCASE("oracle agreement") {
    const RunResult r = run_cli("betti " + weights + " --q 12 --oracle");
    CHECK(r.exit_code == 0);
    const json parsed = json::parse(r.output);
    CHECK(parsed["agree"] == true);
    CHECK(parsed["betti"] == parsed["oracle"]);
  }
  SUBCASE("csv format") {
    const RunResult r = run_cli("betti " + weights + " --q 12 --format csv");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "m,betti\n0,0\n1,1\n");
  }
  SUBCASE("zero weight is an input error with a line number") {
    const std::string bad = write_temp("zero.txt", "1\n0\n4\n");
    const RunResult r = run_cli("betti " + bad + " --q 5");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("line 2") != std::string::npos);
  }
  SUBCASE("malformed line is an input error") {
    const std::string bad = write_temp("junk.txt", "1\nxyz\n");
    const RunResult r = run_cli("betti " + bad + " --q 5");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("line 2") != std::string::npos);
  }
  SUBCASE("missing file") {
    CHECK(run_cli("betti does_not_exist.txt --q 5").exit_code == 2);
  }
  SUBCASE("empty complex is a domain error") {
    const std::string heavy = write_temp("heavy.txt", "2\n3\n");
    CHECK(run_cli("betti " + heavy + " --q 2").exit_code == 3);
  }
  SUBCASE("deterministic output") {
    CHECK(run_cli("betti " + weights + " --q 12").output ==
          run_cli("betti " + weights + " --q 12").output);
  }
}

TEST_CASE("expect subcommand") {
  SUBCASE("single value round-trips against the library") {
    const RunResult r = run_cli("expect --n 6 --q 5 --p 0.5 --m 2");
    CHECK(r.exit_code == 0);
    const double value = json::parse(r.output).get<double>();
    CHECK(std::abs(value - 7.5) <= 1e-12 * 7.5);
    CHECK(value == quota::expected_betti(quota::BernoulliParams(6, 5, 0.5), 2));
  }
  SUBCASE("curve over the support") {
    const RunResult r = run_cli("expect --n 6 --q 5 --p 0.5");
    CHECK(r.exit_code == 0);
    CHECK(count_lines(r.output) == 4);  // header + m = 1,2,3
    CHECK(r.output.substr(0, 14) == "m,expectation\n");
  }
  SUBCASE("empty support yields only the header") {
    const RunResult r = run_cli("expect --n 2 --q 9 --p 0.5");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "m,expectation\n");
  }
  SUBCASE("curve CSV reparses to the recomputed values") {
    const RunResult r = run_cli("expect --n 17 --q 9 --p 0.3");
    std::istringstream in(r.output);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      const auto comma = line.find(',');
      const int m = std::stoi(line.substr(0, comma));
      const double value = std::stod(line.substr(comma + 1));
      const double recomputed = quota::expected_betti(quota::BernoulliParams(17, 9, 0.3), m);
      CHECK(std::abs(value - recomputed) <= 1e-10 * std::max(1.0, recomputed));
    }
  }
  SUBCASE("json curve format") {
    const RunResult r = run_cli("expect --n 6 --q 5 --p 0.5 --format json");
    CHECK(r.exit_code == 0);
    const json parsed = json::parse(r.output);
    REQUIRE(parsed["curve"].size() == 3);
    CHECK(parsed["curve"][1]["m"] == 2);
    CHECK(std::abs(parsed["curve"][1]["expectation"].get<double>() - 7.5) <= 1e-12 * 7.5);
  }
  SUBCASE("--out with a .csv extension implies CSV") {
    const RunResult r = run_cli("expect --n 6 --q 5 --p 0.5 --out cli_tmp_curve.csv");
    CHECK(r.exit_code == 0);
    std::ifstream csv("cli_tmp_curve.csv");
    std::string header;
    std::getline(csv, header);
    CHECK(header == "m,expectation");
  }
  SUBCASE("out-of-range p") {
    CHECK(run_cli("expect --n 6 --q 5 --p 1.5 --m 2").exit_code == 2);
    CHECK(run_cli("expect --n 6 --q 5 --p -0.1 --m 2").exit_code == 2);
  }
}

TEST_CASE("simulate subcommand") {
  SUBCASE("same seed, byte-identical output") {
    const std::string args = "simulate --n 6 --q 5 --p 0.5 --m 2 --trials 20000 --seed 77";
    const RunResult a = run_cli(args);
    const RunResult b = run_cli(args);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    const json parsed = json::parse(a.output);
    CHECK(parsed["rng_algorithm"] == quota::kRngAlgorithm);
    CHECK(parsed["trials"] == 20000);
    CHECK(std::abs(parsed["mean"].get<double>() - 7.5) <=
          4.0 * parsed["std_error"].get<double>());
  }
  SUBCASE("omitted seed is still recorded") {
    const json parsed =
        json::parse(run_cli("simulate --n 6 --q 5 --p 0.5 --m 2 --trials 10").output);
    CHECK(parsed.contains("seed"));
  }
  SUBCASE("deterministic single trial at p = 0") {
    const json parsed =
        json::parse(run_cli("simulate --n 9 --q 6 --p 0 --m 4 --trials 1 --seed 3").output);
    CHECK(parsed["mean"].get<double>() == 126.0);  // C(9,5)
  }
  SUBCASE("zero trials") {
    CHECK(run_cli("simulate --n 6 --q 5 --p 0.5 --m 2 --trials 0").exit_code == 2);
  }
}

TEST_CASE("peak subcommand") {
  SUBCASE("near-degenerate p still lands on (4d-1)/(4d)") {
    const RunResult r = run_cli("peak --p 0.17157287525 --d 1");
    CHECK(r.exit_code == 0);
    const json parsed = json::parse(r.output);
    CHECK(std::abs(parsed["tau_infinity"].get<double>() - 0.75) <= 1e-9);
    CHECK(parsed.contains("branch"));
    CHECK(parsed.contains("discriminant"));
  }
  SUBCASE("quadratic reference value") {
    const json parsed = json::parse(run_cli("peak --p 0.5 --d 1").output);
    CHECK(std::abs(parsed["tau_infinity"].get<double>() - 0.6306019374818707) <= 1e-10);
  }
  SUBCASE("emitted JSON reproduces the library computation") {
    const json parsed = json::parse(run_cli("peak --p 0.37 --d 1.21").output);
    const quota::PeakSolution recomputed = quota::solve_tau_infinity(0.37, 1.21);
    CHECK(std::abs(parsed["tau_infinity"].get<double>() - recomputed.tau_infinity) <= 1e-10);
    CHECK(std::abs(parsed["discriminant"].get<double>() - recomputed.discriminant) <= 1e-10);
    CHECK(parsed["branch"].get<std::string>() == quota::to_string(recomputed.branch));
  }
  SUBCASE("convergence table") {
    const RunResult r = run_cli("peak --p 0.5 --d 1 --q-list 100,400");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("q,m_peak,tau_q,tau_inf,gap") != std::string::npos);
    CHECK(r.output.find("\n100,61,") != std::string::npos);
    CHECK(r.output.find("\n400,251,") != std::string::npos);
  }
  SUBCASE("d at or below 1/2 is a usage error") {
    CHECK(run_cli("peak --p 0.5 --d 0.4").exit_code == 2);
    CHECK(run_cli("peak --p 0.5 --d 0.5").exit_code == 2);
  }
}

TEST_CASE("unimodal subcommand") {
  SUBCASE("peak JSON plus quotient table") {
    const RunResult r = run_cli("unimodal --n 17 --q 9 --p 0.5");
    CHECK(r.exit_code == 0);
    const auto newline = r.output.find('\n');
    const json parsed = json::parse(r.output.substr(0, newline));
    CHECK(parsed["is_unimodal"] == true);
    CHECK(parsed["m_peak"] == 5);
    CHECK(r.output.find("m,expectation,M1,M2\n3,") != std::string::npos);
  }
  SUBCASE("d below 1/2 is a usage error") {
    CHECK(run_cli("unimodal --n 4 --q 11 --p 0.5").exit_code == 2);
  }
}

TEST_CASE("regions subcommand") {
  SUBCASE("grid CSV with class summary") {
    const RunResult r = run_cli("regions --pmin 0.05 --pmax 0.95 --dmin 0.55 --dmax 1.95 --res 3 "
                                "--out cli_tmp_regions.csv");
    CHECK(r.exit_code == 0);
    CHECK(r.output.substr(0, 7) == "rows=9 ");
    std::ifstream csv("cli_tmp_regions.csv");
    std::string header;
    std::getline(csv, header);
    CHECK(header == "p,d,tau_inf,c1,c2,class");
    int rows = 0;
    std::string line;
    while (std::getline(csv, line)) {
      ++rows;
      // reparse and recompute the derived identity from the emitted digits
      std::istringstream fields(line);
      std::string p_s, d_s, tau_s, c1_s, c2_s, cls;
      std::getline(fields, p_s, ',');
      std::getline(fields, d_s, ',');
      std::getline(fields, tau_s, ',');
      std::getline(fields, c1_s, ',');
      std::getline(fields, c2_s, ',');
      std::getline(fields, cls, ',');
      const double tau = std::stod(tau_s), c1 = std::stod(c1_s), c2 = std::stod(c2_s);
      CHECK(std::abs(c2 - c1 - 1.0 / tau) <= 2e-9);  // 10 significant digits in the CSV
      CHECK((cls == "BOTH_NEG" || cls == "BOTH_POS" || cls == "MIXED"));
      const quota::RegionClass recomputed =
          quota::classify_region(std::stod(p_s), std::stod(d_s));
      CHECK(cls == quota::to_string(recomputed));
    }
    CHECK(rows == 9);
  }
  SUBCASE("unwritable output path") {
    CHECK(run_cli("regions --res 2 --out /nonexistent_dir/x.csv").exit_code == 2);
  }
  SUBCASE("invalid window") {
    CHECK(run_cli("regions --pmin 0.9 --pmax 0.1 --res 3").exit_code == 2);
  }
}

TEST_CASE("verify subcommand quick level") {
  const RunResult r = run_cli("verify --level quick");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("[PASS] counting-vs-homology") != std::string::npos);
  CHECK(r.output.find("[FAIL]") == std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("betti").exit_code == 2);
  CHECK(run_cli("expect --n 6").exit_code == 2);
  CHECK(run_cli("nonsense").exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
}
