#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "app.hpp"
#include "json.hpp"
#include "report.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = nlslab::cli::run_subcommand(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("git blob hash matches git for known content") {
  CHECK(nlslab::cli::git_blob_sha1("") == "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
  CHECK(nlslab::cli::git_blob_sha1("hello\n") == "ce013625030ba8dba906f756967f9e9ca394464a");
}

TEST_CASE("numbers are written with 17 significant digits") {
  std::ostringstream out;
  nlslab::cli::write_json(out, nlslab::cli::Json{{"x", 0.1}, {"n", 3}, {"bad", std::nan("")}});
  CHECK(out.str().find("0.10000000000000001") != std::string::npos);
  CHECK(out.str().find("\"n\": 3") != std::string::npos);
  CHECK(out.str().find("\"bad\": null") != std::string::npos);
}

TEST_CASE("unknown flags and missing subcommands are usage errors") {
  CHECK(run({"ground", "--bogus"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("config validation reports every bad field") {
  const Run r = run({"ground", "--n", "100", "--omega", "1.1", "--omega-minus-lambda", "0.1", "--p", "0.5"});
  CHECK(r.code == 2);
  const json e = json::parse(r.err);
  CHECK(e["error_kind"] == "config");
  std::set<std::string> fields;
  for (const auto& item : e["context"]["errors"]) fields.insert(item["field"].get<std::string>());
  CHECK(fields == std::set<std::string>{"n", "omega", "p"});
}

TEST_CASE("critical-period example") {
  const Run r = run({"critical-period", "--p", "3", "--omega-minus-lambda", "0.01", "--n", "256"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["command"] == "critical-period");
  CHECK(j["result"]["lambda_omega"].get<double>() == doctest::Approx(0.02).epsilon(0.01));
  CHECK(j["result"]["L_c"].get<double>() == doctest::Approx(7.07).epsilon(0.01));
  CHECK(j["content_hash"].get<std::string>().size() == 40);
}

TEST_CASE("reports are byte-identical across runs and the hash tracks the config") {
  const std::vector<std::string> args{"transverse", "--omega-minus-lambda", "0.02", "--L-over-Lc", "1.5", "--n", "128"};
  const Run a = run(args);
  const Run b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  auto other = args;
  other.back() = "256";
  CHECK(json::parse(run(other).out)["content_hash"] != json::parse(a.out)["content_hash"]);
}

TEST_CASE("TOML config with flag overrides") {
  const auto path = std::filesystem::temp_directory_path() / "nlslab_cli_test.toml";
  {
    std::ofstream out(path);
    out << "p = 2\nomega-minus-lambda = 0.02\nn = 128\n";
  }
  const json from_file = json::parse(run({"--config", path.string(), "critical-period"}).out);
  CHECK(from_file["config"]["p"] == 2);
  CHECK(from_file["config"]["grid"]["n"] == 128);
  const json overridden = json::parse(run({"--config", path.string(), "critical-period", "--p", "3"}).out);
  CHECK(overridden["config"]["p"] == 3);
  {
    std::ofstream out(path);
    out << "unknown-key = 1\n";
  }
  CHECK(run({"--config", path.string(), "critical-period"}).code == 2);
  std::filesystem::remove(path);
}

TEST_CASE("transverse needs a period; the curve does not") {
  const Run missing = run({"transverse", "--n", "128"});
  CHECK(missing.code == 2);
  CHECK(json::parse(missing.err)["context"]["errors"][0]["field"] == "L");
  const Run curve = run({"transverse", "--curve", "--samples", "5", "--n", "128"});
  REQUIRE(curve.code == 0);
  CHECK(curve.out.rfind("a,mu\n", 0) == 0);
  CHECK(std::count(curve.out.begin(), curve.out.end(), '\n') == 6);
}

TEST_CASE("numerical failures carry error_kind and context") {
  const Run r = run({"ground", "--n", "128", "--omega", "0.5"});
  CHECK(r.code == 2);
  CHECK(json::parse(r.err)["error_kind"] == "domain");
  const Run nc = run({"ground", "--n", "128", "--omega-minus-lambda", "0.3", "--max-iterations", "1", "--tol", "1e-14"});
  CHECK(nc.code == 3);
  const json e = json::parse(nc.err);
  CHECK(e["error_kind"] == "non_convergence");
  CHECK(e["context"].contains("last_residual"));
}

TEST_CASE("sweep: header only for an empty grid") {
  const Run r = run({"sweep", "--p-list", "--n", "128"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "p,omega,L,L_c,mu_star,R,verdict,error\n");
}

TEST_CASE("sweep: the verdict flips once across L_c and R decides at L_c") {
  const Run r = run({"sweep", "--n", "128", "--p-list", "3", "--eps-list", "0.01", "--L-over-Lc-list", "0.5", "0.9",
                     "1", "1.1", "2"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  std::vector<std::string> verdicts;
  std::vector<std::string> rs;
  while (std::getline(lines, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    REQUIRE(cells.size() >= 7);
    rs.push_back(cells[5]);
    verdicts.push_back(cells[6]);
  }
  CHECK(verdicts == std::vector<std::string>{"stable", "stable", "stable", "unstable", "unstable"});
  CHECK(rs[0].empty());
  CHECK_FALSE(rs[2].empty());
}

TEST_CASE("sweep: failing rows are recorded and the sweep continues") {
  const Run r = run({"sweep", "--n", "128", "--p-list", "1.5", "3", "--eps-list", "0.01", "--L-over-Lc-list", "2"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find(",error,domain") != std::string::npos);
  CHECK(r.out.find(",unstable,") != std::string::npos);
}

TEST_CASE("sweep output does not depend on the worker count") {
  const std::vector<std::string> args{"sweep", "--n", "128", "--p-list", "2", "3", "--eps-list", "0.01", "0.02",
                                      "--L-over-Lc-list", "0.8", "1.2"};
  setenv("NLS_LAB_THREADS", "1", 1);
  const Run one = run(args);
  setenv("NLS_LAB_THREADS", "3", 1);
  const Run three = run(args);
  unsetenv("NLS_LAB_THREADS");
  CHECK(one.out == three.out);
}

TEST_CASE("evolve emits the time series and NLSF snapshots") {
  const auto prefix = (std::filesystem::temp_directory_path() / "nlslab_snap").string();
  const Run r = run({"evolve", "--n", "64", "--ny", "8", "--L-over-Lc", "1.25", "--dt", "0.01", "--tend", "0.5",
                     "--record-every", "10", "--snapshot-every", "5", "--snapshot-prefix", prefix});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("t,Q,E,m0,m1,m2,orbital_distance\n", 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 7);
  CHECK(std::filesystem::exists(prefix + "_000000.nlsf"));
  CHECK(std::filesystem::exists(prefix + "_000005.nlsf"));
  std::filesystem::remove(prefix + "_000000.nlsf");
  std::filesystem::remove(prefix + "_000005.nlsf");
}

TEST_CASE("ground report fields and field dump") {
  const auto dump = (std::filesystem::temp_directory_path() / "nlslab_phi.nlsf").string();
  const Run r = run({"ground", "--n", "128", "--dump", dump});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  for (const char* key : {"omega", "p", "residual", "seed_error", "q1", "linf"}) CHECK(j["result"].contains(key));
  CHECK(std::filesystem::file_size(dump) == 17 + 128 * 16);
  std::filesystem::remove(dump);
}

TEST_CASE("branch CSV and bifurcation report") {
  const Run b = run({"branch", "--branch-n", "64", "--branch-ny", "8", "--steps", "3"});
  REQUIRE(b.code == 0);
  CHECK(b.out.rfind("a,omega_a,q2,lambda2\n", 0) == 0);
  CHECK(std::count(b.out.begin(), b.out.end(), '\n') == 5);
  const Run r = run({"bifurcation", "--omega0", "1.01", "--p", "3", "--n", "128"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["result"]["verdict"] == "stable");
}

TEST_CASE("pstar lands near the critical exponent") {
  const Run r = run({"pstar", "--eps", "1e-3", "--bracket", "4.0", "4.3", "--n", "256", "--ptol", "1e-2"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["result"]["p_star"].get<double>() == doctest::Approx(4.137458).epsilon(0.012));
}

TEST_CASE("verify rejects unknown criteria") { CHECK(run({"verify", "--only", "11"}).code == 2); }
