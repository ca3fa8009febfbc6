#include "qthermo/cli.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <sstream>
#include <vector>

#include <json.hpp>

using namespace qthermo::cli;
using nlohmann::json;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "qthermo");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

}  // namespace

TEST(Cli, BoundReport) {
  const Result r = invoke({"bound", "--n", "1"});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["erased_bits"].get<double>(), 1.5);
  EXPECT_EQ(j["lower_bound_bits"].get<int>(), 1);
  EXPECT_EQ(j["n"].get<int>(), 1);
  EXPECT_NEAR(j["heat_joules"].get<double>(), 1.5 * 2.87097888508e-21, 1e-32);
  EXPECT_NEAR(j["ceiling_joules"].get<double>(), 2.87097888508e-21, 1e-32);
  EXPECT_EQ(j["config"]["subcommand"], "bound");
  EXPECT_EQ(j["config"]["seed"].get<int>(), 0);
  EXPECT_EQ(j["config"]["temperature"].get<double>(), 300.0);
}

TEST(Cli, BoundPrintsTwelveSignificantDigits) {
  const Result r = invoke({"bound", "--n", "2"});
  ASSERT_EQ(r.status, kExitOk);
  EXPECT_NE(r.out.find("\"erased_bits\": 2.55043801835"), std::string::npos) << r.out;
}

TEST(Cli, BoundCsvTable) {
  const Result r = invoke({"bound", "--n", "1", "--n-to", "3", "--format", "csv"});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line.rfind("# config", 0), 0u);
  std::getline(lines, line);
  EXPECT_EQ(line, "n,erased_bits,lower_bound_bits,heat_joules,ceiling_joules");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 3);
}

TEST(Cli, ErrorStatuses) {
  EXPECT_EQ(invoke({"bound", "--n", "25"}).status, kExitError);
  EXPECT_EQ(invoke({"bound", "--n", "1", "--temperature", "-3"}).status, kExitError);
  EXPECT_EQ(invoke({"frobnicate"}).status, kExitUsage);
  EXPECT_EQ(invoke({"bound", "--n", "1", "--bogus"}).status, kExitUsage);
  EXPECT_EQ(invoke({}).status, kExitUsage);
  EXPECT_EQ(invoke({"box", "--protocol", "nope", "--policy", "honest"}).status, kExitUsage);
  EXPECT_EQ(invoke({"machine"}).status, kExitUsage);
  EXPECT_EQ(invoke({"machine", "--dyadic", "13"}).status, kExitError);
  EXPECT_EQ(invoke({"machine", "--file", "/nonexistent.json"}).status, kExitError);
  EXPECT_EQ(invoke({"--help"}).status, kExitOk);
}

TEST(Cli, PerpetuumExitStatusSignalsViolation) {
  const Result free = invoke({"box", "--protocol", "perpetuum", "--policy", "pt-free", "--seed", "0"});
  ASSERT_EQ(free.status, kExitViolation) << free.err;
  const json j = json::parse(free.out);
  EXPECT_TRUE(j["audit"]["violation_flag"].get<bool>());
  EXPECT_NEAR(j["audit"]["net_work_extracted_kT"].get<double>(), std::numbers::ln2, 1e-11);
  EXPECT_EQ(j["trials"].size(), 1u);
  EXPECT_FALSE(j["trials"][0]["ledger"].empty());

  const Result honest = invoke({"box", "--protocol", "perpetuum", "--policy", "honest",
                                "--trials", "50", "--summary-only"});
  ASSERT_EQ(honest.status, kExitOk) << honest.err;
  const json h = json::parse(honest.out);
  EXPECT_FALSE(h["audit"]["violation_flag"].get<bool>());
  EXPECT_LE(h["audit"]["net_work_extracted_kT"].get<double>(), 0.0);
  EXPECT_FALSE(h.contains("trials"));
}

TEST(Cli, OtherBoxProtocols) {
  const json rep = json::parse(invoke({"box", "--protocol", "repeatability", "--policy", "honest",
                                       "--trials", "200", "--summary-only"}).out);
  EXPECT_EQ(rep["audit"]["agreement_rate"].get<double>(), 1.0);

  const json reset = json::parse(invoke({"box", "--protocol", "reset", "--policy", "honest"}).out);
  EXPECT_NEAR(reset["audit"]["work_on_system_per_trial_kT"].get<double>(), std::numbers::ln2, 1e-11);
  EXPECT_EQ(reset["trials"][0]["final_side"].get<int>(), 0);

  const json rnd = json::parse(invoke({"box", "--protocol", "rand", "--policy", "pt-free",
                                       "--trials", "400", "--summary-only"}).out);
  EXPECT_EQ(rnd["audit"]["outputs"]["01"].get<int>(), 0);
  EXPECT_FALSE(rnd["audit"]["violation_flag"].get<bool>());

  const Result csv = invoke({"box", "--protocol", "perpetuum", "--policy", "pt-free",
                             "--trials", "3", "--format", "csv"});
  EXPECT_EQ(csv.status, kExitViolation);
  EXPECT_NE(csv.out.find("trial,seed,net_work_extracted_kT,heat_kT,record_bits,violation_flag"),
            std::string::npos);
  EXPECT_NE(csv.out.find("\ntotal,"), std::string::npos);
}

TEST(Cli, IdenticalConfigIsByteIdentical) {
  const std::vector<std::string> args{"box", "--protocol", "perpetuum", "--policy", "honest",
                                      "--seed", "123", "--trials", "5"};
  EXPECT_EQ(invoke(args).out, invoke(args).out);
  const std::vector<std::string> sim{"simulate", "--dyadic", "1", "--steps", "20000", "--seed", "5"};
  EXPECT_EQ(invoke(sim).out, invoke(sim).out);
}

TEST(Cli, MachineDyadicAndFile) {
  const auto path = std::filesystem::temp_directory_path() / "qthermo_cli_machine.json";
  const Result r = invoke({"machine", "--dyadic", "2", "--emit", path.string()});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_NEAR(j["statistical_complexity_bits"].get<double>(), 3.0, 1e-11);
  EXPECT_NEAR(j["mean_erased_bits"].get<double>(), j["formula_erased_bits"].get<double>(), 1e-11);

  const Result f = invoke({"machine", "--file", path.string()});
  std::filesystem::remove(path);
  ASSERT_EQ(f.status, kExitOk) << f.err;
  EXPECT_EQ(json::parse(f.out)["mean_erased_bits"], j["mean_erased_bits"]);
}

TEST(Cli, SimulateMatchesAnalytic) {
  const Result r = invoke({"simulate", "--dyadic", "2", "--steps", "1000000", "--seed", "7"});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_TRUE(j["within_3sigma"].get<bool>()) << r.out;
  EXPECT_NEAR(j["analytic_erased_bits"].get<double>(), 2.55043801835, 1e-10);
  EXPECT_EQ(invoke({"simulate", "--dyadic", "2", "--steps", "100"}).status, kExitError);
}
