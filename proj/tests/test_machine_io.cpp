#include "qthermo/machine_io.hpp"

#include <gtest/gtest.h>

#include <filesystem>

#include "qthermo/dyadic_qubit.hpp"
#include "qthermo/errors.hpp"

using namespace qthermo;
using nlohmann::json;

TEST(MachineIo, ParsesMinimalDefinition) {
  const json doc = json::parse(R"({
    "states": ["a", "b"],
    "choices": ["x"],
    "outcomes": ["0", "1"],
    "kernel": [["a", "x", "0", "a", 0.5], ["a", "x", "1", "b", 0.5],
               ["b", "x", "0", "a", 0.5], ["b", "x", "1", "b", 0.5]]
  })");
  const EpsilonMachine m = machine_from_json(doc);
  EXPECT_EQ(m.state_count(), 2u);
  EXPECT_EQ(m.choice_probabilities()[0], 1.0);
  EXPECT_NEAR(mean_erased_information(m).bits(), 1.0, 1e-12);
}

TEST(MachineIo, ChoiceProbabilitiesAllOrNothing) {
  const json doc = json::parse(R"({
    "states": ["a"], "outcomes": ["o"],
    "choices": [{"id": "x", "probability": 1.0}, {"id": "y"}],
    "kernel": [["a", "x", "o", "a", 1.0], ["a", "y", "o", "a", 1.0]]
  })");
  EXPECT_THROW(machine_from_json(doc), domain_error);
}

TEST(MachineIo, SchemaErrors) {
  EXPECT_THROW(machine_from_json(json::parse(R"({"states": ["a"]})")), domain_error);
  EXPECT_THROW(machine_from_json(json::parse(R"({
    "states": ["a", "a"], "choices": ["x"], "outcomes": ["o"], "kernel": []})")),
               domain_error);
  EXPECT_THROW(machine_from_json(json::parse(R"({
    "states": ["a"], "choices": ["x"], "outcomes": ["o"],
    "kernel": [["a", "x", "o", "zz", 1.0]]})")),
               domain_error);
  EXPECT_THROW(machine_from_json(json::parse(R"({
    "states": ["a"], "choices": ["x"], "outcomes": ["o"],
    "kernel": [["a", "x", "o", "a"]]})")),
               domain_error);
  EXPECT_THROW(load_machine("/nonexistent/machine.json"), domain_error);
}

TEST(MachineIo, DyadicMachineSurvivesFileRoundTrip) {
  const EpsilonMachine m = build_dyadic_machine(FamilyIndex(2));
  const auto path = std::filesystem::temp_directory_path() / "qthermo_dyadic2.json";
  save_machine(m, path);
  const EpsilonMachine back = load_machine(path);
  std::filesystem::remove(path);
  EXPECT_EQ(back.states(), m.states());
  EXPECT_EQ(back.choices(), m.choices());
  EXPECT_EQ(mean_erased_information(back).bits(), mean_erased_information(m).bits());
  EXPECT_EQ(machine_to_json(back), machine_to_json(m));
}
