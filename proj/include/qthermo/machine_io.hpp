#pragma once

// Machine-definition files (JSON):
//
//   {
//     "states":   ["a", "b"],
//     "choices":  [{"id": "x", "probability": 0.5}, {"id": "y"}],
//     "outcomes": ["0", "1"],
//     "kernel":   [["a", "x", "0", "b", 1.0], ...]
//   }
//
// Kernel entries are [state, choice, outcome, next_state, probability].
// Choice probabilities are either all given or all omitted; omitted means
// uniform.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "qthermo/epsilon_machine.hpp"

namespace qthermo {

// Throws domain_error on schema violations (unknown ids, duplicates, missing
// fields) and anything EpsilonMachine's constructor rejects.
EpsilonMachine machine_from_json(const nlohmann::json& doc);
nlohmann::json machine_to_json(const EpsilonMachine& machine);

EpsilonMachine load_machine(const std::filesystem::path& path);
void save_machine(const EpsilonMachine& machine, const std::filesystem::path& path);

}  // namespace qthermo
