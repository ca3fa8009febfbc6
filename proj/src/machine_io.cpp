#include "qthermo/machine_io.hpp"

#include <fstream>
#include <unordered_map>

#include "qthermo/errors.hpp"

namespace qthermo {

namespace {

using nlohmann::json;

std::unordered_map<std::string, std::uint32_t> index_of(const std::vector<std::string>& ids,
                                                        const char* what) {
  std::unordered_map<std::string, std::uint32_t> idx;
  for (std::uint32_t i = 0; i < ids.size(); ++i) {
    if (!idx.emplace(ids[i], i).second) {
      throw domain_error(std::string("duplicate ") + what + " id '" + ids[i] + "'");
    }
  }
  return idx;
}

std::uint32_t lookup(const std::unordered_map<std::string, std::uint32_t>& idx,
                     const std::string& id, const char* what) {
  const auto it = idx.find(id);
  if (it == idx.end()) throw domain_error(std::string("unknown ") + what + " '" + id + "'");
  return it->second;
}

const json& field(const json& doc, const char* name) {
  if (!doc.is_object() || !doc.contains(name)) {
    throw domain_error(std::string("machine definition is missing '") + name + "'");
  }
  return doc.at(name);
}

}  // namespace

EpsilonMachine machine_from_json(const json& doc) {
  try {
    auto states = field(doc, "states").get<std::vector<std::string>>();
    auto outcomes = field(doc, "outcomes").get<std::vector<std::string>>();
    std::vector<std::string> choices;
    std::vector<double> weights;
    std::size_t with_probability = 0;
    for (const json& c : field(doc, "choices")) {
      if (c.is_string()) {
        choices.push_back(c.get<std::string>());
        continue;
      }
      choices.push_back(c.at("id").get<std::string>());
      if (c.contains("probability")) {
        weights.push_back(c.at("probability").get<double>());
        ++with_probability;
      }
    }
    if (with_probability != 0 && with_probability != choices.size()) {
      throw domain_error("either every choice carries a probability or none does");
    }
    ProbabilityVector choice_p = with_probability == 0
                                     ? ProbabilityVector::uniform(choices.size())
                                     : ProbabilityVector(std::move(weights));

    const auto s_idx = index_of(states, "state");
    const auto c_idx = index_of(choices, "choice");
    const auto o_idx = index_of(outcomes, "outcome");
    std::vector<std::vector<Transition>> kernel(states.size() * choices.size());
    for (const json& e : field(doc, "kernel")) {
      if (!e.is_array() || e.size() != 5) {
        throw domain_error("kernel entry must be [state, choice, outcome, next_state, probability]");
      }
      const auto s = lookup(s_idx, e[0].get<std::string>(), "state");
      const auto c = lookup(c_idx, e[1].get<std::string>(), "choice");
      const auto o = lookup(o_idx, e[2].get<std::string>(), "outcome");
      const auto next = lookup(s_idx, e[3].get<std::string>(), "state");
      kernel[s * choices.size() + c].push_back({o, next, e[4].get<double>()});
    }
    return EpsilonMachine(std::move(states), std::move(choices), std::move(choice_p),
                          std::move(outcomes), std::move(kernel));
  } catch (const json::exception& ex) {
    throw domain_error(std::string("malformed machine definition: ") + ex.what());
  }
}

json machine_to_json(const EpsilonMachine& machine) {
  json doc;
  doc["states"] = machine.states();
  doc["outcomes"] = machine.outcomes();
  json choices = json::array();
  for (std::size_t c = 0; c < machine.choice_count(); ++c) {
    choices.push_back({{"id", machine.choices()[c]},
                       {"probability", machine.choice_probabilities()[c]}});
  }
  doc["choices"] = std::move(choices);
  json kernel = json::array();
  for (std::size_t s = 0; s < machine.state_count(); ++s) {
    for (std::size_t c = 0; c < machine.choice_count(); ++c) {
      for (const Transition& t : machine.row(s, c)) {
        kernel.push_back(json::array({machine.states()[s], machine.choices()[c],
                                      machine.outcomes()[t.outcome],
                                      machine.states()[t.next_state], t.probability}));
      }
    }
  }
  doc["kernel"] = std::move(kernel);
  return doc;
}

EpsilonMachine load_machine(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw domain_error("cannot open machine file " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& ex) {
    throw domain_error("cannot parse machine file " + path.string() + ": " + ex.what());
  }
  return machine_from_json(doc);
}

void save_machine(const EpsilonMachine& machine, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw domain_error("cannot write machine file " + path.string());
  out << machine_to_json(machine).dump(2) << '\n';
}

}  // namespace qthermo
