#pragma once

// Finite stochastic machines driven by a random input (measurement choice),
// with stationary analysis, statistical complexity, and the backward
// conditional entropy H(S_{t-1} | S_t) that counts overwritten memory.
//
// A machine is immutable after construction and can be shared across
// threads. Trajectory sampling is deterministic in (machine, start, length,
// seed).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qthermo/erasure_bound.hpp"
#include "qthermo/probability.hpp"

namespace qthermo {

struct Transition {
  std::uint32_t outcome;
  std::uint32_t next_state;
  double probability;
};

// Dense row-major S x S matrix of the choice-marginalized state chain
// P(s -> s') = sum_c P(c) sum_o kernel(s, c)(o, s').
class TransitionMatrix {
 public:
  explicit TransitionMatrix(std::size_t size) : size_(size), data_(size * size, 0.0) {}

  std::size_t size() const { return size_; }
  double operator()(std::size_t from, std::size_t to) const { return data_[from * size_ + to]; }
  double& operator()(std::size_t from, std::size_t to) { return data_[from * size_ + to]; }
  std::span<const double> row(std::size_t from) const {
    return {data_.data() + from * size_, size_};
  }

  // out = dist * P
  void left_multiply(std::span<const double> dist, std::span<double> out) const;

 private:
  std::size_t size_;
  std::vector<double> data_;
};

class EpsilonMachine {
 public:
  static constexpr double kRowTolerance = 1e-12;

  // kernel[state * choices.size() + choice] lists the (outcome, next state,
  // probability) pairs reachable from that (state, choice). Zero-probability
  // entries are dropped. Throws domain_error if any set is empty, an index is
  // out of range, a probability lies outside [0, 1], or a row does not sum
  // to one within kRowTolerance.
  EpsilonMachine(std::vector<std::string> states, std::vector<std::string> choices,
                 ProbabilityVector choice_probabilities, std::vector<std::string> outcomes,
                 std::vector<std::vector<Transition>> kernel);

  std::size_t state_count() const { return states_.size(); }
  std::size_t choice_count() const { return choices_.size(); }
  std::size_t outcome_count() const { return outcomes_.size(); }

  const std::vector<std::string>& states() const { return states_; }
  const std::vector<std::string>& choices() const { return choices_; }
  const std::vector<std::string>& outcomes() const { return outcomes_; }
  const ProbabilityVector& choice_probabilities() const { return choice_probabilities_; }

  std::span<const Transition> row(std::size_t state, std::size_t choice) const;

  // Kernel probability of (outcome, next) from (state, choice); 0 if absent.
  double probability(std::size_t state, std::size_t choice, std::size_t outcome,
                     std::size_t next) const;

  TransitionMatrix transition_matrix() const;

 private:
  std::vector<std::string> states_;
  std::vector<std::string> choices_;
  ProbabilityVector choice_probabilities_;
  std::vector<std::string> outcomes_;
  std::vector<Transition> transitions_;
  std::vector<std::size_t> row_offsets_;  // size S*C + 1
};

// True when every state reaches every other along nonzero edges.
bool is_irreducible(const TransitionMatrix& p);

struct StationaryOptions {
  double damping = 0.5;
  double tolerance = 1e-12;
  std::size_t max_iterations = 1'000'000;
};

// Stationary distribution of the choice-marginalized chain by damped power
// iteration from the uniform vector, pi <- d*pi + (1-d)*pi*P, stopped once
// ||pi P - pi||_1 < tolerance. Damping makes periodic chains converge too.
//
// Throws structural_error for a reducible chain and convergence_error when
// the iteration cap is hit.
ProbabilityVector stationary(const EpsilonMachine& machine, const StationaryOptions& options = {});
ProbabilityVector stationary(const TransitionMatrix& p, const StationaryOptions& options = {});

// H(pi) in bits.
BitQuantity statistical_complexity(const EpsilonMachine& machine);

// reverse[j] = P(S_{t-1} = . | S_t = j); std::nullopt for states with zero
// stationary mass.
using ReverseKernel = std::vector<std::optional<ProbabilityVector>>;
ReverseKernel reverse_kernel(const EpsilonMachine& machine);
ReverseKernel reverse_kernel(const TransitionMatrix& p, const ProbabilityVector& pi);

// sum_j pi_j H(S_{t-1} | S_t = j): memory overwritten per step on average.
BitQuantity mean_erased_information(const EpsilonMachine& machine);

struct TrajectoryStep {
  std::uint32_t choice;
  std::uint32_t outcome;
  std::uint32_t state;  // state after the step
};

struct TrajectoryRecord {
  std::uint32_t start_state = 0;
  std::uint64_t seed = 0;
  std::vector<TrajectoryStep> steps;
};

// Throws domain_error if length == 0 or start is not a state of the machine.
TrajectoryRecord sample_trajectory(const EpsilonMachine& machine, std::size_t start,
                                   std::size_t length, std::uint64_t seed);

struct EmpiricalErasure {
  double estimate_bits = 0.0;
  double standard_error_bits = 0.0;  // bootstrap
  std::size_t excluded_states = 0;   // states never entered in the record
};

inline constexpr std::size_t kMinEmpiricalLength = 10'000;

// Plug-in estimate of sum_j pi_j H(S_{t-1} | S_t = j) from the record's
// transition counts, with a bootstrap standard error from `resamples`
// i.i.d. resamples of the transitions (block length 1; an approximation,
// since successive transitions share a state).
//
// Throws domain_error if the record is shorter than kMinEmpiricalLength or
// contains a step the machine cannot make.
EmpiricalErasure empirical_erasure(const TrajectoryRecord& record, const EpsilonMachine& machine,
                                   std::size_t resamples = 200);

struct StateOccupancy {
  std::vector<double> frequency;
  std::vector<double> standard_error;  // batch means
};

// Fraction of steps spent in each state after the step, with batch-means
// standard errors that account for serial correlation.
StateOccupancy state_occupancy(const TrajectoryRecord& record, std::size_t state_count,
                               std::size_t batches = 100);

}  // namespace qthermo
