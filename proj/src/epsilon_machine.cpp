#include "qthermo/epsilon_machine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qthermo/errors.hpp"
#include "qthermo/rng.hpp"

namespace qthermo {

void TransitionMatrix::left_multiply(std::span<const double> dist, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t i = 0; i < size_; ++i) {
    const double w = dist[i];
    if (w == 0.0) continue;
    const double* r = data_.data() + i * size_;
    for (std::size_t j = 0; j < size_; ++j) out[j] += w * r[j];
  }
}

EpsilonMachine::EpsilonMachine(std::vector<std::string> states, std::vector<std::string> choices,
                               ProbabilityVector choice_probabilities,
                               std::vector<std::string> outcomes,
                               std::vector<std::vector<Transition>> kernel)
    : states_(std::move(states)),
      choices_(std::move(choices)),
      choice_probabilities_(std::move(choice_probabilities)),
      outcomes_(std::move(outcomes)) {
  if (states_.empty() || choices_.empty() || outcomes_.empty()) {
    throw domain_error("machine needs at least one state, choice and outcome");
  }
  if (choice_probabilities_.size() != choices_.size()) {
    throw domain_error("choice probability vector has " +
                       std::to_string(choice_probabilities_.size()) + " entries for " +
                       std::to_string(choices_.size()) + " choices");
  }
  const std::size_t rows = states_.size() * choices_.size();
  if (kernel.size() != rows) {
    throw domain_error("kernel has " + std::to_string(kernel.size()) + " rows, expected " +
                       std::to_string(rows));
  }
  row_offsets_.reserve(rows + 1);
  row_offsets_.push_back(0);
  for (std::size_t r = 0; r < rows; ++r) {
    CompensatedSum total;
    for (const Transition& t : kernel[r]) {
      if (t.outcome >= outcomes_.size() || t.next_state >= states_.size()) {
        throw domain_error("kernel entry references an unknown outcome or state");
      }
      if (!(t.probability >= 0.0 && t.probability <= 1.0)) {
        throw domain_error("kernel probability outside [0, 1]: " + std::to_string(t.probability));
      }
      total.add(t.probability);
      if (t.probability > 0.0) transitions_.push_back(t);
    }
    if (std::abs(total.value() - 1.0) > kRowTolerance) {
      const std::size_t s = r / choices_.size();
      const std::size_t c = r % choices_.size();
      throw domain_error("kernel row (" + states_[s] + ", " + choices_[c] + ") sums to " +
                         std::to_string(total.value()));
    }
    row_offsets_.push_back(transitions_.size());
    kernel[r].clear();
    kernel[r].shrink_to_fit();
  }
}

std::span<const Transition> EpsilonMachine::row(std::size_t state, std::size_t choice) const {
  const std::size_t r = state * choices_.size() + choice;
  return {transitions_.data() + row_offsets_[r], row_offsets_[r + 1] - row_offsets_[r]};
}

double EpsilonMachine::probability(std::size_t state, std::size_t choice, std::size_t outcome,
                                   std::size_t next) const {
  if (state >= state_count() || choice >= choice_count()) return 0.0;
  double p = 0.0;
  for (const Transition& t : row(state, choice)) {
    if (t.outcome == outcome && t.next_state == next) p += t.probability;
  }
  return p;
}

TransitionMatrix EpsilonMachine::transition_matrix() const {
  TransitionMatrix p(state_count());
  for (std::size_t s = 0; s < state_count(); ++s) {
    for (std::size_t c = 0; c < choice_count(); ++c) {
      const double pc = choice_probabilities_[c];
      for (const Transition& t : row(s, c)) p(s, t.next_state) += pc * t.probability;
    }
  }
  return p;
}

namespace {

std::size_t reach_count(const TransitionMatrix& p, bool transpose) {
  const std::size_t n = p.size();
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (std::size_t v = 0; v < n; ++v) {
      const double w = transpose ? p(v, u) : p(u, v);
      if (w > 0.0 && !seen[v]) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count;
}

}  // namespace

bool is_irreducible(const TransitionMatrix& p) {
  if (p.size() == 0) return false;
  return reach_count(p, false) == p.size() && reach_count(p, true) == p.size();
}

ProbabilityVector stationary(const TransitionMatrix& p, const StationaryOptions& options) {
  if (!is_irreducible(p)) {
    throw structural_error("state chain is reducible; no unique stationary distribution");
  }
  const std::size_t n = p.size();
  std::vector<double> pi(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  for (std::size_t it = 0; it < options.max_iterations; ++it) {
    p.left_multiply(pi, next);
    if (l1_distance(next, pi) < options.tolerance) return ProbabilityVector::normalized(pi);
    CompensatedSum total;
    for (std::size_t i = 0; i < n; ++i) {
      pi[i] = options.damping * pi[i] + (1.0 - options.damping) * next[i];
      total.add(pi[i]);
    }
    for (double& x : pi) x /= total.value();
  }
  throw convergence_error("stationary distribution did not converge in " +
                          std::to_string(options.max_iterations) + " iterations");
}

ProbabilityVector stationary(const EpsilonMachine& machine, const StationaryOptions& options) {
  return stationary(machine.transition_matrix(), options);
}

BitQuantity statistical_complexity(const EpsilonMachine& machine) {
  return BitQuantity(stationary(machine).entropy_bits());
}

ReverseKernel reverse_kernel(const TransitionMatrix& p, const ProbabilityVector& pi) {
  const std::size_t n = p.size();
  ReverseKernel reverse(n);
  std::vector<double> column(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (!(pi[j] > 0.0)) continue;
    for (std::size_t i = 0; i < n; ++i) column[i] = pi[i] * p(i, j);
    // Normalizing by the inflow sum_i pi_i P(i->j) rather than pi_j; the two
    // agree to the stationarity residual.
    reverse[j] = ProbabilityVector::normalized(column);
  }
  return reverse;
}

ReverseKernel reverse_kernel(const EpsilonMachine& machine) {
  const TransitionMatrix p = machine.transition_matrix();
  return reverse_kernel(p, stationary(p));
}

BitQuantity mean_erased_information(const EpsilonMachine& machine) {
  const TransitionMatrix p = machine.transition_matrix();
  const ProbabilityVector pi = stationary(p);
  const ReverseKernel reverse = reverse_kernel(p, pi);
  CompensatedSum acc;
  for (std::size_t j = 0; j < reverse.size(); ++j) {
    if (reverse[j]) acc.add(pi[j] * reverse[j]->entropy_bits());
  }
  return BitQuantity(std::max(0.0, acc.value()));
}

namespace {

// Index drawn from weights that sum to ~1; falls back to the last positive
// entry on round-off.
template <typename Weight>
std::size_t draw(std::span<const Weight> items, double u, double (*weight)(const Weight&)) {
  double acc = 0.0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const double w = weight(items[i]);
    if (w <= 0.0) continue;
    last = i;
    acc += w;
    if (u < acc) return i;
  }
  return last;
}

double identity_weight(const double& w) { return w; }
double transition_weight(const Transition& t) { return t.probability; }

}  // namespace

TrajectoryRecord sample_trajectory(const EpsilonMachine& machine, std::size_t start,
                                   std::size_t length, std::uint64_t seed) {
  if (length == 0) throw domain_error("trajectory length must be positive");
  if (start >= machine.state_count()) {
    throw domain_error("start state index " + std::to_string(start) + " out of range");
  }
  TrajectoryRecord record;
  record.start_state = static_cast<std::uint32_t>(start);
  record.seed = seed;
  record.steps.reserve(length);
  Rng rng(seed);
  std::size_t state = start;
  const auto choice_weights = machine.choice_probabilities().entries();
  for (std::size_t t = 0; t < length; ++t) {
    const std::size_t c = draw<double>(choice_weights, rng.uniform(), identity_weight);
    const auto row = machine.row(state, c);
    const Transition& tr = row[draw<Transition>(row, rng.uniform(), transition_weight)];
    record.steps.push_back({static_cast<std::uint32_t>(c), tr.outcome, tr.next_state});
    state = tr.next_state;
  }
  return record;
}

namespace {

// counts is S x S, counts[i * S + j] = number of i -> j transitions.
double conditional_entropy_from_counts(std::span<const double> counts, std::size_t n,
                                       double total, std::size_t* excluded) {
  CompensatedSum acc;
  std::vector<double> column(n);
  std::size_t missing = 0;
  for (std::size_t j = 0; j < n; ++j) {
    double inflow = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      column[i] = counts[i * n + j];
      inflow += column[i];
    }
    if (inflow == 0.0) {
      ++missing;
      continue;
    }
    CompensatedSum h;
    for (double x : column) {
      if (x > 0.0) h.add(-(x / inflow) * std::log2(x / inflow));
    }
    acc.add(inflow / total * h.value());
  }
  if (excluded != nullptr) *excluded = missing;
  return acc.value();
}

}  // namespace

EmpiricalErasure empirical_erasure(const TrajectoryRecord& record, const EpsilonMachine& machine,
                                   std::size_t resamples) {
  if (record.steps.size() < kMinEmpiricalLength) {
    throw domain_error("empirical erasure needs at least " + std::to_string(kMinEmpiricalLength) +
                       " steps, got " + std::to_string(record.steps.size()));
  }
  const std::size_t n = machine.state_count();
  if (record.start_state >= n) throw domain_error("record start state outside machine");
  std::vector<double> counts(n * n, 0.0);
  std::size_t prev = record.start_state;
  for (const TrajectoryStep& s : record.steps) {
    if (machine.probability(prev, s.choice, s.outcome, s.state) <= 0.0) {
      throw domain_error("record contains a transition the machine cannot make");
    }
    counts[prev * n + s.state] += 1.0;
    prev = s.state;
  }
  const double total = static_cast<double>(record.steps.size());

  EmpiricalErasure result;
  result.estimate_bits = conditional_entropy_from_counts(counts, n, total, &result.excluded_states);

  // Bootstrap over the multiset of observed transitions.
  if (resamples < 2) return result;
  std::vector<std::uint32_t> cells;
  cells.reserve(record.steps.size());
  prev = record.start_state;
  for (const TrajectoryStep& s : record.steps) {
    cells.push_back(static_cast<std::uint32_t>(prev * n + s.state));
    prev = s.state;
  }
  Rng rng(mix_seed(record.seed, 0x626f6f7473747261ULL));
  std::vector<double> boot(n * n);
  CompensatedSum sum, sum_sq;
  for (std::size_t b = 0; b < resamples; ++b) {
    std::fill(boot.begin(), boot.end(), 0.0);
    for (std::size_t t = 0; t < cells.size(); ++t) boot[cells[rng.below(cells.size())]] += 1.0;
    const double e = conditional_entropy_from_counts(boot, n, total, nullptr);
    sum.add(e);
    sum_sq.add(e * e);
  }
  const double m = sum.value() / static_cast<double>(resamples);
  const double var = (sum_sq.value() - static_cast<double>(resamples) * m * m) /
                     static_cast<double>(resamples - 1);
  result.standard_error_bits = std::sqrt(std::max(0.0, var));
  return result;
}

StateOccupancy state_occupancy(const TrajectoryRecord& record, std::size_t state_count,
                               std::size_t batches) {
  const std::size_t total = record.steps.size();
  if (total == 0 || batches < 2 || total < batches) {
    throw domain_error("state occupancy needs at least as many steps as batches (>= 2)");
  }
  StateOccupancy occ;
  occ.frequency.assign(state_count, 0.0);
  occ.standard_error.assign(state_count, 0.0);
  for (const TrajectoryStep& s : record.steps) occ.frequency.at(s.state) += 1.0;
  for (double& f : occ.frequency) f /= static_cast<double>(total);

  const std::size_t batch_len = total / batches;
  std::vector<double> batch_freq(state_count);
  std::vector<double> sum(state_count, 0.0), sum_sq(state_count, 0.0);
  for (std::size_t b = 0; b < batches; ++b) {
    std::fill(batch_freq.begin(), batch_freq.end(), 0.0);
    for (std::size_t t = b * batch_len; t < (b + 1) * batch_len; ++t) {
      batch_freq[record.steps[t].state] += 1.0;
    }
    for (std::size_t s = 0; s < state_count; ++s) {
      const double f = batch_freq[s] / static_cast<double>(batch_len);
      sum[s] += f;
      sum_sq[s] += f * f;
    }
  }
  const double bcount = static_cast<double>(batches);
  for (std::size_t s = 0; s < state_count; ++s) {
    const double m = sum[s] / bcount;
    const double var = std::max(0.0, (sum_sq[s] - bcount * m * m) / (bcount - 1.0));
    occ.standard_error[s] = std::sqrt(var / bcount);
  }
  return occ;
}

}  // namespace qthermo
