#include "qthermo/dyadic_qubit.hpp"

#include <algorithm>
#include <numbers>
#include <string>

#include "qthermo/dyadic_trig.hpp"
#include "qthermo/errors.hpp"

namespace qthermo {

DyadicAngle::DyadicAngle(std::uint64_t numerator, unsigned level)
    : numerator_(numerator), level_(level) {
  if (level < 1 || level > kMaxLevel) {
    throw domain_error("dyadic level must be in [1, " + std::to_string(kMaxLevel) + "], got " +
                       std::to_string(level));
  }
  if (numerator >= (std::uint64_t{1} << level)) {
    throw domain_error("dyadic numerator " + std::to_string(numerator) + " not below 2^" +
                       std::to_string(level));
  }
}

double DyadicAngle::radians() const {
  return std::numbers::pi * static_cast<double>(numerator_) /
         static_cast<double>(std::uint64_t{1} << level_);
}

bool operator==(const DyadicAngle& a, const DyadicAngle& b) {
  const unsigned level = std::max(a.level_, b.level_);
  return a.numerator_at(level) == b.numerator_at(level);
}

BasisChoice::BasisChoice(DyadicAngle angle) : angle_(angle) {
  if (angle.numerator() >= (std::uint64_t{1} << (angle.level() - 1))) {
    throw domain_error("basis angle must lie in [0, pi/2)");
  }
}

double born(const DyadicAngle& state, const BasisChoice& basis) {
  const unsigned level = std::max(state.level(), basis.angle().level());
  const std::uint64_t denom = std::uint64_t{1} << level;
  const std::uint64_t diff =
      (state.numerator_at(level) + denom - basis.angle().numerator_at(level)) % denom;
  return cos2_pi_fraction(diff, denom);
}

double born_orthogonal(const DyadicAngle& state, const BasisChoice& basis) {
  return 1.0 - born(state, basis);
}

DyadicAngle collapse(const BasisChoice& basis, int outcome) {
  const DyadicAngle& b = basis.angle();
  if (outcome == 0) return b;
  const std::uint64_t denom = std::uint64_t{1} << b.level();
  return DyadicAngle((b.numerator() + denom / 2) % denom, b.level());
}

EpsilonMachine build_dyadic_machine(FamilyIndex n) {
  if (n.value() < kMinDyadicMachine || n.value() > kMaxDyadicMachine) {
    throw domain_error("dyadic machine needs 1 <= n <= " + std::to_string(kMaxDyadicMachine) +
                       ", got " + std::to_string(n.value()));
  }
  const unsigned level = n.value() + 1;
  const std::uint64_t state_count = std::uint64_t{1} << level;
  const std::uint64_t choice_count = state_count / 2;
  const std::string denom = std::to_string(state_count);

  std::vector<std::string> states;
  states.reserve(state_count);
  for (std::uint64_t j = 0; j < state_count; ++j) states.push_back("pi*" + std::to_string(j) + "/" + denom);
  std::vector<std::string> choices;
  choices.reserve(choice_count);
  for (std::uint64_t k = 0; k < choice_count; ++k) choices.push_back("basis:pi*" + std::to_string(k) + "/" + denom);

  std::vector<std::vector<Transition>> kernel(state_count * choice_count);
  for (std::uint64_t j = 0; j < state_count; ++j) {
    const DyadicAngle state(j, level);
    for (std::uint64_t k = 0; k < choice_count; ++k) {
      const BasisChoice basis(DyadicAngle(k, level));
      auto& row = kernel[j * choice_count + k];
      for (int outcome : {0, 1}) {
        const double p = outcome == 0 ? born(state, basis) : born_orthogonal(state, basis);
        const DyadicAngle next = collapse(basis, outcome);
        row.push_back({static_cast<std::uint32_t>(outcome),
                       static_cast<std::uint32_t>(next.numerator_at(level)), p});
      }
    }
  }
  return EpsilonMachine(std::move(states), std::move(choices),
                        ProbabilityVector::uniform(choice_count), {"0", "1"}, std::move(kernel));
}

}  // namespace qthermo
