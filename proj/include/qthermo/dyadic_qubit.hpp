#pragma once

// Real-amplitude qubit states and projective measurements at dyadic angles.
//
// A state is the ray at angle phi in the real plane; phi and phi + pi are the
// same state, so angles live in [0, pi). Measuring in the basis at angle b
// gives outcome 0 (project onto b) with probability cos^2(phi - b) and
// outcome 1 (project onto b + pi/2) otherwise.

#include <cstdint>

#include "qthermo/epsilon_machine.hpp"
#include "qthermo/erasure_bound.hpp"

namespace qthermo {

// pi * numerator / 2^level, 0 <= numerator < 2^level, 1 <= level <= kMaxLevel.
class DyadicAngle {
 public:
  static constexpr unsigned kMaxLevel = 25;

  // Throws domain_error when the invariants fail.
  DyadicAngle(std::uint64_t numerator, unsigned level);

  std::uint64_t numerator() const { return numerator_; }
  unsigned level() const { return level_; }
  double radians() const;

  // Same numerator expressed at a finer level (level >= this->level()).
  std::uint64_t numerator_at(unsigned level) const {
    return numerator_ << (level - level_);
  }

  // Equality of the denoted angle, independent of representation.
  friend bool operator==(const DyadicAngle& a, const DyadicAngle& b);

 private:
  std::uint64_t numerator_;
  unsigned level_;
};

class BasisChoice {
 public:
  // Throws domain_error unless the angle lies in [0, pi/2).
  explicit BasisChoice(DyadicAngle angle);
  const DyadicAngle& angle() const { return angle_; }

 private:
  DyadicAngle angle_;
};

// cos^2(state - basis): probability of outcome 0.
double born(const DyadicAngle& state, const BasisChoice& basis);

// Probability of outcome 1, computed as 1 - born(...) so the pair sums to one.
double born_orthogonal(const DyadicAngle& state, const BasisChoice& basis);

// Post-measurement state: the basis angle for outcome 0, the basis angle plus
// pi/2 for outcome 1.
DyadicAngle collapse(const BasisChoice& basis, int outcome);

inline constexpr unsigned kMinDyadicMachine = 1;
inline constexpr unsigned kMaxDyadicMachine = 12;

// States: the 2^(n+1) angles pi*j/2^(n+1). Choices: the 2^n bases at
// pi*k/2^(n+1) in [0, pi/2), uniformly distributed. Every transition emits
// outcome "0" or "1". Throws domain_error unless 1 <= n <= 12.
EpsilonMachine build_dyadic_machine(FamilyIndex n);

}  // namespace qthermo
