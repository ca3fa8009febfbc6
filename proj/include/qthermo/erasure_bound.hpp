#pragma once

// Erased information of the dyadic measurement family and its Landauer cost.
//
// For family parameter n the causal states sit at angles pi*j/2^(n+1),
// j = 0 .. 2^(n+1)-1, and the distribution over the state before a
// measurement, given the state after it, has weights cos^2(pi*j/2^(n+1))/2^n.
// Its Shannon entropy is the information overwritten per measurement, which
// exceeds n bits for every n >= 1 (equality at n = 0).
//
// All functions are pure; safe to call from any thread.

#include <cstdint>
#include <vector>

#include "qthermo/probability.hpp"

namespace qthermo {

inline constexpr double kBoltzmann = 1.380649e-23;  // J/K, exact SI value

class FamilyIndex {
 public:
  static constexpr unsigned kMax = 24;

  // Throws domain_error unless 0 <= n <= kMax.
  explicit FamilyIndex(long long n);

  unsigned value() const { return n_; }
  std::uint64_t state_count() const { return std::uint64_t{1} << (n_ + 1); }

 private:
  unsigned n_;
};

// Information measured in bits (log base 2). Nonnegative and finite.
class BitQuantity {
 public:
  explicit BitQuantity(double bits);
  double bits() const { return bits_; }

 private:
  double bits_;
};

// Heat in joules at a given bath temperature.
struct HeatQuantity {
  double joules;
  double kelvin;
};

// c_j = cos^2(pi j / 2^(n+1)) for j = 0 .. 2^(n+1)-1. Sums to 2^n.
std::vector<double> cos2_weights(FamilyIndex n);

// p_j = c_j / 2^n.
ProbabilityVector causal_state_distribution(FamilyIndex n);

// -sum_j p_j log2 p_j over the causal_state_distribution, evaluated without
// materializing the vector.
BitQuantity erased_information(FamilyIndex n);

// bits * k T ln 2. Throws domain_error for temperature <= 0.
HeatQuantity landauer_heat(BitQuantity bits, double kelvin);

// k T ln 2: the most a single qubit measurement can be charged once the
// system entropy is capped at one bit. A comparison constant; it does not
// bound the finite-memory machines above.
HeatQuantity qubit_landauer_ceiling(double kelvin);

}  // namespace qthermo
