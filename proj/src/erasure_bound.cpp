#include "qthermo/erasure_bound.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qthermo/dyadic_trig.hpp"
#include "qthermo/errors.hpp"

namespace qthermo {

namespace {

void require_temperature(double kelvin) {
  if (!(kelvin > 0.0) || !std::isfinite(kelvin)) {
    throw domain_error("temperature must be positive and finite, got " +
                       std::to_string(kelvin) + " K");
  }
}

}  // namespace

FamilyIndex::FamilyIndex(long long n) {
  if (n < 0 || n > static_cast<long long>(kMax)) {
    throw domain_error("family index n must be in [0, " + std::to_string(kMax) +
                       "], got " + std::to_string(n));
  }
  n_ = static_cast<unsigned>(n);
}

BitQuantity::BitQuantity(double bits) : bits_(bits) {
  if (!std::isfinite(bits) || bits < 0.0) {
    throw domain_error("bit quantity must be finite and nonnegative, got " +
                       std::to_string(bits));
  }
}

std::vector<double> cos2_weights(FamilyIndex n) {
  const std::uint64_t count = n.state_count();
  std::vector<double> c(count);
  for (std::uint64_t j = 0; j < count; ++j) c[j] = cos2_pi_fraction(j, count);
  return c;
}

ProbabilityVector causal_state_distribution(FamilyIndex n) {
  std::vector<double> p = cos2_weights(n);
  // Division by a power of two is exact.
  const double scale = std::ldexp(1.0, -static_cast<int>(n.value()));
  for (double& x : p) x *= scale;
  return ProbabilityVector(std::move(p));
}

BitQuantity erased_information(FamilyIndex n) {
  const std::uint64_t count = n.state_count();
  const std::uint64_t half = count / 2;
  const double scale = std::ldexp(1.0, -static_cast<int>(n.value()));
  auto term = [&](std::uint64_t j) {
    const double p = cos2_pi_fraction(j, count) * scale;
    return p > 0.0 ? -p * std::log2(p) : 0.0;
  };
  // p_j = p_{count-j}: fold the two halves together.
  CompensatedSum acc;
  acc.add(term(0));
  if (half > 0) acc.add(term(half));
  for (std::uint64_t j = 1; j < half; ++j) acc.add(2.0 * term(j));
  return BitQuantity(acc.value());
}

HeatQuantity landauer_heat(BitQuantity bits, double kelvin) {
  require_temperature(kelvin);
  return {bits.bits() * kBoltzmann * kelvin * std::numbers::ln2, kelvin};
}

HeatQuantity qubit_landauer_ceiling(double kelvin) {
  require_temperature(kelvin);
  return {kBoltzmann * kelvin * std::numbers::ln2, kelvin};
}

}  // namespace qthermo
