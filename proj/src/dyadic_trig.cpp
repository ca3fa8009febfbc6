#include "qthermo/dyadic_trig.hpp"

#include <cmath>
#include <numbers>

namespace qthermo {

double cos2_pi_fraction(std::uint64_t j, std::uint64_t denom) {
  std::uint64_t k = j % denom;
  if (2 * k > denom) k = denom - k;  // k in [0, denom/2]
  if (2 * k == denom) return 0.0;
  if (4 * k == denom) return 0.5;
  if (4 * k < denom) {
    const double c = std::cos(std::numbers::pi * static_cast<double>(k) /
                              static_cast<double>(denom));
    return c * c;
  }
  // pi/4 < angle < pi/2: evaluate as sin^2 of the complement for accuracy.
  const double s = std::sin(std::numbers::pi * static_cast<double>(denom - 2 * k) /
                            (2.0 * static_cast<double>(denom)));
  return s * s;
}

}  // namespace qthermo
