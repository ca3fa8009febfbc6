#pragma once

#include <cstdint>

namespace qthermo {

// cos^2(pi * j / denom) for denom a power of two (denom >= 1).
//
// The argument is reduced with exact integer arithmetic (period pi, mirror
// symmetry about pi/2) before any floating-point call, so the result is
// exactly 0 at odd multiples of pi/2, exactly 1/2 at odd multiples of pi/4,
// and bitwise symmetric: cos2_pi_fraction(j, d) == cos2_pi_fraction(d - j, d).
double cos2_pi_fraction(std::uint64_t j, std::uint64_t denom);

}  // namespace qthermo
