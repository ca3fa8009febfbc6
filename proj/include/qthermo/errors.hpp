#pragma once

#include <stdexcept>
#include <string>

namespace qthermo {

// Argument outside the documented range of an operation (n too large,
// nonpositive temperature, malformed probability vector, ...).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The input is well-formed but structurally unusable, e.g. a reducible chain
// handed to the stationary solver.
class structural_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class convergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operation applied to a box in the wrong configuration (removing an absent
// partition, RAND away from its start cell, ...).
class state_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace qthermo
