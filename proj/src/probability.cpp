#include "qthermo/probability.hpp"

#include <cmath>
#include <string>

#include "qthermo/errors.hpp"

namespace qthermo {

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    compensation_ += (sum_ - t) + x;
  } else {
    compensation_ += (x - t) + sum_;
  }
  sum_ = t;
}

double compensated_sum(std::span<const double> xs) {
  CompensatedSum acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

double shannon_bits(std::span<const double> p) {
  CompensatedSum acc;
  for (double x : p) {
    if (x > 0.0) acc.add(-x * std::log2(x));
  }
  return acc.value();
}

ProbabilityVector::ProbabilityVector(std::vector<double> entries)
    : entries_(std::move(entries)) {
  if (entries_.empty()) throw domain_error("probability vector is empty");
  for (double x : entries_) {
    if (!std::isfinite(x) || x < 0.0) {
      throw domain_error("probability entry must be finite and nonnegative, got " +
                         std::to_string(x));
    }
  }
  const double total = compensated_sum(entries_);
  if (std::abs(total - 1.0) > kSumTolerance) {
    throw domain_error("probability vector sums to " + std::to_string(total));
  }
}

ProbabilityVector ProbabilityVector::uniform(std::size_t size) {
  return ProbabilityVector(std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

ProbabilityVector ProbabilityVector::point(std::size_t size, std::size_t index) {
  std::vector<double> e(size, 0.0);
  e.at(index) = 1.0;
  return ProbabilityVector(std::move(e));
}

ProbabilityVector ProbabilityVector::normalized(std::vector<double> weights) {
  const double total = compensated_sum(weights);
  if (!(total > 0.0)) throw domain_error("cannot normalize weights with total <= 0");
  for (double& w : weights) w /= total;
  return ProbabilityVector(std::move(weights));
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
  CompensatedSum acc;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) acc.add(std::abs(a[i] - b[i]));
  return acc.value();
}

}  // namespace qthermo
