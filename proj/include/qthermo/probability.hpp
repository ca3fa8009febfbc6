#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qthermo {

// Neumaier (improved Kahan) running sum.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

double compensated_sum(std::span<const double> xs);

// -sum p log2 p with 0 log 0 = 0. The input is not required to be normalized.
double shannon_bits(std::span<const double> p);

// Nonnegative weights over an indexed base set summing to one.
class ProbabilityVector {
 public:
  static constexpr double kSumTolerance = 1e-10;

  ProbabilityVector() = default;
  // Throws domain_error if an entry is negative/non-finite or the sum is off
  // by more than kSumTolerance.
  explicit ProbabilityVector(std::vector<double> entries);

  static ProbabilityVector uniform(std::size_t size);
  static ProbabilityVector point(std::size_t size, std::size_t index);
  // Divides by the total; throws domain_error on a zero or negative total.
  static ProbabilityVector normalized(std::vector<double> weights);

  std::size_t size() const { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  std::span<const double> entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  double entropy_bits() const { return shannon_bits(entries_); }

 private:
  std::vector<double> entries_;
};

double l1_distance(std::span<const double> a, std::span<const double> b);

}  // namespace qthermo
