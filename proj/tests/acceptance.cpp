// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "qthermo/dyadic_qubit.hpp"
#include "qthermo/epsilon_machine.hpp"
#include "qthermo/erasure_bound.hpp"
#include "qthermo/rng.hpp"
#include "qthermo/szilard_box.hpp"

using namespace qthermo;

namespace {

constexpr double kLn2 = std::numbers::ln2;

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double time_limit_s;  // <= 0: none
  std::function<Outcome()> check;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Outcome normalization() {
  double worst = 0.0;
  for (unsigned n = 1; n <= 16; ++n) {
    const double expected = std::ldexp(1.0, static_cast<int>(n));
    const double rel = std::abs(compensated_sum(cos2_weights(FamilyIndex(n))) - expected) / expected;
    worst = std::max(worst, rel);
  }
  return {worst <= 1e-9, fmt("max relative error %.3e (tol 1e-9)", worst)};
}

Outcome strict_bound() {
  double min_margin = INFINITY;
  for (unsigned n = 1; n <= 16; ++n) {
    min_margin = std::min(min_margin, erased_information(FamilyIndex(n)).bits() - n);
  }
  return {min_margin > 1e-6, fmt("min I(n) - n = %.12f bits (need > 1e-6)", min_margin)};
}

Outcome exact_value() {
  // Independent four-term hand summation: 1/2 log2 2 + 1/4 log2 4 + 0 + 1/4 log2 4.
  const double oracle = 0.5 * 1.0 + 0.25 * 2.0 + 0.0 + 0.25 * 2.0;
  const double got = erased_information(FamilyIndex(1)).bits();
  const double err = std::max(std::abs(got - 1.5), std::abs(got - oracle));
  return {err <= 1e-12, fmt("I(1) = %.15f, |error| %.2e (tol 1e-12)", got, err)};
}

Outcome central_oracle() {
  double worst = 0.0;
  for (unsigned n = 1; n <= 8; ++n) {
    const double machine = mean_erased_information(build_dyadic_machine(FamilyIndex(n))).bits();
    worst = std::max(worst, std::abs(machine - erased_information(FamilyIndex(n)).bits()));
  }
  return {worst <= 1e-9, fmt("max |machine - formula| = %.3e bits (tol 1e-9)", worst)};
}

Outcome complexity() {
  double worst_c = 0.0, worst_pi = 0.0;
  for (unsigned n = 1; n <= 8; ++n) {
    const EpsilonMachine m = build_dyadic_machine(FamilyIndex(n));
    const ProbabilityVector pi = stationary(m);
    const double u = 1.0 / static_cast<double>(pi.size());
    for (double x : pi) worst_pi = std::max(worst_pi, std::abs(x - u));
    worst_c = std::max(worst_c, std::abs(statistical_complexity(m).bits() - (n + 1.0)));
  }
  return {worst_c <= 1e-9 && worst_pi <= 1e-10,
          fmt("max |C - (n+1)| = %.3e (tol 1e-9), max |pi - uniform| = %.3e (tol 1e-10)", worst_c,
              worst_pi)};
}

Outcome monte_carlo() {
  const EpsilonMachine m = build_dyadic_machine(FamilyIndex(2));
  const TrajectoryRecord rec = sample_trajectory(m, 0, 1'000'000, 7);
  const StateOccupancy occ = state_occupancy(rec, m.state_count());
  double max_z = 0.0;
  for (std::size_t s = 0; s < m.state_count(); ++s) {
    max_z = std::max(max_z, std::abs(occ.frequency[s] - 0.125) / occ.standard_error[s]);
  }
  const EmpiricalErasure e = empirical_erasure(rec, m);
  const double diff = std::abs(e.estimate_bits - erased_information(FamilyIndex(2)).bits());
  return {max_z <= 3.0 && diff <= 0.02,
          fmt("max occupancy |z| = %.2f (<= 3), |empirical - I(2)| = %.5f bits (<= 0.02), se %.5f",
              max_z, diff, e.standard_error_bits)};
}

Outcome repeatability() {
  int agree = 0;
  const int trials = 10'000;
  for (int i = 0; i < trials; ++i) {
    Box box = Box::unknown(true, false, mix_seed(2018, i));
    const Partition p = (i % 2 == 0) ? Partition::computational : Partition::phase;
    const int a = box.pt_measurement(p, AccountingPolicy::landauer_honest);
    const int b = box.pt_measurement(p, AccountingPolicy::landauer_honest);
    agree += a == b;
  }
  return {agree == trials, fmt("%.0f / %.0f trials agree", agree, trials)};
}

Outcome reset_cost() {
  Box box = Box::unknown(true, false, 1);
  box.equilibrate();
  box.reset();
  const double work = box.ledger().totals().work_on_system;
  const bool side0 = box.layout().side(Partition::computational, box.ontic_cell()) == 0 &&
                     box.epistemic()[box.layout().cell_at(1, 0)] == 0.0 &&
                     box.epistemic()[box.layout().cell_at(1, 1)] == 0.0;
  return {std::abs(work - kLn2) <= 1e-12 && side0,
          fmt("work_on_system = %.15f kT (ln 2 = %.15f), ends on side 0: %.0f", work, kLn2,
              side0 ? 1.0 : 0.0)};
}

Outcome second_law_audit() {
  const AuditReport free = perpetuum_audit(0, AccountingPolicy::pt_free_measurement);
  const bool free_ok =
      std::abs(free.totals.net_work_extracted() - kLn2) <= 1e-12 && free.violation;

  const std::size_t cycles = 100'000;
  bool honest_ok = true;
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t i = 0; i < cycles; ++i) {
    const AuditReport r = perpetuum_audit(mix_seed(99, i), AccountingPolicy::landauer_honest);
    honest_ok = honest_ok && r.totals.net_work_extracted() <= 0.0 && !r.violation;
    const double len = static_cast<double>(r.loop_iterations);
    sum += len;
    sum_sq += len * len;
  }
  const double n = static_cast<double>(cycles);
  const double mean = sum / n;
  const double sem = std::sqrt((sum_sq / n - mean * mean) / (n - 1.0));
  const bool length_ok = std::abs(mean - 2.0) <= 3.0 * sem;
  return {free_ok && honest_ok && length_ok,
          fmt("pt-free net %.15f kT flagged: %.0f; ", free.totals.net_work_extracted(),
              free.violation ? 1.0 : 0.0) +
              fmt("honest net <= 0 and unflagged over 1e5 cycles: %.0f; ", honest_ok ? 1.0 : 0.0) +
              fmt("mean loop length %.4f (|mean - 2| <= 3 sem = %.4f)", mean, 3.0 * sem)};
}

Outcome ceiling_contrast() {
  double worst = 0.0;
  bool above = true;
  for (unsigned n = 1; n <= 16; ++n) {
    const BitQuantity bits = erased_information(FamilyIndex(n));
    const double ratio = landauer_heat(bits, 300.0).joules / qubit_landauer_ceiling(300.0).joules;
    worst = std::max(worst, std::abs(ratio - bits.bits()));
    above = above && ratio > n;
  }
  return {above && worst <= 1e-12,
          fmt("max |ratio - I(n)| = %.3e, ratio > n for all n: %.0f", worst, above ? 1.0 : 0.0)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "normalization identity n=1..16", 1.0, normalization},
      {2, "strict bound I(n) > n, n=1..16", 1.0, strict_bound},
      {3, "I(1) = 1.5 bits exactly", 0.0, exact_value},
      {4, "machine erasure equals formula, n=1..8", 30.0, central_oracle},
      {5, "statistical complexity n+1, uniform stationary", 0.0, complexity},
      {6, "Monte Carlo consistency, n=2, 1e6 steps", 60.0, monte_carlo},
      {7, "box repeatability 1e4/1e4", 0.0, repeatability},
      {8, "reset costs ln 2 kT, ends on side 0", 0.0, reset_cost},
      {9, "perpetuum audit: pt-free flagged, honest never", 0.0, second_law_audit},
      {10, "ceiling contrast ratio = I(n) > n", 0.0, ceiling_contrast},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit_s > 0.0 && secs >= c.time_limit_s) {
      o.pass = false;
      o.detail += fmt(" [time limit %.0f s exceeded]", c.time_limit_s);
    }
    failures += !o.pass;
    std::printf("[%s] criterion %2d: %s -- %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.title,
                o.detail.c_str(), secs);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
