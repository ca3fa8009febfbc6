#include "qthermo/szilard_box.hpp"

#include <cmath>
#include <numbers>

#include "qthermo/errors.hpp"
#include "qthermo/probability.hpp"

namespace qthermo {

namespace {

constexpr double kLn2 = std::numbers::ln2;

Partition other(Partition p) {
  return p == Partition::computational ? Partition::phase : Partition::computational;
}

}  // namespace

const char* to_string(Partition p) {
  return p == Partition::computational ? "computational" : "phase";
}

const char* to_string(AccountingPolicy p) {
  return p == AccountingPolicy::landauer_honest ? "landauer_honest" : "pt_free_measurement";
}

PartitionLayout::PartitionLayout(std::array<int, kCells> computational,
                                 std::array<int, kCells> phase)
    : computational_(computational), phase_(phase) {
  int comp_ones = 0, phase_ones = 0;
  std::array<int, kCells> seen{};
  for (std::size_t c = 0; c < kCells; ++c) {
    if ((computational_[c] != 0 && computational_[c] != 1) || (phase_[c] != 0 && phase_[c] != 1)) {
      throw domain_error("partition sides must be 0 or 1");
    }
    comp_ones += computational_[c];
    phase_ones += phase_[c];
    ++seen[static_cast<std::size_t>(2 * computational_[c] + phase_[c])];
  }
  if (comp_ones != 2 || phase_ones != 2) throw domain_error("each partition must split the cells 2|2");
  for (int k : seen) {
    if (k != 1) throw domain_error("the two partitions must jointly distinguish every cell");
  }
}

std::size_t PartitionLayout::cell_at(int x, int y) const {
  for (std::size_t c = 0; c < kCells; ++c) {
    if (computational_[c] == x && phase_[c] == y) return c;
  }
  throw domain_error("no cell at the requested coordinates");
}

void ThermoLedger::append(LedgerEntry entry) {
  for (double v : {entry.work_on_system, entry.work_extracted, entry.heat_dissipated,
                   entry.record_bits_created, entry.record_bits_erased}) {
    if (!std::isfinite(v) || v < 0.0) {
      throw domain_error("ledger amounts must be finite and nonnegative (" + entry.tag + ")");
    }
  }
  entries_.push_back(std::move(entry));
}

LedgerTotals ThermoLedger::totals() const {
  LedgerTotals t;
  for (const LedgerEntry& e : entries_) {
    t.work_on_system += e.work_on_system;
    t.work_extracted += e.work_extracted;
    t.heat_dissipated += e.heat_dissipated;
    t.record_bits_created += e.record_bits_created;
    t.record_bits_erased += e.record_bits_erased;
  }
  return t;
}

RandDistribution RandDistribution::sequential_equilibration() {
  // Stage 1: x equilibrates over its two sides.
  const double x0 = 0.5, x1 = 0.5;
  // Stage 2: y equilibrates only where x = 1; x = 0 keeps y = 0.
  return {x0, x1 * 0.5, x1 * 0.5};
}

Box::Box(PartitionLayout layout, std::size_t ontic, std::array<double, kCells> epistemic,
         bool computational, bool phase, std::uint64_t seed)
    : layout_(layout),
      ontic_(ontic),
      epistemic_(epistemic),
      inserted_comp_(computational),
      inserted_phase_(phase),
      rng_(seed) {}

Box Box::unknown(bool computational, bool phase, std::uint64_t seed, PartitionLayout layout) {
  Box box(layout, 0, {0.25, 0.25, 0.25, 0.25}, computational, phase, seed);
  box.ontic_ = static_cast<std::size_t>(box.rng_.below(kCells));
  return box;
}

Box Box::localized(std::size_t cell, bool computational, bool phase, std::uint64_t seed,
                   PartitionLayout layout) {
  if (cell >= kCells) throw domain_error("cell index out of range");
  Box box(layout, cell, {}, computational, phase, seed);
  const auto reg = box.region(cell);
  for (std::size_t c : reg) box.epistemic_[c] = 1.0 / static_cast<double>(reg.size());
  return box;
}

bool Box::inserted(Partition p) const {
  return p == Partition::computational ? inserted_comp_ : inserted_phase_;
}

double Box::epistemic_entropy_bits() const { return shannon_bits(epistemic_); }

bool Box::connected(std::size_t a, std::size_t b) const {
  for (Partition p : {Partition::computational, Partition::phase}) {
    if (inserted(p) && layout_.side(p, a) != layout_.side(p, b)) return false;
  }
  return true;
}

std::vector<std::size_t> Box::region(std::size_t cell) const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < kCells; ++c) {
    if (connected(cell, c)) out.push_back(c);
  }
  return out;
}

bool Box::ontic_supported() const { return epistemic_[ontic_] > 0.0; }

bool Box::epistemic_uniform_within_regions() const {
  for (std::size_t c = 0; c < kCells; ++c) {
    for (std::size_t d : region(c)) {
      if (std::abs(epistemic_[c] - epistemic_[d]) > 1e-12) return false;
    }
  }
  return true;
}

void Box::require_inserted(Partition p, const char* op) const {
  if (!inserted(p)) {
    throw state_error(std::string(op) + ": " + to_string(p) + " partition is not inserted");
  }
}

void Box::remove_partition(Partition p) {
  require_inserted(p, "remove_partition");
  flag(p) = false;
}

void Box::insert_partition(Partition p, InsertSpeed speed) {
  if (inserted(p)) {
    throw state_error(std::string("insert_partition: ") + to_string(p) +
                      " partition is already inserted");
  }
  if (speed == InsertSpeed::after_equilibration) equilibrate();
  flag(p) = true;
}

void Box::equilibrate() {
  std::array<double, kCells> next{};
  for (std::size_t c = 0; c < kCells; ++c) {
    const auto reg = region(c);
    double mass = 0.0;
    for (std::size_t d : reg) mass += epistemic_[d];
    next[c] = mass / static_cast<double>(reg.size());
  }
  epistemic_ = next;
  const auto reg = region(ontic_);
  ontic_ = reg[static_cast<std::size_t>(rng_.below(reg.size()))];
}

int Box::read_side(Partition p, AccountingPolicy policy) {
  require_inserted(p, "read_side");
  const int side = layout_.side(p, ontic_);
  double mass = 0.0;
  for (std::size_t c = 0; c < kCells; ++c) {
    if (layout_.side(p, c) != side) epistemic_[c] = 0.0;
    mass += epistemic_[c];
  }
  for (double& e : epistemic_) e /= mass;
  (policy == AccountingPolicy::landauer_honest ? honest_records_ : free_records_) += 1.0;
  ledger_.append({std::string("read:") + to_string(p), 0.0, 0.0, 0.0, 1.0, 0.0});
  return side;
}

int Box::pt_measurement(Partition p, AccountingPolicy policy) {
  if (inserted_count() != 1) {
    throw state_error("pt_measurement requires exactly one inserted partition");
  }
  remove_partition(inserted(Partition::computational) ? Partition::computational
                                                      : Partition::phase);
  insert_partition(p, InsertSpeed::rapid);
  const int outcome = read_side(p, policy);
  equilibrate();
  return outcome;
}

int Box::ontic_measurement(Partition to_remove, AccountingPolicy policy) {
  if (inserted_count() != 2) {
    throw state_error("ontic_measurement requires both partitions inserted");
  }
  remove_partition(to_remove);
  const int outcome = read_side(other(to_remove), policy);
  equilibrate();
  insert_partition(to_remove, InsertSpeed::rapid);
  return outcome;
}

void Box::rand(const RandDistribution& dist) {
  const std::size_t start = layout_.cell_at(0, 0);
  if (inserted_count() != 2 || ontic_ != start || epistemic_[start] != 1.0) {
    throw state_error("RAND requires the known state (x=0, y=0) with both partitions inserted");
  }
  for (double p : {dist.p00, dist.p10, dist.p11}) {
    if (!(p >= 0.0 && p <= 1.0)) throw domain_error("RAND probabilities must lie in [0, 1]");
  }
  if (std::abs(dist.p00 + dist.p10 + dist.p11 - 1.0) > 1e-12) {
    throw domain_error("RAND probabilities must sum to 1");
  }
  const std::size_t c00 = start, c10 = layout_.cell_at(1, 0), c11 = layout_.cell_at(1, 1);
  epistemic_ = {};
  epistemic_[c00] = dist.p00;
  epistemic_[c10] = dist.p10;
  epistemic_[c11] = dist.p11;
  const double u = rng_.uniform();
  ontic_ = u < dist.p00 ? c00 : (u < dist.p00 + dist.p10 ? c10 : c11);
  if (epistemic_[ontic_] == 0.0) ontic_ = dist.p11 > 0.0 ? c11 : (dist.p10 > 0.0 ? c10 : c00);
  log("rand");
}

void Box::reset() {
  if (inserted(Partition::computational)) remove_partition(Partition::computational);
  std::array<double, kCells> next{};
  for (int y : {0, 1}) {
    next[layout_.cell_at(0, y)] = epistemic_[layout_.cell_at(0, y)] + epistemic_[layout_.cell_at(1, y)];
  }
  epistemic_ = next;
  ontic_ = layout_.cell_at(0, layout_.side(Partition::phase, ontic_));
  ledger_.append({"reset", kLn2, 0.0, kLn2, 0.0, 0.0});
  insert_partition(Partition::computational, InsertSpeed::rapid);
}

void Box::reverse_reset() {
  require_inserted(Partition::computational, "reverse_reset");
  for (int y : {0, 1}) {
    if (epistemic_[layout_.cell_at(1, y)] != 0.0) {
      throw state_error("reverse_reset requires side x = 0 to be known");
    }
  }
  remove_partition(Partition::computational);
  std::array<double, kCells> next{};
  for (int y : {0, 1}) {
    const double half = epistemic_[layout_.cell_at(0, y)] / 2.0;
    next[layout_.cell_at(0, y)] = half;
    next[layout_.cell_at(1, y)] = half;
  }
  epistemic_ = next;
  ontic_ = layout_.cell_at(rng_.coin() ? 1 : 0, layout_.side(Partition::phase, ontic_));
  ledger_.append({"reverse_reset", 0.0, kLn2, 0.0, 0.0, 0.0});
  insert_partition(Partition::computational, InsertSpeed::rapid);
}

void Box::erase_records() {
  const double charged = honest_records_ * kLn2;
  ledger_.append({"erase_records", charged, 0.0, charged, 0.0, honest_records_ + free_records_});
  honest_records_ = 0.0;
  free_records_ = 0.0;
}

AuditReport perpetuum_audit(std::uint64_t seed, AccountingPolicy policy, PartitionLayout layout) {
  AuditReport report;
  report.seed = seed;
  report.policy = policy;
  Box box = Box::unknown(true, false, seed, layout);
  bool reached_zero = false;
  while (report.loop_iterations < kMaxAuditIterations) {
    ++report.loop_iterations;
    ++report.measurements;
    if (box.pt_measurement(Partition::computational, policy) == 0) {
      reached_zero = true;
      break;
    }
    ++report.measurements;
    box.pt_measurement(Partition::phase, policy);
  }
  if (!reached_zero) {
    throw convergence_error("perpetuum loop did not reach outcome 0 in " +
                            std::to_string(kMaxAuditIterations) + " iterations");
  }
  box.reverse_reset();
  box.erase_records();
  report.totals = box.ledger().totals();
  report.violation = report.totals.net_work_extracted() > 0.0;
  report.entries = box.ledger().entries();
  return report;
}

}  // namespace qthermo
