#pragma once

// One-particle box with four cells and two removable partitions, with a work
// and heat ledger. Cells are labelled by coordinates (x, y): x is the side of
// the "computational" partition, y the side of the "phase" partition. With
// the default layout cell = 2x + y, i.e. computational splits {0,1}|{2,3}
// and phase splits {0,2}|{1,3}.
//
// Energies in the ledger are in units of kT. Isothermal compression of the
// accessible volume by a factor r costs kT ln r of work, all of it dissipated
// as heat; erasing one measurement record costs kT ln 2. Moving partitions
// and waiting for equilibration are free.
//
// Positions inside a cell never influence an outcome or a ledger entry, so
// the particle is tracked at cell resolution only. A faithful continuous
// position would make the ontic state space continuous, i.e. unbounded
// memory.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qthermo/rng.hpp"

namespace qthermo {

enum class Partition { computational, phase };
enum class InsertSpeed { rapid, after_equilibration };

// landauer_honest charges kT ln 2 for every record erased;
// pt_free_measurement treats records as free (the assumption being audited).
enum class AccountingPolicy { landauer_honest, pt_free_measurement };

const char* to_string(Partition p);
const char* to_string(AccountingPolicy p);

inline constexpr std::size_t kCells = 4;

// Side (0 or 1) of each cell for each partition. The two partitions must
// each split the cells 2|2 and jointly tell all four cells apart.
class PartitionLayout {
 public:
  PartitionLayout() : PartitionLayout({0, 0, 1, 1}, {0, 1, 0, 1}) {}
  // Throws domain_error for an invalid layout.
  PartitionLayout(std::array<int, kCells> computational, std::array<int, kCells> phase);

  int side(Partition p, std::size_t cell) const {
    return p == Partition::computational ? computational_[cell] : phase_[cell];
  }
  std::size_t cell_at(int x, int y) const;

 private:
  std::array<int, kCells> computational_;
  std::array<int, kCells> phase_;
};

struct LedgerEntry {
  std::string tag;
  double work_on_system = 0.0;   // kT, >= 0 (compression, erasure)
  double work_extracted = 0.0;   // kT, >= 0 (expansion)
  double heat_dissipated = 0.0;  // kT, >= 0
  double record_bits_created = 0.0;
  double record_bits_erased = 0.0;
};

struct LedgerTotals {
  double work_on_system = 0.0;
  double work_extracted = 0.0;
  double heat_dissipated = 0.0;
  double record_bits_created = 0.0;
  double record_bits_erased = 0.0;

  double net_work_extracted() const { return work_extracted - work_on_system; }
};

class ThermoLedger {
 public:
  // Throws domain_error on a negative or non-finite amount.
  void append(LedgerEntry entry);
  const std::vector<LedgerEntry>& entries() const { return entries_; }
  LedgerTotals totals() const;

 private:
  std::vector<LedgerEntry> entries_;
};

// Probabilities of RAND's three outputs (x,y) = (0,0), (1,0), (1,1).
struct RandDistribution {
  double p00;
  double p10;
  double p11;

  // Randomize x (remove partition, equilibrate, reinsert); then randomize y
  // only on the x = 1 side: (1/2, 1/4, 1/4).
  static RandDistribution sequential_equilibration();
};

class Box {
 public:
  // Observer knows nothing: epistemic uniform over the four cells, particle
  // in a uniformly random cell.
  static Box unknown(bool computational, bool phase, std::uint64_t seed,
                     PartitionLayout layout = {});
  // Observer knows the region holding `cell`: epistemic uniform over it.
  static Box localized(std::size_t cell, bool computational, bool phase, std::uint64_t seed,
                       PartitionLayout layout = {});

  std::size_t ontic_cell() const { return ontic_; }
  const std::array<double, kCells>& epistemic() const { return epistemic_; }
  bool inserted(Partition p) const;
  std::size_t inserted_count() const { return inserted_comp_ + inserted_phase_; }
  const PartitionLayout& layout() const { return layout_; }
  const ThermoLedger& ledger() const { return ledger_; }
  double outstanding_record_bits() const { return honest_records_ + free_records_; }
  double epistemic_entropy_bits() const;

  // Cells reachable from `cell` without crossing an inserted partition.
  std::vector<std::size_t> region(std::size_t cell) const;

  // Epistemic mass sits on the ontic cell and is uniform inside every
  // region. The second half only holds between procedures, not mid-way.
  bool ontic_supported() const;
  bool epistemic_uniform_within_regions() const;

  // Throws state_error if the partition is absent.
  void remove_partition(Partition p);
  // rapid: the particle has no time to move; per-cell mass is kept as is.
  // after_equilibration: equilibrate() first, then insert.
  // Throws state_error if the partition is already present.
  void insert_partition(Partition p, InsertSpeed speed);
  // Mass of each region is spread uniformly over it; the particle is
  // resampled uniformly within its region.
  void equilibrate();
  // Side of the particle; conditions the epistemic state on it and creates
  // one record bit. Throws state_error if the partition is absent.
  int read_side(Partition p, AccountingPolicy policy);

  // Remove the inserted partition, rapidly insert `p`, read, equilibrate.
  // Requires exactly one partition inserted.
  int pt_measurement(Partition p, AccountingPolicy policy);
  // Remove `to_remove`, read the other partition, equilibrate, reinsert.
  // Requires both partitions inserted.
  int ontic_measurement(Partition to_remove, AccountingPolicy policy);

  // Stochastic map from (0,0) with both partitions inserted onto
  // {(0,0), (1,0), (1,1)}. Logs a zero-cost entry.
  void rand(const RandDistribution& dist = RandDistribution::sequential_equilibration());

  // Remove the computational partition, compress each region to its x = 0
  // half (work ln 2, dissipated), reinsert. Leaves x = 0 with certainty.
  void reset();
  // Inverse of reset: from x = 0 known with the computational partition in,
  // remove it and let the gas expand isothermally (extracts ln 2), reinsert.
  // Throws state_error if x = 1 has epistemic mass or the partition is out.
  void reverse_reset();

  // Erase all outstanding records: kT ln 2 each for those read under
  // landauer_honest, free for those read under pt_free_measurement.
  void erase_records();

 private:
  Box(PartitionLayout layout, std::size_t ontic, std::array<double, kCells> epistemic,
      bool computational, bool phase, std::uint64_t seed);

  bool& flag(Partition p) { return p == Partition::computational ? inserted_comp_ : inserted_phase_; }
  bool connected(std::size_t a, std::size_t b) const;
  void require_inserted(Partition p, const char* op) const;
  void log(std::string tag) { ledger_.append({std::move(tag)}); }

  PartitionLayout layout_;
  std::size_t ontic_;
  std::array<double, kCells> epistemic_;
  bool inserted_comp_;
  bool inserted_phase_;
  Rng rng_;
  ThermoLedger ledger_;
  double honest_records_ = 0.0;
  double free_records_ = 0.0;
};

struct AuditReport {
  std::uint64_t seed = 0;
  AccountingPolicy policy = AccountingPolicy::landauer_honest;
  LedgerTotals totals;
  std::size_t loop_iterations = 0;  // computational measurements until outcome 0
  std::size_t measurements = 0;     // computational + phase measurements
  bool violation = false;           // net work extracted > 0 over the cycle
  std::vector<LedgerEntry> entries;
};

inline constexpr std::size_t kMaxAuditIterations = 10'000;

// Start with the computational partition in and no knowledge of the particle.
// Repeat: measure computational; stop on 0; otherwise measure phase. Then run
// the reversed reset to extract work and erase every record. Throws
// convergence_error after kMaxAuditIterations loops.
AuditReport perpetuum_audit(std::uint64_t seed, AccountingPolicy policy,
                            PartitionLayout layout = {});

}  // namespace qthermo
