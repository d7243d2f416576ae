#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pasim/engine.hpp"

namespace pasim {

struct BatchOptions {
  std::size_t runs = 1000;
  std::uint64_t seed = 1;
  double bucket_hours = 24.0;
  unsigned threads = 1;  // 0 = hardware concurrency
};

/// Runs `options.runs` independent replications. Run i is seeded with
/// run_seed(options.seed, i); results come back in run-index order whatever
/// the thread count.
std::vector<RunResult> run_batch(const Simulator& simulator, const BatchOptions& options);

/// Produced volume over planned volume. Throws DomainError if nothing was planned.
double production_availability(const RunResult& run);

struct MeanCounters {
  double degraded_failures = 0.0;
  double critical_failures = 0.0;
  double ccf_failures = 0.0;
  double demand_failures = 0.0;
  double repairs = 0.0;
  double pm_completed = 0.0;
  double downtime_hours = 0.0;
  double repair_wait_hours = 0.0;
};

struct BatchStats {
  std::size_t run_count = 0;
  double mean_pa = 0.0;
  double std_pa = 0.0;  // sample standard deviation across runs
  double sem_pa = 0.0;  // std_pa / sqrt(run_count)
  double horizon_hours = 0.0;
  double bucket_hours = 0.0;
  std::vector<double> profile;  // mean throughput fraction per bucket
  std::vector<MeanCounters> equipment;

  /// Start time of bucket b in hours.
  double bucket_start(std::size_t b) const { return static_cast<double>(b) * bucket_hours; }
  double bucket_width(std::size_t b) const;
};

/// Cross-run statistics. Runs are ordered by run index before folding, so the
/// result does not depend on input order. Throws DomainError on an empty list
/// and ContractError when bucket layouts or planned volumes differ.
BatchStats aggregate(std::vector<RunResult> runs);

}  // namespace pasim
