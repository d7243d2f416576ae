#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "pasim/flow.hpp"
#include "pasim/model.hpp"
#include "pasim/random.hpp"

namespace pasim {

/// When a passive standby unit is called into service.
enum class StandbyTrigger {
  /// An engaged member drops to zero capacity on a corrective event: critical
  /// failure, common-cause failure, or the start of a repair.
  kOnOutage,
  /// Any corrective capacity loss, including a degraded failure awaiting repair.
  kOnAnyLoss,
};

struct EngineOptions {
  StandbyTrigger standby_trigger = StandbyTrigger::kOnAnyLoss;
  /// Freeze failure clocks during plant shutdowns. Clocks of an item in PM are
  /// always frozen.
  bool freeze_clocks_during_shutdown = true;
  /// Charge crew mobilization for preventive jobs as well as corrective ones.
  bool pm_requires_mobilization = false;
};

struct EquipmentCounters {
  std::uint64_t degraded_failures = 0;
  std::uint64_t critical_failures = 0;  // independent critical failures
  std::uint64_t ccf_failures = 0;
  std::uint64_t demand_failures = 0;
  std::uint64_t repairs = 0;
  std::uint64_t pm_completed = 0;
  double downtime_hours = 0.0;     // failure to end of repair
  double repair_wait_hours = 0.0;  // failure to start of repair

  bool operator==(const EquipmentCounters&) const = default;
};

struct RunResult {
  std::uint64_t run_index = 0;
  std::uint64_t seed = 0;
  double horizon_hours = 0.0;
  double bucket_hours = 0.0;
  double produced_volume = 0.0;  // capacity-hours
  double planned_volume = 0.0;   // horizon x 100%
  std::vector<double> bucket_integrals;
  std::vector<EquipmentCounters> equipment;  // model equipment order

  bool operator==(const RunResult&) const = default;
};

enum class EventKind {
  kFailure,
  kCcfFailure,
  kCrewArrived,
  kSpareArrived,
  kRepairComplete,
  kPmDue,
  kPmComplete,
  kShutdownStart,
  kShutdownEnd,
  kPeriodicRestock,
};

/// Read-only view of the engine state after an event has been processed.
struct EngineView {
  double time = 0.0;
  EventKind kind = EventKind::kFailure;
  double throughput = 0.0;
  bool shutdown_active = false;
  std::span<const EquipmentState> equipment;
  std::span<const int> crew_busy;
  std::span<const int> crew_size;
  std::span<const int> spare_stock;
};

/// Hook for audits and tracing. Called synchronously from the run loop.
class RunObserver {
 public:
  virtual ~RunObserver() = default;
  virtual void on_event(const EngineView& view) { (void)view; }
  virtual void on_job_start(double time, std::size_t equipment, bool preventive,
                            bool spare_reserved) {
    (void)time, (void)equipment, (void)preventive, (void)spare_reserved;
  }
};

/// A validated model compiled for repeated runs. Immutable and shareable
/// across threads; each run owns its mutable state.
class Simulator {
 public:
  /// Throws ContractError when the model fails validation.
  explicit Simulator(Model model, EngineOptions options = {});
  ~Simulator();
  Simulator(Simulator&&) noexcept;
  Simulator& operator=(Simulator&&) noexcept;

  RunResult run(std::uint64_t seed, double bucket_hours, RunObserver* observer = nullptr,
                std::uint64_t run_index = 0) const;

  const Model& model() const;
  const EngineOptions& options() const;

  struct Compiled;

 private:
  std::unique_ptr<Compiled> compiled_;
};

/// One seeded run of a validated model.
RunResult run_simulation(const Model& model, std::uint64_t seed, double bucket_hours,
                         const EngineOptions& options = {});

}  // namespace pasim
