#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "pasim/model.hpp"

namespace pasim {

enum class Phase {
  kOperating,
  kStandby,
  kDegradedWaiting,
  kCriticalWaiting,
  kUnderRepair,
  kInPm,
  kOutOfService,
};

std::string to_string(Phase phase);

/// Dynamic state of one equipment item as seen by the flow solver.
struct EquipmentState {
  Phase phase = Phase::kOperating;
  ModeKind repair_mode = ModeKind::kCritical;  // mode being repaired (kUnderRepair)
  double pm_capacity_loss = 1.0;               // loss of the running PM task (kInPm)
  bool engaged = true;  // holds an active slot in its standby group
};

/// Fraction of nominal capacity the item contributes in `state`: 1 when
/// operating, 1 - loss while degraded or under repair/PM, 0 when critical,
/// in standby or out of service. A standby unit in PM contributes 0.
double effective_capacity(const EquipmentSpec& spec, const EquipmentState& state);

/// Per-equipment effective capacity keyed by equipment id.
class CapacitySnapshot {
 public:
  CapacitySnapshot() = default;
  CapacitySnapshot(std::initializer_list<std::pair<const std::string, double>> init) : values_(init) {}

  void set(const std::string& id, double capacity) { values_[id] = capacity; }
  /// Throws ContractError when `id` has no entry.
  double at(const std::string& id) const;
  std::size_t size() const { return values_.size(); }

 private:
  std::map<std::string, double> values_;
};

/// Series stages take the minimum; a parallel stage carries
/// min(1, sum of branch_capacity * branch throughput). Result clamped to [0, 1].
double compute_throughput(const Network& network, const CapacitySnapshot& snapshot);

/// Index-based form of a network for repeated evaluation inside the engine.
/// Equipment ids are resolved once against the model's equipment order.
class FlowEvaluator {
 public:
  FlowEvaluator(const Network& network, const std::vector<EquipmentSpec>& equipment);

  /// `capacities[i]` is the effective capacity of equipment i in model order.
  double operator()(std::span<const double> capacities) const;

 private:
  struct Node {
    enum class Kind { kEquipment, kSeries, kParallel } kind;
    std::size_t equipment = 0;       // kEquipment
    double scale = 1.0;              // branch capacity when the node is a branch body
    std::vector<std::size_t> children;
  };

  std::size_t build_series(const std::vector<Stage>& stages, double scale,
                           const std::vector<EquipmentSpec>& equipment);
  double eval(std::size_t node, std::span<const double> capacities) const;

  std::vector<Node> nodes_;
  std::size_t root_ = 0;
};

}  // namespace pasim
