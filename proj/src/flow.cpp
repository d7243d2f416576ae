#include "pasim/flow.hpp"

#include <algorithm>

namespace pasim {

std::string to_string(Phase phase) {
  switch (phase) {
    case Phase::kOperating: return "operating";
    case Phase::kStandby: return "standby";
    case Phase::kDegradedWaiting: return "degraded-waiting";
    case Phase::kCriticalWaiting: return "critical-waiting";
    case Phase::kUnderRepair: return "under-repair";
    case Phase::kInPm: return "in-pm";
    case Phase::kOutOfService: return "out-of-service";
  }
  return "unknown";
}

double effective_capacity(const EquipmentSpec& spec, const EquipmentState& state) {
  auto loss = [&](ModeKind kind, bool during) {
    const auto* m = spec.mode(kind);
    if (!m) return 1.0;
    return during ? m->capacity_loss_during_repair : m->capacity_loss_before_repair;
  };
  switch (state.phase) {
    case Phase::kOperating: return 1.0;
    case Phase::kDegradedWaiting: return 1.0 - loss(ModeKind::kDegraded, false);
    case Phase::kCriticalWaiting: return 1.0 - loss(ModeKind::kCritical, false);
    case Phase::kUnderRepair: return 1.0 - loss(state.repair_mode, true);
    case Phase::kInPm: return state.engaged ? 1.0 - state.pm_capacity_loss : 0.0;
    case Phase::kStandby:
    case Phase::kOutOfService: return 0.0;
  }
  return 0.0;
}

double CapacitySnapshot::at(const std::string& id) const {
  auto it = values_.find(id);
  if (it == values_.end()) throw ContractError("capacity snapshot has no entry for '" + id + "'");
  return it->second;
}

namespace {

double series_throughput(const std::vector<Stage>& stages, const CapacitySnapshot& snapshot) {
  double value = 1.0;
  for (const auto& stage : stages) {
    double stage_value = 0.0;
    if (stage.is_single()) {
      stage_value = snapshot.at(stage.equipment_id());
    } else {
      double sum = 0.0;
      for (const auto& branch : stage.block().branches) {
        sum += branch.capacity * series_throughput(branch.stages, snapshot);
      }
      stage_value = std::min(1.0, sum);
    }
    value = std::min(value, stage_value);
  }
  return value;
}

}  // namespace

double compute_throughput(const Network& network, const CapacitySnapshot& snapshot) {
  return std::clamp(series_throughput(network.stages, snapshot), 0.0, 1.0);
}

FlowEvaluator::FlowEvaluator(const Network& network, const std::vector<EquipmentSpec>& equipment) {
  root_ = build_series(network.stages, 1.0, equipment);
}

std::size_t FlowEvaluator::build_series(const std::vector<Stage>& stages, double scale,
                                        const std::vector<EquipmentSpec>& equipment) {
  std::vector<std::size_t> children;
  for (const auto& stage : stages) {
    if (stage.is_single()) {
      const auto& id = stage.equipment_id();
      auto it = std::find_if(equipment.begin(), equipment.end(),
                             [&](const EquipmentSpec& e) { return e.id == id; });
      if (it == equipment.end()) throw ContractError("network references unknown equipment '" + id + "'");
      Node leaf{Node::Kind::kEquipment, static_cast<std::size_t>(it - equipment.begin()), 1.0, {}};
      nodes_.push_back(std::move(leaf));
      children.push_back(nodes_.size() - 1);
      continue;
    }
    std::vector<std::size_t> branches;
    for (const auto& branch : stage.block().branches) {
      branches.push_back(build_series(branch.stages, branch.capacity, equipment));
    }
    nodes_.push_back(Node{Node::Kind::kParallel, 0, 1.0, std::move(branches)});
    children.push_back(nodes_.size() - 1);
  }
  nodes_.push_back(Node{Node::Kind::kSeries, 0, scale, std::move(children)});
  return nodes_.size() - 1;
}

double FlowEvaluator::eval(std::size_t index, std::span<const double> capacities) const {
  const Node& node = nodes_[index];
  switch (node.kind) {
    case Node::Kind::kEquipment:
      return capacities[node.equipment];
    case Node::Kind::kSeries: {
      double value = 1.0;
      for (std::size_t child : node.children) {
        value = std::min(value, eval(child, capacities));
        if (value <= 0.0) break;
      }
      return value;
    }
    case Node::Kind::kParallel: {
      double sum = 0.0;
      for (std::size_t child : node.children) {
        sum += nodes_[child].scale * eval(child, capacities);
      }
      return std::min(1.0, sum);
    }
  }
  return 0.0;
}

double FlowEvaluator::operator()(std::span<const double> capacities) const {
  return std::clamp(eval(root_, capacities), 0.0, 1.0);
}

}  // namespace pasim
