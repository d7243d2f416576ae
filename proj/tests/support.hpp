#pragma once

#include <string>

#include "pasim/model.hpp"

namespace testing {

/// Reference model with every failure rate and demand-failure probability at 0.
inline pasim::Model without_failures(pasim::Model model) {
  for (auto& e : model.equipment) {
    for (auto& m : e.modes) m.failure_rate = 0.0;
    if (e.demand_failure_prob) e.demand_failure_prob = 0.0;
  }
  return model;
}

/// Smallest valid model: one active item on one crew.
inline pasim::Model single_item(double failure_rate, double repair_rate, double horizon) {
  pasim::Model m;
  m.horizon_hours = horizon;
  m.network.stages = {pasim::Stage::single("pump")};
  pasim::EquipmentSpec pump;
  pump.id = "pump";
  pump.crew = "crew";
  pump.modes.push_back({pasim::ModeKind::kCritical, failure_rate, repair_rate, 1.0, 1.0});
  m.equipment.push_back(pump);
  m.crews.push_back({"crew", 1, 0.0});
  return m;
}

inline bool has_rule(const std::vector<pasim::Diagnostic>& diagnostics, const std::string& rule) {
  for (const auto& d : diagnostics) {
    if (d.rule == rule) return true;
  }
  return false;
}

}  // namespace testing
