#pragma once

// Hand calculation of production availability for a model whose failure rates
// are all zero, so only shutdowns and preventive maintenance remove capacity.
//
// Conventions (mirrors the engine contract, computed independently):
//   * shutdown windows start at k*interval, k >= 1, while start + duration <= horizon;
//   * PM tasks fall due at k*interval < horizon; an aligned task whose calendar
//     year (floor(t / 8760)) holds a shutdown start is absorbed by the shutdown;
//   * tasks due together queue per crew in declaration order and run back to back,
//     crews work in parallel, PM calls pay no mobilization;
//   * an item in PM keeps (1 - capacity_loss); passive units are never switched
//     in for a PM, so they stay at 0.
// Campaigns are assumed not to overlap each other or a shutdown window.

#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "max_flow.hpp"
#include "pasim/model.hpp"

namespace oracle {

inline double zero_failure_pa(const pasim::Model& model) {
  const double horizon = model.horizon_hours;
  double lost = 0.0;

  std::set<long> shutdown_years;
  for (const auto& s : model.shutdowns) {
    for (int k = 1; k * s.interval_hours + s.duration_hours <= horizon; ++k) {
      lost += s.duration_hours * s.capacity_loss;
      shutdown_years.insert(static_cast<long>(std::floor(k * s.interval_hours / 8760.0)));
    }
  }

  // due time -> task indices in declaration order
  std::map<double, std::vector<std::size_t>> campaigns;
  for (std::size_t t = 0; t < model.pm_tasks.size(); ++t) {
    const auto& task = model.pm_tasks[t];
    for (int k = 1; k * task.interval_hours < horizon; ++k) {
      const double due = k * task.interval_hours;
      const long year = static_cast<long>(std::floor(due / 8760.0));
      if (task.align_with_shutdown && shutdown_years.count(year) != 0) continue;
      campaigns[due].push_back(t);
    }
  }

  for (const auto& [due, tasks] : campaigns) {
    struct Slot {
      std::string equipment;
      double begin, end, loss;
    };
    std::vector<Slot> slots;
    std::map<std::string, double> crew_free;  // offset at which each crew is next idle
    for (std::size_t t : tasks) {
      const auto& task = model.pm_tasks[t];
      const std::string& crew = model.find_equipment(task.equipment_id)->crew;
      const double begin = crew_free[crew];
      slots.push_back({task.equipment_id, begin, begin + task.duration_hours, task.capacity_loss});
      crew_free[crew] = begin + task.duration_hours;
    }
    std::set<double> cuts{0.0};
    for (const auto& s : slots) {
      cuts.insert(s.begin);
      cuts.insert(s.end);
    }
    for (auto it = cuts.begin(); std::next(it) != cuts.end(); ++it) {
      const double a = *it;
      const double b = *std::next(it);
      pasim::CapacitySnapshot snapshot;
      for (const auto& e : model.equipment) {
        snapshot.set(e.id, e.role == pasim::Role::kActive && !e.out_of_service ? 1.0 : 0.0);
      }
      for (const auto& s : slots) {
        if (s.begin <= a && b <= s.end) snapshot.set(s.equipment, 1.0 - s.loss);
      }
      lost += (b - a) * (1.0 - max_flow_throughput(model.network, snapshot));
    }
  }
  return 1.0 - lost / horizon;
}

}  // namespace oracle
