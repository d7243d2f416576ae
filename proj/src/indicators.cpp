#include "pasim/indicators.hpp"

#include <algorithm>
#include <set>

namespace pasim {

namespace {

std::set<std::string> member_set(const Model& model, const SubsystemSelector& subsystem) {
  if (subsystem.equipment_ids.empty()) {
    throw ContractError("subsystem '" + subsystem.name + "' has no members");
  }
  std::set<std::string> members;
  for (const auto& id : subsystem.equipment_ids) {
    if (!model.find_equipment(id)) {
      throw ContractError("subsystem '" + subsystem.name + "' references unknown equipment '" + id + "'");
    }
    members.insert(id);
  }
  return members;
}

void drop_pm(Model& model, const std::set<std::string>& members) {
  std::erase_if(model.pm_tasks, [&](const PmTask& t) { return members.contains(t.equipment_id); });
}

double batch_mean(const Model& model, const StudyOptions& options, double* sem = nullptr) {
  const Simulator simulator(model, options.engine);
  const BatchStats stats = aggregate(run_batch(simulator, options.batch));
  if (sem) *sem = stats.sem_pa;
  return stats.mean_pa;
}

}  // namespace

Model force_zero_scenario(const Model& model, const SubsystemSelector& subsystem) {
  const auto members = member_set(model, subsystem);
  Model out = model;
  for (auto& e : out.equipment) {
    if (members.contains(e.id)) e.out_of_service = true;
  }
  drop_pm(out, members);
  return out;
}

Model perfect_scenario(const Model& model, const SubsystemSelector& subsystem) {
  const auto members = member_set(model, subsystem);
  Model out = model;
  for (auto& e : out.equipment) {
    if (!members.contains(e.id)) continue;
    for (auto& m : e.modes) m.failure_rate = 0.0;
    if (e.demand_failure_prob) e.demand_failure_prob = 0.0;
  }
  for (auto& g : out.ccf_groups) {
    std::erase_if(g.member_ids, [&](const std::string& id) { return members.contains(id); });
  }
  std::erase_if(out.ccf_groups, [](const CcfGroup& g) { return g.member_ids.size() < 2; });
  drop_pm(out, members);
  return out;
}

double criticality(const Model& model, const SubsystemSelector& subsystem,
                   const StudyOptions& options) {
  return 1.0 - batch_mean(force_zero_scenario(model, subsystem), options);
}

double contribution(const Model& model, const SubsystemSelector& subsystem,
                    const StudyOptions& options) {
  const Model perfect = perfect_scenario(model, subsystem);
  return batch_mean(perfect, options) - batch_mean(model, options);
}

IndicatorTable indicator_table(const Model& model, const std::vector<SubsystemSelector>& subsystems,
                               const StudyOptions& options) {
  IndicatorTable table;
  table.base = aggregate(run_batch(Simulator(model, options.engine), options.batch));
  table.base_mean_pa = table.base.mean_pa;
  table.base_sem_pa = table.base.sem_pa;
  for (const auto& s : subsystems) {
    IndicatorRow row;
    row.name = s.name;
    row.zero_mean_pa = batch_mean(force_zero_scenario(model, s), options);
    row.perfect_mean_pa = batch_mean(perfect_scenario(model, s), options, &row.perfect_sem_pa);
    row.criticality = 1.0 - row.zero_mean_pa;
    row.contribution = row.perfect_mean_pa - table.base_mean_pa;
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::vector<SubsystemSelector> resolve_subsystems(const Model& model,
                                                  const std::vector<std::string>& names) {
  if (names.empty()) throw ContractError("no subsystem requested");
  std::vector<SubsystemSelector> out;
  for (const auto& name : names) {
    if (name == "all") {
      if (model.subsystems.empty()) {
        for (const auto& e : model.equipment) out.push_back({e.id, {e.id}});
      } else {
        for (const auto& s : model.subsystems) out.push_back({s.name, s.member_ids});
      }
      continue;
    }
    auto it = std::find_if(model.subsystems.begin(), model.subsystems.end(),
                           [&](const Subsystem& s) { return s.name == name; });
    if (it != model.subsystems.end()) {
      out.push_back({it->name, it->member_ids});
    } else if (model.find_equipment(name)) {
      out.push_back({name, {name}});
    } else {
      throw ContractError("unknown subsystem '" + name + "'");
    }
  }
  return out;
}

}  // namespace pasim
