#pragma once

#include <string>
#include <vector>

#include "pasim/engine.hpp"
#include "pasim/model.hpp"
#include "pasim/stats.hpp"

namespace pasim {

struct SubsystemSelector {
  std::string name;
  std::vector<std::string> equipment_ids;
};

/// Members pinned to zero capacity with their preventive and corrective
/// maintenance disabled. Crews and spare pools are left untouched.
Model force_zero_scenario(const Model& model, const SubsystemSelector& subsystem);

/// Members never fail and receive no PM: failure rates and demand-failure
/// probabilities are zeroed and the members leave their common-cause groups.
/// A group left with a single member is dissolved, so that member fails at its
/// full critical rate.
Model perfect_scenario(const Model& model, const SubsystemSelector& subsystem);

struct StudyOptions {
  BatchOptions batch;
  EngineOptions engine;
};

/// 1 - mean PA of the force-zero scenario.
double criticality(const Model& model, const SubsystemSelector& subsystem,
                   const StudyOptions& options);

/// Mean PA of the perfect scenario minus the base mean PA. Both batches share
/// the base seed, so every item draws the same substreams in both.
double contribution(const Model& model, const SubsystemSelector& subsystem,
                    const StudyOptions& options);

struct IndicatorRow {
  std::string name;
  double criticality = 0.0;
  double contribution = 0.0;
  double zero_mean_pa = 0.0;
  double perfect_mean_pa = 0.0;
  double perfect_sem_pa = 0.0;
};

struct IndicatorTable {
  BatchStats base;
  double base_mean_pa = 0.0;
  double base_sem_pa = 0.0;
  std::vector<IndicatorRow> rows;
};

/// Criticality and contribution for each subsystem, sharing one base batch.
IndicatorTable indicator_table(const Model& model, const std::vector<SubsystemSelector>& subsystems,
                               const StudyOptions& options);

/// Looks names up among the model's declared subsystems, falling back to
/// single equipment ids. "all" expands to every declared subsystem, or to one
/// row per equipment item when none are declared. Throws ContractError on an
/// unknown name or an empty request.
std::vector<SubsystemSelector> resolve_subsystems(const Model& model,
                                                  const std::vector<std::string>& names);

}  // namespace pasim
