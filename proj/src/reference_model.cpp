#include "pasim/model.hpp"

namespace pasim {

namespace {

constexpr double kYear = kHoursPerYear;

FailureModeSpec degraded(double rate, double mttr) {
  return {ModeKind::kDegraded, rate, 1.0 / mttr, 0.5, 1.0};
}

FailureModeSpec critical(double rate, double mttr) {
  return {ModeKind::kCritical, rate, 1.0 / mttr, 1.0, 1.0};
}

EquipmentSpec item(std::string id, std::vector<FailureModeSpec> modes, std::string crew,
                   std::optional<std::string> pool) {
  EquipmentSpec e;
  e.id = std::move(id);
  e.modes = std::move(modes);
  e.crew = std::move(crew);
  e.spare_pool = std::move(pool);
  return e;
}

SparePool pool(std::string id) {
  SparePool p;
  p.id = std::move(id);
  p.initial_stock = 1;
  p.restock_to = 1;
  p.reorder_threshold = 0;
  p.lead_time_hours = 72.0;
  return p;
}

Branch branch(std::vector<Stage> stages, double capacity) {
  return Branch{std::move(stages), capacity};
}

}  // namespace

Model build_reference_model() {
  Model m;
  m.horizon_hours = 20 * kYear;

  // Rates per hour, MTTR in hours.
  for (int i = 1; i <= 4; ++i) {
    m.equipment.push_back(item("esdv-" + std::to_string(i), {critical(10.8e-6, 2)}, "crew-a",
                               std::nullopt));
  }
  m.equipment.push_back(
      item("separator", {degraded(409.6e-6, 5), critical(143.6e-6, 5)}, "crew-a", "separator"));

  const char* branches[] = {"a", "b", "c"};
  for (const char* b : branches) {
    auto compressor = item(std::string("compressor-") + b,
                           {degraded(1084.4e-6, 10), critical(1080.8e-6, 17)}, "crew-b",
                           "compressor");
    compressor.standby_group = "compressors";
    m.equipment.push_back(std::move(compressor));
  }
  m.equipment.back().role = Role::kPassiveStandby;
  m.equipment.back().demand_failure_prob = 0.05;

  for (const char* b : branches) {
    for (int k = 1; k <= 2; ++k) {
      m.equipment.push_back(item(std::string("cooling-") + b + std::to_string(k),
                                 {degraded(657.6e-6, 4), critical(82.4e-6, 4)}, "crew-a",
                                 "cooling"));
    }
  }

  for (const char* b : {"a", "b"}) {
    auto unit = item(std::string("treatment-") + b,
                     {degraded(119.2e-6, 13), critical(365.6e-6, 46)}, "crew-a", "treatment");
    unit.standby_group = "treatment";
    m.equipment.push_back(std::move(unit));
  }
  m.equipment.back().role = Role::kPassiveStandby;
  m.equipment.back().demand_failure_prob = 0.05;

  // Topology: 4 ESDV, separator, 3 x (compressor + 2x100% cooling pair) at 50%
  // each, then 2 x 100% treatment.
  for (int i = 1; i <= 4; ++i) m.network.stages.push_back(Stage::single("esdv-" + std::to_string(i)));
  m.network.stages.push_back(Stage::single("separator"));

  ParallelBlock trains;
  trains.required_active_branches = 2;
  for (const char* b : branches) {
    ParallelBlock cooling;
    cooling.required_active_branches = 2;
    cooling.branches.push_back(branch({Stage::single(std::string("cooling-") + b + "1")}, 1.0));
    cooling.branches.push_back(branch({Stage::single(std::string("cooling-") + b + "2")}, 1.0));
    trains.branches.push_back(branch(
        {Stage::single(std::string("compressor-") + b), Stage::parallel(std::move(cooling))}, 0.5));
  }
  m.network.stages.push_back(Stage::parallel(std::move(trains)));

  ParallelBlock treatment;
  treatment.required_active_branches = 1;
  treatment.branches.push_back(branch({Stage::single("treatment-a")}, 1.0));
  treatment.branches.push_back(branch({Stage::single("treatment-b")}, 1.0));
  m.network.stages.push_back(Stage::parallel(std::move(treatment)));

  m.ccf_groups.push_back({"ccf-compressors", {"compressor-a", "compressor-b", "compressor-c"}, 0.05});
  for (const char* b : branches) {
    m.ccf_groups.push_back({std::string("ccf-cooling-") + b,
                            {std::string("cooling-") + b + "1", std::string("cooling-") + b + "2"},
                            0.05});
  }
  m.ccf_groups.push_back({"ccf-treatment", {"treatment-a", "treatment-b"}, 0.05});

  m.crews.push_back({"crew-a", 1, 1.0});
  m.crews.push_back({"crew-b", 1, 24.0});

  for (const char* family : {"separator", "compressor", "cooling", "treatment"}) {
    m.spare_pools.push_back(pool(family));
  }

  auto pm = [&](const std::string& id, double years, double hours) {
    m.pm_tasks.push_back({id, years * kYear, hours, 1.0, true});
  };
  for (int i = 1; i <= 4; ++i) pm("esdv-" + std::to_string(i), 4, 2);
  pm("separator", 4, 4);
  pm("compressor-a", 2, 12);
  pm("compressor-b", 2, 12);
  for (const char* b : branches) {
    pm(std::string("cooling-") + b + "1", 4, 2);
    pm(std::string("cooling-") + b + "2", 4, 2);
  }
  pm("treatment-a", 2, 12);

  m.shutdowns.push_back({4 * kYear, 240.0, 1.0});

  m.subsystems = {
      {"ESDV", {"esdv-1", "esdv-2", "esdv-3", "esdv-4"}},
      {"Compressors", {"compressor-a", "compressor-b", "compressor-c"}},
      {"Compressor A", {"compressor-a"}},
      {"Compressor B", {"compressor-b"}},
      {"Compressor C", {"compressor-c"}},
      {"Cooling units",
       {"cooling-a1", "cooling-a2", "cooling-b1", "cooling-b2", "cooling-c1", "cooling-c2"}},
      {"Treatment units", {"treatment-a", "treatment-b"}},
      {"Treatment unit A", {"treatment-a"}},
      {"Treatment unit B", {"treatment-b"}},
      {"Separator", {"separator"}},
  };
  return m;
}

}  // namespace pasim
