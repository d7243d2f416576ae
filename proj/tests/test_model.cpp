#include <doctest.h>

#include <cmath>
#include <random>

#include "pasim/model.hpp"
#include "support.hpp"

using namespace pasim;

TEST_SUITE("model") {

TEST_CASE("beta split examples") {
  const auto compressor = beta_split(1080.8e-6, 0.05);
  CHECK(compressor.independent_rate == doctest::Approx(1026.76e-6).epsilon(1e-12));
  CHECK(compressor.ccf_rate == doctest::Approx(54.04e-6).epsilon(1e-12));

  const double lambda = 657.6e-6;
  const auto none = beta_split(lambda, 0.0);
  CHECK(none.independent_rate == lambda);
  CHECK(none.ccf_rate == 0.0);

  const auto treatment = beta_split(365.6e-6, 0.05);
  CHECK(treatment.independent_rate == doctest::Approx(347.32e-6).epsilon(1e-12));
  CHECK(treatment.ccf_rate == doctest::Approx(18.28e-6).epsilon(1e-12));
  CHECK(treatment.independent_rate + treatment.ccf_rate == 365.6e-6);
}

TEST_CASE("beta split rejects out-of-range input") {
  CHECK_THROWS_AS(beta_split(1e-3, -0.01), DomainError);
  CHECK_THROWS_AS(beta_split(1e-3, 1.01), DomainError);
  CHECK_THROWS_AS(beta_split(-1e-3, 0.5), DomainError);
  CHECK_THROWS_AS(beta_split(1e-3, std::nan("")), DomainError);
}

TEST_CASE("beta split conserves the rate to one ulp") {
  std::mt19937_64 gen(20240611);
  std::uniform_real_distribution<double> log_rate(-9.0, 0.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 100000; ++i) {
    const double lambda = std::pow(10.0, log_rate(gen));
    const double beta = i % 50 == 0 ? (i % 100 == 0 ? 0.0 : 1.0) : unit(gen);
    const auto split = beta_split(lambda, beta);
    const double sum = split.independent_rate + split.ccf_rate;
    REQUIRE(std::abs(sum - lambda) <= std::nextafter(lambda, INFINITY) - lambda);
    REQUIRE(split.independent_rate >= 0.0);
    REQUIRE(split.ccf_rate >= 0.0);
  }
}

TEST_CASE("reference model is valid") {
  const auto diagnostics = validate(build_reference_model());
  for (const auto& d : diagnostics) INFO(d.rule << " " << d.subject << " " << d.message);
  CHECK(diagnostics.empty());
}

TEST_CASE("reference model matches the equipment and maintenance tables") {
  const Model m = build_reference_model();
  CHECK(m.horizon_hours == 175200.0);
  REQUIRE(m.equipment.size() == 16);

  struct Row {
    const char* id;
    Role role;
    double degraded_rate, degraded_mttr;
    double critical_rate, critical_mttr;
    const char* crew;
    const char* pool;  // "" = no spare
  };
  const Row rows[] = {
      {"esdv-1", Role::kActive, 0, 0, 10.8e-6, 2, "crew-a", ""},
      {"esdv-2", Role::kActive, 0, 0, 10.8e-6, 2, "crew-a", ""},
      {"esdv-3", Role::kActive, 0, 0, 10.8e-6, 2, "crew-a", ""},
      {"esdv-4", Role::kActive, 0, 0, 10.8e-6, 2, "crew-a", ""},
      {"separator", Role::kActive, 409.6e-6, 5, 143.6e-6, 5, "crew-a", "separator"},
      {"compressor-a", Role::kActive, 1084.4e-6, 10, 1080.8e-6, 17, "crew-b", "compressor"},
      {"compressor-b", Role::kActive, 1084.4e-6, 10, 1080.8e-6, 17, "crew-b", "compressor"},
      {"compressor-c", Role::kPassiveStandby, 1084.4e-6, 10, 1080.8e-6, 17, "crew-b", "compressor"},
      {"cooling-a1", Role::kActive, 657.6e-6, 4, 82.4e-6, 4, "crew-a", "cooling"},
      {"cooling-a2", Role::kActive, 657.6e-6, 4, 82.4e-6, 4, "crew-a", "cooling"},
      {"cooling-b1", Role::kActive, 657.6e-6, 4, 82.4e-6, 4, "crew-a", "cooling"},
      {"cooling-b2", Role::kActive, 657.6e-6, 4, 82.4e-6, 4, "crew-a", "cooling"},
      {"cooling-c1", Role::kActive, 657.6e-6, 4, 82.4e-6, 4, "crew-a", "cooling"},
      {"cooling-c2", Role::kActive, 657.6e-6, 4, 82.4e-6, 4, "crew-a", "cooling"},
      {"treatment-a", Role::kActive, 119.2e-6, 13, 365.6e-6, 46, "crew-a", "treatment"},
      {"treatment-b", Role::kPassiveStandby, 119.2e-6, 13, 365.6e-6, 46, "crew-a", "treatment"},
  };
  for (const Row& row : rows) {
    CAPTURE(row.id);
    const EquipmentSpec* e = m.find_equipment(row.id);
    REQUIRE(e != nullptr);
    CHECK(e->role == row.role);
    CHECK(e->crew == row.crew);
    CHECK(e->spare_pool.value_or("") == row.pool);
    if (row.degraded_rate > 0) {
      const auto* d = e->mode(ModeKind::kDegraded);
      REQUIRE(d != nullptr);
      CHECK(d->failure_rate == doctest::Approx(row.degraded_rate).epsilon(1e-12));
      CHECK(1.0 / d->repair_rate == doctest::Approx(row.degraded_mttr).epsilon(1e-12));
      CHECK(d->capacity_loss_before_repair == 0.5);
      CHECK(d->capacity_loss_during_repair == 1.0);
    } else {
      CHECK(e->mode(ModeKind::kDegraded) == nullptr);
    }
    const auto* c = e->mode(ModeKind::kCritical);
    REQUIRE(c != nullptr);
    CHECK(c->failure_rate == doctest::Approx(row.critical_rate).epsilon(1e-12));
    CHECK(1.0 / c->repair_rate == doctest::Approx(row.critical_mttr).epsilon(1e-12));
    if (row.role == Role::kPassiveStandby) CHECK(e->demand_failure_prob.value_or(-1) == 0.05);
  }

  REQUIRE(m.crews.size() == 2);
  CHECK(m.crews[0] == Crew{"crew-a", 1, 1.0});
  CHECK(m.crews[1] == Crew{"crew-b", 1, 24.0});

  REQUIRE(m.spare_pools.size() == 4);
  for (const auto& pool : m.spare_pools) {
    CAPTURE(pool.id);
    CHECK(pool.initial_stock == 1);
    CHECK(pool.restock_to == 1);
    CHECK(pool.reorder_threshold == 0);
    CHECK(pool.lead_time_hours == 72.0);
    CHECK(pool.policy == RestockPolicy::kOnDemand);
  }

  struct PmRow {
    const char* id;
    double years, hours;
  };
  const PmRow pms[] = {
      {"esdv-1", 4, 2},       {"esdv-2", 4, 2},       {"esdv-3", 4, 2},       {"esdv-4", 4, 2},
      {"separator", 4, 4},    {"compressor-a", 2, 12}, {"compressor-b", 2, 12}, {"cooling-a1", 4, 2},
      {"cooling-a2", 4, 2},   {"cooling-b1", 4, 2},   {"cooling-b2", 4, 2},   {"cooling-c1", 4, 2},
      {"cooling-c2", 4, 2},   {"treatment-a", 2, 12},
  };
  REQUIRE(m.pm_tasks.size() == std::size(pms));
  for (const PmRow& row : pms) {
    CAPTURE(row.id);
    const auto it = std::find_if(m.pm_tasks.begin(), m.pm_tasks.end(),
                                 [&](const PmTask& t) { return t.equipment_id == row.id; });
    REQUIRE(it != m.pm_tasks.end());
    CHECK(it->interval_hours == row.years * kHoursPerYear);
    CHECK(it->duration_hours == row.hours);
    CHECK(it->align_with_shutdown);
  }

  REQUIRE(m.shutdowns.size() == 1);
  CHECK(m.shutdowns[0] == ShutdownSchedule{4 * kHoursPerYear, 240.0, 1.0});

  REQUIRE(m.ccf_groups.size() == 5);
  for (const auto& g : m.ccf_groups) CHECK(g.beta == 0.05);
  CHECK(m.subsystems.size() == 10);
}

TEST_CASE("compressor independent critical rate after the split") {
  const Model m = build_reference_model();
  const auto split = beta_split(m.find_equipment("compressor-a")->mode(ModeKind::kCritical)->failure_rate,
                                m.ccf_groups.front().beta);
  CHECK(split.independent_rate == doctest::Approx(1026.76e-6).epsilon(1e-12));
}

TEST_CASE("pm on a passive unit is reported") {
  Model m = build_reference_model();
  m.pm_tasks.push_back({"compressor-c", 2 * kHoursPerYear, 12.0, 1.0, true});
  const auto diagnostics = validate(m);
  REQUIRE(diagnostics.size() == 1);
  CHECK(diagnostics[0].rule == "pm-on-passive");
  CHECK(diagnostics[0].subject == "compressor-c");
}

TEST_CASE("unequal critical rates in a ccf group are reported") {
  Model m = build_reference_model();
  m.find_equipment("compressor-b")->mode(ModeKind::kCritical)->failure_rate = 1000e-6;
  const auto diagnostics = validate(m);
  REQUIRE(diagnostics.size() == 1);
  CHECK(diagnostics[0].rule == "ccf-rate-mismatch");
}

TEST_CASE("structural errors") {
  SUBCASE("unknown network id") {
    Model m = testing::single_item(1e-3, 0.1, 100);
    m.network.stages.push_back(Stage::single("ghost"));
    CHECK(testing::has_rule(validate(m), "unknown-equipment"));
  }
  SUBCASE("item placed twice") {
    Model m = testing::single_item(1e-3, 0.1, 100);
    m.network.stages.push_back(Stage::single("pump"));
    CHECK(testing::has_rule(validate(m), "equipment-multiple-positions"));
  }
  SUBCASE("item missing from the network") {
    Model m = testing::single_item(1e-3, 0.1, 100);
    m.equipment.push_back(m.equipment[0]);
    m.equipment.back().id = "spare-pump";
    CHECK(testing::has_rule(validate(m), "equipment-not-in-network"));
  }
  SUBCASE("unknown crew") {
    Model m = testing::single_item(1e-3, 0.1, 100);
    m.equipment[0].crew = "nobody";
    CHECK(testing::has_rule(validate(m), "unknown-crew"));
  }
  SUBCASE("critical mode must remove all capacity") {
    Model m = testing::single_item(1e-3, 0.1, 100);
    m.equipment[0].modes[0].capacity_loss_before_repair = 0.5;
    CHECK(testing::has_rule(validate(m), "critical-loss-not-total"));
  }
  SUBCASE("non-positive horizon") {
    Model m = testing::single_item(1e-3, 0.1, 0);
    CHECK(testing::has_rule(validate(m), "horizon-nonpositive"));
  }
  SUBCASE("beta outside [0, 1]") {
    Model m = build_reference_model();
    m.ccf_groups[0].beta = 1.5;
    CHECK(testing::has_rule(validate(m), "ccf-beta-range"));
  }
  SUBCASE("passive unit without a group") {
    Model m = build_reference_model();
    m.find_equipment("treatment-b")->standby_group.reset();
    CHECK(testing::has_rule(validate(m), "passive-without-group"));
  }
}

TEST_CASE("zero logistics clears delays only") {
  const Model base = build_reference_model();
  const Model zero = zero_logistics(base);
  for (const auto& c : zero.crews) CHECK(c.mobilization_hours == 0.0);
  for (const auto& p : zero.spare_pools) CHECK(p.lead_time_hours == 0.0);
  Model restored = zero;
  for (std::size_t i = 0; i < restored.crews.size(); ++i) restored.crews[i] = base.crews[i];
  for (std::size_t i = 0; i < restored.spare_pools.size(); ++i) restored.spare_pools[i] = base.spare_pools[i];
  CHECK(restored == base);
}

}  // TEST_SUITE
