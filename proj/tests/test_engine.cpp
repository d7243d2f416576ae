#include <doctest.h>

#include <cmath>

#include "oracles/pm_calendar.hpp"
#include "pasim/engine.hpp"
#include "pasim/stats.hpp"
#include "audit.hpp"
#include "support.hpp"

using namespace pasim;

namespace {

double pa(const RunResult& r) { return r.produced_volume / r.planned_volume; }

}  // namespace

TEST_SUITE("engine") {

TEST_CASE("exponential sampling") {
  CHECK(sample_exponential(1.0, 0.5) == doctest::Approx(0.693147).epsilon(1e-6));
  for (double u : {1e-9, 0.1, 0.5, 0.9, 1 - 1e-9}) {
    CHECK(sample_exponential(2.0, u) == doctest::Approx(0.5 * sample_exponential(1.0, u)));
  }
  CHECK(sample_exponential(0.0, 0.5) == kNever);
  CHECK(sample_exponential(-1.0, 0.5) == kNever);
}

TEST_CASE("exponential sample mean") {
  const double rate = 1084.4e-6;
  RandomStream stream(run_seed(1, 0), "compressor-a", 1);
  double sum = 0.0;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) sum += sample_exponential(rate, stream.uniform());
  CHECK(std::abs(sum / n - 1.0 / rate) < 0.01 / rate);
}

TEST_CASE("substreams") {
  RandomStream a(123, "pump", 1), b(123, "pump", 1), c(123, "pump", 2), d(123, "valve", 1);
  bool differs_by_purpose = false, differs_by_name = false;
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform();
    REQUIRE(x == b.uniform());
    REQUIRE(x > 0.0);
    REQUIRE(x < 1.0);
    differs_by_purpose |= x != c.uniform();
    differs_by_name |= x != d.uniform();
  }
  CHECK(differs_by_purpose);
  CHECK(differs_by_name);
  CHECK(run_seed(1, 0) != run_seed(1, 1));
  CHECK(run_seed(1, 0) != run_seed(2, 0));
}

TEST_CASE("nothing fails and nothing is planned") {
  Model m = testing::without_failures(build_reference_model());
  m.pm_tasks.clear();
  m.shutdowns.clear();
  const RunResult r = run_simulation(m, 17, 24.0);
  CHECK(r.produced_volume == r.planned_volume);
  CHECK(r.planned_volume == m.horizon_hours);
}

TEST_CASE("zero failure rates match the PM and shutdown calendar") {
  const Model m = testing::without_failures(build_reference_model());
  const double expected = oracle::zero_failure_pa(m);
  // Frozen hand value: four 240 h shutdowns plus five off-year campaigns of
  // 12 h at zero flow and 12 h at half flow.
  CHECK(expected == doctest::Approx(1.0 - 1050.0 / 175200.0).epsilon(1e-15));
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const RunResult r = run_simulation(m, seed, 24.0);
    CHECK(std::abs(pa(r) - expected) <= 1e-9);
  }
}

TEST_CASE("single item converges to the steady-state availability") {
  const double lambda = 0.01, mu = 0.1;
  const Simulator sim(testing::single_item(lambda, mu, 100000.0));
  const auto stats = aggregate(run_batch(sim, {40, 3, 1000.0, 1}));
  CHECK(std::abs(stats.mean_pa - mu / (lambda + mu)) < 0.004);
}

TEST_CASE("deterministic logistics timelines") {
  Model m = testing::single_item(0.01, 0.1, 1000.0);  // fails 100 h after each restart, 10 h repairs
  m.equipment[0].modes[0].failure_law = Law::kDeterministic;
  m.equipment[0].modes[0].repair_law = Law::kDeterministic;

  SUBCASE("crew mobilization once per call") {
    m.crews[0].mobilization_hours = 5.0;
    // failures at 100, 215, ..., 905; each costs 5 h travel + 10 h repair
    CHECK(pa(run_simulation(m, 1, 24.0)) == doctest::Approx(880.0 / 1000.0).epsilon(1e-12));
  }
  SUBCASE("spare lead time") {
    m.spare_pools.push_back({"pumps", 1, 1, 0, 150.0, RestockPolicy::kOnDemand, 0.0});
    m.equipment[0].spare_pool = "pumps";
    // outages [100,110] [210,260] [360,410] [510,560] [660,710] [810,860] [960,1000]
    CHECK(pa(run_simulation(m, 1, 24.0)) == doctest::Approx(700.0 / 1000.0).epsilon(1e-12));
  }
  SUBCASE("preventive maintenance") {
    m.equipment[0].modes[0].failure_rate = 0.0;
    m.pm_tasks.push_back({"pump", 100.0, 10.0, 0.5, false});
    // nine tasks at 100..900, each 10 h at half flow
    const RunResult r = run_simulation(m, 1, 24.0);
    CHECK(pa(r) == doctest::Approx(955.0 / 1000.0).epsilon(1e-12));
    CHECK(r.equipment[0].pm_completed == 9);
  }
}

TEST_CASE("runs are reproducible") {
  const Simulator sim(build_reference_model());
  const RunResult a = sim.run(run_seed(11, 4), 24.0, nullptr, 4);
  const RunResult b = sim.run(run_seed(11, 4), 24.0, nullptr, 4);
  CHECK(a == b);
  const RunResult c = sim.run(run_seed(11, 5), 24.0, nullptr, 5);
  CHECK(a.produced_volume != c.produced_volume);
}

TEST_CASE("invalid model is refused") {
  Model m = build_reference_model();
  m.horizon_hours = -1.0;
  CHECK_THROWS_AS(Simulator{m}, ContractError);
}

TEST_CASE("run-long audit of the reference model") {
  const Model m = build_reference_model();
  for (const auto trigger : {StandbyTrigger::kOnAnyLoss, StandbyTrigger::kOnOutage}) {
    const Simulator sim(m, EngineOptions{trigger, true, false});
    for (std::uint64_t i = 0; i < 12; ++i) {
      CAPTURE(i);
      testing::Auditor audit(m);
      const RunResult r = sim.run(run_seed(2024, i), 24.0, &audit, i);
      audit.finish(m.horizon_hours);
      CHECK(audit.events > 100);
      CHECK(audit.crew_violations == 0);
      CHECK(audit.stock_violations == 0);
      CHECK(audit.spare_violations == 0);
      CHECK(audit.failures_in_shutdown == 0);
      CHECK(audit.throughput_mismatches == 0);
      CHECK(audit.repair_starts > 0);
      CHECK(std::abs(audit.integral - r.produced_volume) <= 1e-9 * r.produced_volume);

      double buckets = 0.0;
      for (double v : r.bucket_integrals) buckets += v;
      CHECK(r.produced_volume == buckets);
      CHECK(r.produced_volume >= 0.0);
      CHECK(r.produced_volume <= r.planned_volume);

      for (std::size_t e = 0; e < r.equipment.size(); ++e) {
        const auto& c = r.equipment[e];
        // Each repair closes one failure; a degraded item that fails critically
        // before its repair starts keeps a single job.
        CHECK(c.repairs <= c.degraded_failures + c.critical_failures + c.ccf_failures + c.demand_failures);
        CHECK(c.repair_wait_hours <= c.downtime_hours + 1e-9);
      }
    }
  }
}

TEST_CASE("common-cause hazard plus independent hazard equals the critical rate") {
  const Model m = build_reference_model();
  for (const auto& g : m.ccf_groups) {
    for (const auto& id : g.member_ids) {
      const double lambda = m.find_equipment(id)->mode(ModeKind::kCritical)->failure_rate;
      const auto split = beta_split(lambda, g.beta);
      CHECK(split.independent_rate + split.ccf_rate == doctest::Approx(lambda).epsilon(1e-15));
    }
  }
}

}  // TEST_SUITE
