#include <doctest.h>

#include <random>

#include "oracles/max_flow.hpp"
#include "random_networks.hpp"
#include "pasim/flow.hpp"

using namespace pasim;

namespace {

CapacitySnapshot nominal(const Model& m) {
  CapacitySnapshot s;
  for (const auto& e : m.equipment) s.set(e.id, e.role == Role::kActive ? 1.0 : 0.0);
  return s;
}

}  // namespace

TEST_SUITE("flow") {

TEST_CASE("effective capacity per state") {
  const Model m = build_reference_model();
  const EquipmentSpec& compressor = *m.find_equipment("compressor-a");
  EquipmentState s;
  CHECK(effective_capacity(compressor, s) == 1.0);
  s.phase = Phase::kDegradedWaiting;
  CHECK(effective_capacity(compressor, s) == 0.5);
  s.phase = Phase::kUnderRepair;
  s.repair_mode = ModeKind::kDegraded;
  CHECK(effective_capacity(compressor, s) == 0.0);
  s.phase = Phase::kCriticalWaiting;
  CHECK(effective_capacity(compressor, s) == 0.0);
  s.phase = Phase::kStandby;
  CHECK(effective_capacity(compressor, s) == 0.0);
  s.phase = Phase::kOutOfService;
  CHECK(effective_capacity(compressor, s) == 0.0);
  s.phase = Phase::kInPm;
  s.engaged = true;
  s.pm_capacity_loss = 0.25;
  CHECK(effective_capacity(compressor, s) == 0.75);
  s.engaged = false;
  CHECK(effective_capacity(compressor, s) == 0.0);
}

TEST_CASE("reference network examples") {
  const Model m = build_reference_model();
  SUBCASE("nominal") { CHECK(compute_throughput(m.network, nominal(m)) == 1.0); }
  SUBCASE("degraded separator") {
    auto s = nominal(m);
    s.set("separator", 0.5);
    CHECK(compute_throughput(m.network, s) == 0.5);
  }
  SUBCASE("two compressor branches down") {
    auto s = nominal(m);
    s.set("compressor-a", 0.0);  // critical failure
    s.set("compressor-c", 0.0);  // standby failed on demand
    CHECK(compute_throughput(m.network, s) == 0.5);
  }
  SUBCASE("standby switched in") {
    auto s = nominal(m);
    s.set("compressor-a", 0.0);
    s.set("compressor-c", 1.0);
    CHECK(compute_throughput(m.network, s) == 1.0);
  }
  SUBCASE("one cooler of a pair") {
    auto s = nominal(m);
    s.set("cooling-b2", 0.0);
    CHECK(compute_throughput(m.network, s) == 1.0);
  }
}

TEST_CASE("missing snapshot entry is a contract error") {
  const Model m = build_reference_model();
  auto s = nominal(m);
  CapacitySnapshot partial{{"esdv-1", 1.0}};
  CHECK_THROWS_AS(compute_throughput(m.network, partial), ContractError);
  CHECK_THROWS_AS(s.at("ghost"), ContractError);
}

TEST_CASE("both solvers agree with max flow on random networks") {
  testing::NetworkGenerator generator(42);
  for (int i = 0; i < 200; ++i) {
    CAPTURE(i);
    const auto sample = generator.next();
    const double expected = oracle::max_flow_throughput(sample.model.network, sample.snapshot);
    const double recursive = compute_throughput(sample.model.network, sample.snapshot);
    const FlowEvaluator compiled(sample.model.network, sample.model.equipment);
    const auto caps = generator.capacities(sample.model, sample.snapshot);
    REQUIRE(std::abs(recursive - expected) <= 1e-12);
    REQUIRE(std::abs(compiled(caps) - expected) <= 1e-12);
  }
}

TEST_CASE("throughput properties on random networks") {
  testing::NetworkGenerator generator(99);
  std::mt19937_64 gen(5);
  for (int i = 0; i < 200; ++i) {
    CAPTURE(i);
    auto sample = generator.next();
    const Network& net = sample.model.network;
    const double base = compute_throughput(net, sample.snapshot);
    REQUIRE(base >= 0.0);
    REQUIRE(base <= 1.0);

    // Raising one item never lowers the result.
    const auto& items = sample.model.equipment;
    const std::string& id = items[gen() % items.size()].id;
    auto raised = sample.snapshot;
    raised.set(id, std::min(1.0, sample.snapshot.at(id) + 0.3));
    REQUIRE(compute_throughput(net, raised) >= base);

    // A zero in a top-level single stage stops the plant.
    for (const auto& stage : net.stages) {
      if (!stage.is_single()) continue;
      auto zeroed = sample.snapshot;
      zeroed.set(stage.equipment_id(), 0.0);
      REQUIRE(compute_throughput(net, zeroed) == 0.0);
    }
  }
}

}  // TEST_SUITE
