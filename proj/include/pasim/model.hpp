#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace pasim {

/// Raised when a caller breaks a documented precondition (unvalidated model,
/// missing snapshot entry, unknown identifier).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised for numeric arguments outside their mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline constexpr double kHoursPerYear = 8760.0;

enum class ModeKind { kDegraded, kCritical };
enum class Role { kActive, kPassiveStandby };

/// Duration law attached to a rate. Exponential draws -ln(u)/rate; deterministic
/// always returns 1/rate.
enum class Law { kExponential, kDeterministic };

struct FailureModeSpec {
  ModeKind kind = ModeKind::kCritical;
  double failure_rate = 0.0;  // per hour
  double repair_rate = 1.0;   // per hour; MTTR = 1 / repair_rate
  double capacity_loss_before_repair = 1.0;
  double capacity_loss_during_repair = 1.0;
  Law failure_law = Law::kExponential;
  Law repair_law = Law::kExponential;

  bool operator==(const FailureModeSpec&) const = default;
};

struct EquipmentSpec {
  std::string id;
  Role role = Role::kActive;
  std::optional<std::string> standby_group;
  std::optional<double> demand_failure_prob;
  std::vector<FailureModeSpec> modes;
  std::string crew;
  std::optional<std::string> spare_pool;
  /// Capacity pinned to zero for the whole run: no failures, no maintenance.
  bool out_of_service = false;

  const FailureModeSpec* mode(ModeKind kind) const;
  FailureModeSpec* mode(ModeKind kind);

  bool operator==(const EquipmentSpec&) const = default;
};

struct Stage;

/// Ordered series of sub-stages carrying a fraction of the system nominal flow.
struct Branch {
  std::vector<Stage> stages;
  double capacity = 1.0;

  bool operator==(const Branch&) const;
};

struct ParallelBlock {
  std::vector<Branch> branches;
  int required_active_branches = 1;

  bool operator==(const ParallelBlock&) const = default;
};

struct Stage {
  std::variant<std::string, ParallelBlock> node;

  static Stage single(std::string equipment_id) { return Stage{std::move(equipment_id)}; }
  static Stage parallel(ParallelBlock block) { return Stage{std::move(block)}; }

  bool is_single() const { return std::holds_alternative<std::string>(node); }
  const std::string& equipment_id() const { return std::get<std::string>(node); }
  const ParallelBlock& block() const { return std::get<ParallelBlock>(node); }

  bool operator==(const Stage&) const = default;
};

inline bool Branch::operator==(const Branch& other) const {
  return capacity == other.capacity && stages == other.stages;
}

struct Network {
  std::vector<Stage> stages;

  bool operator==(const Network&) const = default;
};

struct CcfGroup {
  std::string id;
  std::vector<std::string> member_ids;
  double beta = 0.0;

  bool operator==(const CcfGroup&) const = default;
};

struct Crew {
  std::string id;
  int size = 1;
  double mobilization_hours = 0.0;

  bool operator==(const Crew&) const = default;
};

enum class RestockPolicy { kOnDemand, kPeriodic };

struct SparePool {
  std::string id;
  int initial_stock = 1;
  int restock_to = 1;
  int reorder_threshold = 0;
  double lead_time_hours = 0.0;
  RestockPolicy policy = RestockPolicy::kOnDemand;
  double interval_hours = 0.0;  // periodic policy only

  bool operator==(const SparePool&) const = default;
};

struct PmTask {
  std::string equipment_id;
  double interval_hours = 0.0;
  double duration_hours = 0.0;
  double capacity_loss = 1.0;
  bool align_with_shutdown = false;

  bool operator==(const PmTask&) const = default;
};

struct ShutdownSchedule {
  double interval_hours = 0.0;
  double duration_hours = 0.0;
  double capacity_loss = 1.0;

  bool operator==(const ShutdownSchedule&) const = default;
};

/// Named set of equipment used by indicator studies.
struct Subsystem {
  std::string name;
  std::vector<std::string> member_ids;

  bool operator==(const Subsystem&) const = default;
};

struct Model {
  double horizon_hours = 0.0;
  Network network;
  std::vector<EquipmentSpec> equipment;
  std::vector<CcfGroup> ccf_groups;
  std::vector<Crew> crews;
  std::vector<SparePool> spare_pools;
  std::vector<PmTask> pm_tasks;
  std::vector<ShutdownSchedule> shutdowns;
  std::vector<Subsystem> subsystems;

  const EquipmentSpec* find_equipment(const std::string& id) const;
  EquipmentSpec* find_equipment(const std::string& id);
  std::optional<std::size_t> equipment_index(const std::string& id) const;

  bool operator==(const Model&) const = default;
};

enum class Severity { kError, kWarning };

struct Diagnostic {
  Severity severity = Severity::kError;
  std::string rule;     // stable kebab-case rule name, e.g. "pm-on-passive"
  std::string subject;  // offending identifier
  std::string message;
};

/// Checks every model invariant. An empty result means the model is valid;
/// warnings do not prevent simulation.
std::vector<Diagnostic> validate(const Model& model);

bool has_errors(const std::vector<Diagnostic>& diagnostics);

struct BetaSplit {
  double independent_rate;
  double ccf_rate;
};

/// Splits a critical failure rate into its independent and common-cause parts.
/// Throws DomainError when beta is outside [0, 1] or the rate is negative.
BetaSplit beta_split(double critical_rate, double beta);

/// The gas separation/compression/treatment case study: 16 equipment items,
/// two crews, four spare pools, PM per equipment family, a 240 h shutdown
/// every four years and a 20-year horizon.
Model build_reference_model();

/// Copy of `model` with every crew mobilization and spare lead time set to 0.
Model zero_logistics(Model model);

std::string to_string(ModeKind kind);
std::string to_string(Severity severity);

}  // namespace pasim
