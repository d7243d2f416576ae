#include "pasim/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace pasim {

const FailureModeSpec* EquipmentSpec::mode(ModeKind kind) const {
  for (const auto& m : modes) {
    if (m.kind == kind) return &m;
  }
  return nullptr;
}

FailureModeSpec* EquipmentSpec::mode(ModeKind kind) {
  for (auto& m : modes) {
    if (m.kind == kind) return &m;
  }
  return nullptr;
}

const EquipmentSpec* Model::find_equipment(const std::string& id) const {
  auto it = std::find_if(equipment.begin(), equipment.end(),
                         [&](const EquipmentSpec& e) { return e.id == id; });
  return it == equipment.end() ? nullptr : &*it;
}

EquipmentSpec* Model::find_equipment(const std::string& id) {
  auto it = std::find_if(equipment.begin(), equipment.end(),
                         [&](const EquipmentSpec& e) { return e.id == id; });
  return it == equipment.end() ? nullptr : &*it;
}

std::optional<std::size_t> Model::equipment_index(const std::string& id) const {
  for (std::size_t i = 0; i < equipment.size(); ++i) {
    if (equipment[i].id == id) return i;
  }
  return std::nullopt;
}

std::string to_string(ModeKind kind) {
  return kind == ModeKind::kDegraded ? "degraded" : "critical";
}

std::string to_string(Severity severity) {
  return severity == Severity::kError ? "error" : "warning";
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::kError; });
}

BetaSplit beta_split(double critical_rate, double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw DomainError("beta must lie in [0, 1]");
  }
  if (!(critical_rate >= 0.0)) {
    throw DomainError("critical failure rate must be non-negative");
  }
  // The common-cause share is computed first and the independent share as the
  // remainder, so the two parts add back to the input.
  const double ccf = beta * critical_rate;
  return {critical_rate - ccf, ccf};
}

Model zero_logistics(Model model) {
  for (auto& crew : model.crews) crew.mobilization_hours = 0.0;
  for (auto& pool : model.spare_pools) pool.lead_time_hours = 0.0;
  return model;
}

namespace {

bool in_unit_interval(double x) { return x >= 0.0 && x <= 1.0; }

class Checker {
 public:
  explicit Checker(const Model& model) : model_(model) {}

  std::vector<Diagnostic> run() {
    check_horizon();
    check_ids();
    check_network();
    check_equipment();
    check_standby_groups();
    check_ccf_groups();
    check_crews();
    check_pools();
    check_pm();
    check_shutdowns();
    check_subsystems();
    return std::move(out_);
  }

 private:
  void error(std::string rule, std::string subject, std::string message) {
    out_.push_back({Severity::kError, std::move(rule), std::move(subject), std::move(message)});
  }
  void warning(std::string rule, std::string subject, std::string message) {
    out_.push_back({Severity::kWarning, std::move(rule), std::move(subject), std::move(message)});
  }

  void check_horizon() {
    if (!(model_.horizon_hours > 0.0) || !std::isfinite(model_.horizon_hours)) {
      error("horizon-nonpositive", "horizon_hours", "horizon must be a positive number of hours");
    }
  }

  template <typename Range, typename Key>
  void unique_ids(const Range& items, Key key, const char* what) {
    std::set<std::string> seen;
    for (const auto& item : items) {
      const std::string& id = key(item);
      if (id.empty()) error("empty-id", what, std::string(what) + " with empty identifier");
      if (!seen.insert(id).second) {
        error("duplicate-id", id, std::string(what) + " '" + id + "' declared more than once");
      }
    }
  }

  void check_ids() {
    unique_ids(model_.equipment, [](const EquipmentSpec& e) -> const std::string& { return e.id; },
               "equipment");
    unique_ids(model_.ccf_groups, [](const CcfGroup& g) -> const std::string& { return g.id; },
               "ccf group");
    unique_ids(model_.crews, [](const Crew& c) -> const std::string& { return c.id; }, "crew");
    unique_ids(model_.spare_pools, [](const SparePool& p) -> const std::string& { return p.id; },
               "spare pool");
    unique_ids(model_.subsystems, [](const Subsystem& s) -> const std::string& { return s.name; },
               "subsystem");
  }

  void walk(const std::vector<Stage>& stages, const std::string& where) {
    for (const auto& stage : stages) {
      if (stage.is_single()) {
        const auto& id = stage.equipment_id();
        ++positions_[id];
        if (!model_.find_equipment(id)) {
          error("unknown-equipment", id, "network references undeclared equipment '" + id + "'");
        }
        continue;
      }
      const auto& block = stage.block();
      if (block.branches.empty()) {
        error("empty-parallel", where, "parallel stage without branches");
        continue;
      }
      const int n = static_cast<int>(block.branches.size());
      if (block.required_active_branches < 1 || block.required_active_branches > n) {
        error("required-branches-range", where,
              "required_active_branches must lie in [1, number of branches]");
      }
      double nominal = 0.0;
      int nominal_branches = 0;
      for (std::size_t b = 0; b < block.branches.size(); ++b) {
        const auto& branch = block.branches[b];
        const std::string label = where + "/branch[" + std::to_string(b) + "]";
        if (branch.stages.empty()) error("empty-branch", label, "branch has no stages");
        if (!(branch.capacity > 0.0 && branch.capacity <= 1.0)) {
          error("branch-capacity-range", label, "branch capacity must lie in (0, 1]");
        }
        walk(branch.stages, label);
        if (!contains_passive(branch.stages)) {
          nominal += branch.capacity;
          ++nominal_branches;
        }
      }
      if (nominal < 1.0 - 1e-12) {
        warning("parallel-undercapacity", where,
                "active branches cannot carry 100% of the reference flow");
      }
      if (nominal_branches != block.required_active_branches) {
        warning("required-branches-mismatch", where,
                "required_active_branches differs from the number of branches without standby units");
      }
    }
  }

  bool contains_passive(const std::vector<Stage>& stages) const {
    for (const auto& stage : stages) {
      if (stage.is_single()) {
        const auto* e = model_.find_equipment(stage.equipment_id());
        if (e && e->role == Role::kPassiveStandby) return true;
      } else {
        for (const auto& branch : stage.block().branches) {
          if (contains_passive(branch.stages)) return true;
        }
      }
    }
    return false;
  }

  void check_network() {
    if (model_.network.stages.empty()) {
      error("empty-network", "network", "network has no stages");
    }
    walk(model_.network.stages, "network");
    for (const auto& e : model_.equipment) {
      auto it = positions_.find(e.id);
      if (it == positions_.end()) {
        error("equipment-not-in-network", e.id, "equipment '" + e.id + "' has no network position");
      } else if (it->second > 1) {
        error("equipment-multiple-positions", e.id,
              "equipment '" + e.id + "' appears more than once in the network");
      }
    }
  }

  void check_mode(const EquipmentSpec& e, const FailureModeSpec& m) {
    const std::string subject = e.id + ":" + to_string(m.kind);
    if (!(m.failure_rate >= 0.0) || !std::isfinite(m.failure_rate)) {
      error("failure-rate-negative", subject, "failure rate must be a finite non-negative number");
    }
    if (!(m.repair_rate > 0.0) || !std::isfinite(m.repair_rate)) {
      error("repair-rate-nonpositive", subject, "repair rate must be positive");
    }
    if (!in_unit_interval(m.capacity_loss_before_repair) ||
        !in_unit_interval(m.capacity_loss_during_repair)) {
      error("capacity-loss-range", subject, "capacity losses must lie in [0, 1]");
    }
    if (m.kind == ModeKind::kCritical &&
        (m.capacity_loss_before_repair != 1.0 || m.capacity_loss_during_repair != 1.0)) {
      error("critical-loss-not-total", subject, "critical modes lose 100% of capacity");
    }
  }

  void check_equipment() {
    for (const auto& e : model_.equipment) {
      int degraded = 0;
      int critical = 0;
      for (const auto& m : e.modes) {
        (m.kind == ModeKind::kDegraded ? degraded : critical)++;
        check_mode(e, m);
      }
      if (degraded > 1 || critical > 1) {
        error("mode-duplicate-kind", e.id, "at most one degraded and one critical mode");
      }
      const bool passive = e.role == Role::kPassiveStandby;
      if (passive != e.demand_failure_prob.has_value()) {
        error("demand-prob-role", e.id,
              "demand_failure_prob must be given for passive-standby equipment only");
      }
      if (e.demand_failure_prob && !in_unit_interval(*e.demand_failure_prob)) {
        error("demand-prob-range", e.id, "demand failure probability must lie in [0, 1]");
      }
      if (passive && !e.standby_group) {
        error("passive-without-group", e.id, "passive-standby equipment needs a standby_group");
      }
      if (!std::any_of(model_.crews.begin(), model_.crews.end(),
                       [&](const Crew& c) { return c.id == e.crew; })) {
        error("unknown-crew", e.id, "crew '" + e.crew + "' is not declared");
      }
      if (e.spare_pool &&
          !std::any_of(model_.spare_pools.begin(), model_.spare_pools.end(),
                       [&](const SparePool& p) { return p.id == *e.spare_pool; })) {
        error("unknown-spare-pool", e.id, "spare pool '" + *e.spare_pool + "' is not declared");
      }
    }
  }

  void check_standby_groups() {
    std::map<std::string, std::pair<int, int>> groups;  // active, passive
    for (const auto& e : model_.equipment) {
      if (!e.standby_group) continue;
      auto& counts = groups[*e.standby_group];
      (e.role == Role::kActive ? counts.first : counts.second)++;
    }
    for (const auto& [id, counts] : groups) {
      if (counts.first == 0) {
        error("standby-group-no-active", id, "standby group has no active member");
      }
    }
  }

  void check_ccf_groups() {
    std::map<std::string, int> memberships;
    for (const auto& g : model_.ccf_groups) {
      for (const auto& id : std::set<std::string>(g.member_ids.begin(), g.member_ids.end())) {
        if (++memberships[id] == 2) {
          error("ccf-multiple-groups", id, "equipment belongs to more than one common-cause group");
        }
      }
    }
    for (const auto& g : model_.ccf_groups) {
      if (!(g.beta > 0.0 && g.beta < 1.0)) {
        error("ccf-beta-range", g.id, "beta must lie in (0, 1)");
      }
      if (g.member_ids.size() < 2) {
        error("ccf-members", g.id, "a common-cause group needs at least two members");
      }
      std::set<std::string> seen;
      std::optional<double> rate;
      bool mismatch = false;
      for (const auto& id : g.member_ids) {
        if (!seen.insert(id).second) {
          error("ccf-duplicate-member", g.id, "member '" + id + "' listed twice");
        }
        const auto* e = model_.find_equipment(id);
        if (!e) {
          error("ccf-unknown-member", g.id, "member '" + id + "' is not declared");
          continue;
        }
        const auto* crit = e->mode(ModeKind::kCritical);
        if (!crit) {
          error("ccf-member-no-critical", g.id, "member '" + id + "' has no critical mode");
          continue;
        }
        if (rate && *rate != crit->failure_rate) mismatch = true;
        rate = crit->failure_rate;
      }
      if (mismatch) {
        error("ccf-rate-mismatch", g.id, "members must share one critical failure rate");
      }
    }
  }

  void check_crews() {
    for (const auto& c : model_.crews) {
      if (c.size < 1) error("crew-size", c.id, "crew size must be at least 1");
      if (!(c.mobilization_hours >= 0.0) || !std::isfinite(c.mobilization_hours)) {
        error("crew-mobilization", c.id, "mobilization time must be non-negative");
      }
    }
  }

  void check_pools() {
    for (const auto& p : model_.spare_pools) {
      if (p.initial_stock < 0) error("spare-initial", p.id, "initial stock must be non-negative");
      if (p.restock_to < 1) error("spare-restock", p.id, "restock level must be at least 1");
      if (p.reorder_threshold >= p.restock_to) {
        error("spare-threshold", p.id, "reorder threshold must be below the restock level");
      }
      if (!(p.lead_time_hours >= 0.0) || !std::isfinite(p.lead_time_hours)) {
        error("spare-lead", p.id, "lead time must be non-negative");
      }
      if (p.policy == RestockPolicy::kPeriodic && !(p.interval_hours > 0.0)) {
        error("spare-interval", p.id, "periodic restocking needs a positive interval");
      }
    }
  }

  void check_pm() {
    for (const auto& t : model_.pm_tasks) {
      const auto* e = model_.find_equipment(t.equipment_id);
      if (!e) {
        error("pm-unknown-equipment", t.equipment_id, "PM task on undeclared equipment");
      } else if (e->role == Role::kPassiveStandby) {
        error("pm-on-passive", t.equipment_id, "PM tasks apply to active equipment only");
      }
      if (!(t.interval_hours > 0.0)) error("pm-interval", t.equipment_id, "PM interval must be positive");
      if (!(t.duration_hours > 0.0)) error("pm-duration", t.equipment_id, "PM duration must be positive");
      if (!in_unit_interval(t.capacity_loss)) {
        error("pm-capacity-loss", t.equipment_id, "PM capacity loss must lie in [0, 1]");
      }
    }
  }

  void check_shutdowns() {
    for (std::size_t i = 0; i < model_.shutdowns.size(); ++i) {
      const auto& s = model_.shutdowns[i];
      const std::string subject = "shutdowns[" + std::to_string(i) + "]";
      if (!(s.duration_hours > 0.0) || !(s.interval_hours > s.duration_hours)) {
        error("shutdown-timing", subject, "shutdown needs interval > duration > 0");
      }
      if (!in_unit_interval(s.capacity_loss)) {
        error("shutdown-capacity-loss", subject, "shutdown capacity loss must lie in [0, 1]");
      }
    }
  }

  void check_subsystems() {
    for (const auto& s : model_.subsystems) {
      if (s.member_ids.empty()) error("subsystem-empty", s.name, "subsystem has no members");
      for (const auto& id : s.member_ids) {
        if (!model_.find_equipment(id)) {
          error("subsystem-unknown-member", s.name, "member '" + id + "' is not declared");
        }
      }
    }
  }

  const Model& model_;
  std::map<std::string, int> positions_;
  std::vector<Diagnostic> out_;
};

}  // namespace

std::vector<Diagnostic> validate(const Model& model) { return Checker(model).run(); }

}  // namespace pasim
