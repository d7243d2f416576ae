#include "pasim/engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <optional>
#include <queue>
#include <set>
#include <sstream>

namespace pasim {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Substream purposes.
constexpr std::uint64_t kDegradedClockStream = 1;
constexpr std::uint64_t kCriticalClockStream = 2;
constexpr std::uint64_t kRepairStream = 3;
constexpr std::uint64_t kDemandStream = 4;
constexpr std::uint64_t kCcfStream = 5;

struct CompiledMode {
  bool present = false;
  double failure_rate = 0.0;  // independent share after beta split
  double repair_rate = 1.0;
  Law failure_law = Law::kExponential;
  Law repair_law = Law::kExponential;
};

struct CompiledEquipment {
  std::string id;
  const EquipmentSpec* spec = nullptr;
  CompiledMode degraded;
  CompiledMode critical;
  double demand_failure_prob = 0.0;
  std::size_t crew = kNone;
  std::size_t pool = kNone;
  std::size_t standby_group = kNone;
  bool passive = false;
  bool out_of_service = false;
};

struct CompiledCcf {
  std::string id;
  std::vector<std::size_t> members;
  double rate = 0.0;
};

struct StandbyGroup {
  std::vector<std::size_t> members;
  int required = 0;
};

struct ShutdownWindow {
  double start;
  double end;
  double loss;
};

}  // namespace

struct Simulator::Compiled {
  Model model;
  EngineOptions options;
  std::vector<CompiledEquipment> equipment;
  std::vector<CompiledCcf> ccf;
  std::vector<StandbyGroup> groups;
  std::vector<ShutdownWindow> shutdowns;  // sorted by start
  std::vector<std::size_t> pm_equipment;  // per PM task
  std::optional<FlowEvaluator> flow;
};

namespace {

enum class CrewStatus { kOffSite, kMobilizing, kOnSite };

struct Clock {
  bool armed = false;
  bool running = false;
  double remaining = 0.0;
  double fire_at = kNever;
  std::uint32_t generation = 0;
};

struct Job {
  std::size_t equipment = 0;
  bool preventive = false;
  ModeKind mode = ModeKind::kCritical;
  std::size_t pm_task = kNone;
  bool started = false;
};

struct CrewState {
  CrewStatus status = CrewStatus::kOffSite;
  int busy = 0;
  std::deque<std::size_t> waiting;  // job ids, FIFO
};

struct PoolState {
  int stock = 0;
  bool order_outstanding = false;
};

struct Event {
  double time;
  std::uint64_t sequence;
  EventKind kind;
  std::size_t target;
  std::size_t detail;
  std::uint32_t generation;
};

struct EventLater {
  bool operator()(const Event& a, const Event& b) const {
    if (a.time != b.time) return a.time > b.time;
    return a.sequence > b.sequence;
  }
};

class Run {
 public:
  Run(const Simulator::Compiled& c, std::uint64_t seed, double bucket_hours, RunObserver* observer,
      std::uint64_t run_index)
      : c_(c), observer_(observer), bucket_(bucket_hours) {
    const std::size_t n = c_.equipment.size();
    state_.resize(n);
    clocks_.resize(n);
    pending_job_.assign(n, kNone);
    failed_at_.assign(n, 0.0);
    capacities_.assign(n, 0.0);
    result_.run_index = run_index;
    result_.seed = seed;
    result_.horizon_hours = c_.model.horizon_hours;
    result_.bucket_hours = bucket_hours;
    result_.planned_volume = c_.model.horizon_hours;
    result_.bucket_integrals.assign(
        static_cast<std::size_t>(std::ceil(c_.model.horizon_hours / bucket_hours)), 0.0);
    result_.equipment.resize(n);

    for (std::size_t i = 0; i < n; ++i) {
      const auto& e = c_.equipment[i];
      degraded_rng_.emplace_back(seed, e.id, kDegradedClockStream);
      critical_rng_.emplace_back(seed, e.id, kCriticalClockStream);
      repair_rng_.emplace_back(seed, e.id, kRepairStream);
      demand_rng_.emplace_back(seed, e.id, kDemandStream);
    }
    for (const auto& g : c_.ccf) ccf_rng_.emplace_back(seed, g.id, kCcfStream);
    ccf_clocks_.resize(c_.ccf.size());

    crews_.resize(c_.model.crews.size());
    crew_busy_.assign(crews_.size(), 0);
    crew_size_.resize(crews_.size());
    for (std::size_t k = 0; k < crews_.size(); ++k) crew_size_[k] = c_.model.crews[k].size;
    pools_.resize(c_.model.spare_pools.size());
    stock_.assign(pools_.size(), 0);
  }

  RunResult execute() {
    initialise();
    throughput_ = compute_throughput_now();
    const double horizon = c_.model.horizon_hours;
    while (!queue_.empty()) {
      const Event ev = queue_.top();
      if (ev.time >= horizon) break;
      queue_.pop();
      if (is_stale(ev)) continue;
      advance(ev.time);
      process(ev);
      dispatch_all();
      throughput_ = compute_throughput_now();
      notify(ev.kind);
    }
    advance(horizon);
    double total = 0.0;
    for (double v : result_.bucket_integrals) total += v;
    result_.produced_volume = total;
    return std::move(result_);
  }

 private:
  // ---- scheduling -------------------------------------------------------

  void schedule(double time, EventKind kind, std::size_t target, std::size_t detail = 0,
                std::uint32_t generation = 0) {
    queue_.push(Event{time, next_sequence_++, kind, target, detail, generation});
  }

  bool is_stale(const Event& ev) const {
    if (ev.kind == EventKind::kFailure) {
      const Clock& clock = clocks_[ev.target][ev.detail];
      return !clock.running || clock.generation != ev.generation;
    }
    if (ev.kind == EventKind::kCcfFailure) {
      const Clock& clock = ccf_clocks_[ev.target];
      return !clock.running || clock.generation != ev.generation;
    }
    return false;
  }

  void initialise() {
    for (std::size_t w = 0; w < c_.shutdowns.size(); ++w) {
      schedule(c_.shutdowns[w].start, EventKind::kShutdownStart, w);
      schedule(c_.shutdowns[w].end, EventKind::kShutdownEnd, w);
    }
    for (std::size_t t = 0; t < c_.model.pm_tasks.size(); ++t) {
      schedule(c_.model.pm_tasks[t].interval_hours, EventKind::kPmDue, t, 1);
    }
    for (std::size_t p = 0; p < pools_.size(); ++p) {
      const auto& spec = c_.model.spare_pools[p];
      pools_[p].stock = spec.initial_stock;
      if (spec.policy == RestockPolicy::kPeriodic) {
        schedule(spec.interval_hours, EventKind::kPeriodicRestock, p, 1);
      } else {
        maybe_reorder(p);
      }
    }

    for (std::size_t i = 0; i < state_.size(); ++i) {
      const auto& e = c_.equipment[i];
      auto& s = state_[i];
      if (e.out_of_service) {
        s.phase = Phase::kOutOfService;
        s.engaged = false;
      } else if (e.passive) {
        s.phase = Phase::kStandby;
        s.engaged = false;
      } else {
        s.phase = Phase::kOperating;
        s.engaged = true;
        arm_clocks(i);
      }
    }
    for (std::size_t g = 0; g < c_.groups.size(); ++g) rebalance(g);
    for (std::size_t g = 0; g < c_.ccf.size(); ++g) arm_ccf(g);
    dispatch_all();
  }

  // ---- failure clocks ---------------------------------------------------

  bool shutdown_freezes() const {
    return c_.options.freeze_clocks_during_shutdown && !active_shutdowns_.empty();
  }

  bool clocks_should_run(std::size_t i) const {
    const Phase p = state_[i].phase;
    return (p == Phase::kOperating || p == Phase::kDegradedWaiting) && !shutdown_freezes();
  }

  void sync_clock(Clock& clock, bool should_run, EventKind kind, std::size_t target,
                  std::size_t detail) {
    if (!clock.armed) return;
    if (should_run && !clock.running) {
      clock.running = true;
      clock.fire_at = now_ + clock.remaining;
      ++clock.generation;
      schedule(clock.fire_at, kind, target, detail, clock.generation);
    } else if (!should_run && clock.running) {
      clock.running = false;
      clock.remaining = clock.fire_at - now_;
      ++clock.generation;
    }
  }

  void sync_clocks(std::size_t i) {
    const bool run = clocks_should_run(i);
    sync_clock(clocks_[i][0], run && state_[i].phase == Phase::kOperating, EventKind::kFailure, i, 0);
    sync_clock(clocks_[i][1], run, EventKind::kFailure, i, 1);
  }

  void disarm(Clock& clock) {
    clock.armed = false;
    clock.running = false;
    ++clock.generation;
  }

  void arm(Clock& clock, const CompiledMode& mode, RandomStream& rng) {
    disarm(clock);
    if (!mode.present || !(mode.failure_rate > 0.0)) return;
    clock.armed = true;
    clock.remaining = sample_duration(mode.failure_law, mode.failure_rate, rng);
  }

  void arm_clocks(std::size_t i) {
    arm(clocks_[i][0], c_.equipment[i].degraded, degraded_rng_[i]);
    arm(clocks_[i][1], c_.equipment[i].critical, critical_rng_[i]);
    sync_clocks(i);
  }

  void disarm_clocks(std::size_t i) {
    disarm(clocks_[i][0]);
    disarm(clocks_[i][1]);
  }

  void arm_ccf(std::size_t g) {
    Clock& clock = ccf_clocks_[g];
    disarm(clock);
    if (!(c_.ccf[g].rate > 0.0)) return;
    clock.armed = true;
    clock.remaining = sample_exponential(c_.ccf[g].rate, ccf_rng_[g].uniform());
    sync_clock(clock, !shutdown_freezes(), EventKind::kCcfFailure, g, 0);
  }

  // ---- equipment transitions ---------------------------------------------

  int engaged_count(std::size_t g) const {
    int n = 0;
    for (std::size_t m : c_.groups[g].members) n += state_[m].engaged ? 1 : 0;
    return n;
  }

  void release_slot(std::size_t i) {
    if (!state_[i].engaged) return;
    state_[i].engaged = false;
    if (c_.equipment[i].standby_group != kNone) rebalance(c_.equipment[i].standby_group);
  }

  /// Calls standby members into service until the group's required count of
  /// engaged members is met or no standby member is left.
  void rebalance(std::size_t g) {
    const auto& group = c_.groups[g];
    int engaged = engaged_count(g);
    for (std::size_t m : group.members) {
      if (engaged >= group.required) break;
      if (state_[m].phase != Phase::kStandby) continue;
      const double p = c_.equipment[m].demand_failure_prob;
      if (p > 0.0 && demand_rng_[m].uniform() < p) {
        ++result_.equipment[m].demand_failures;
        fail_to_critical(m);
        continue;
      }
      state_[m].phase = Phase::kOperating;
      state_[m].engaged = true;
      arm_clocks(m);
      ++engaged;
    }
  }

  std::size_t new_job(std::size_t equipment, bool preventive, ModeKind mode, std::size_t task) {
    jobs_.push_back(Job{equipment, preventive, mode, task, false});
    const std::size_t id = jobs_.size() - 1;
    crews_[c_.equipment[equipment].crew].waiting.push_back(id);
    return id;
  }

  /// Moves a non-failed item (operating, degraded-waiting or standby) to
  /// critical-waiting. A pending degraded job is upgraded in place.
  void fail_to_critical(std::size_t i) {
    auto& s = state_[i];
    const bool was_degraded = s.phase == Phase::kDegradedWaiting;
    s.phase = Phase::kCriticalWaiting;
    disarm_clocks(i);
    if (was_degraded) {
      jobs_[pending_job_[i]].mode = ModeKind::kCritical;
    } else {
      failed_at_[i] = now_;
      pending_job_[i] = new_job(i, false, ModeKind::kCritical, kNone);
    }
    release_slot(i);
  }

  void on_failure(std::size_t i, std::size_t clock_index) {
    Clock& clock = clocks_[i][clock_index];
    clock.running = false;
    clock.armed = false;
    auto& s = state_[i];
    if (clock_index == 0) {
      ++result_.equipment[i].degraded_failures;
      s.phase = Phase::kDegradedWaiting;
      failed_at_[i] = now_;
      pending_job_[i] = new_job(i, false, ModeKind::kDegraded, kNone);
      sync_clocks(i);
      if (c_.options.standby_trigger == StandbyTrigger::kOnAnyLoss) release_slot(i);
    } else {
      ++result_.equipment[i].critical_failures;
      fail_to_critical(i);
    }
  }

  void on_ccf(std::size_t g) {
    for (std::size_t m : c_.ccf[g].members) {
      const Phase p = state_[m].phase;
      if (p == Phase::kOperating || p == Phase::kDegradedWaiting || p == Phase::kStandby) {
        ++result_.equipment[m].ccf_failures;
        fail_to_critical(m);
      }
    }
    arm_ccf(g);
  }

  // ---- crews, jobs and spares ----------------------------------------------

  bool startable(const Job& job) const {
    const Phase p = state_[job.equipment].phase;
    if (job.preventive) return p == Phase::kOperating || p == Phase::kStandby;
    const std::size_t pool = c_.equipment[job.equipment].pool;
    return pool == kNone || pools_[pool].stock > 0;
  }

  void start_job(std::size_t crew, std::size_t id) {
    Job& job = jobs_[id];
    job.started = true;
    ++crews_[crew].busy;
    const std::size_t i = job.equipment;
    auto& s = state_[i];
    if (job.preventive) {
      const auto& task = c_.model.pm_tasks[job.pm_task];
      s.phase = Phase::kInPm;
      s.pm_capacity_loss = task.capacity_loss;
      sync_clocks(i);
      if (observer_) observer_->on_job_start(now_, i, true, false);
      schedule(now_ + task.duration_hours, EventKind::kPmComplete, id);
      return;
    }
    const std::size_t pool = c_.equipment[i].pool;
    if (pool != kNone) {
      --pools_[pool].stock;
      maybe_reorder(pool);
    }
    if (observer_) observer_->on_job_start(now_, i, false, pool != kNone);
    result_.equipment[i].repair_wait_hours += now_ - failed_at_[i];
    const bool was_degraded = s.phase == Phase::kDegradedWaiting;
    s.phase = Phase::kUnderRepair;
    s.repair_mode = job.mode;
    disarm_clocks(i);
    if (was_degraded) release_slot(i);
    const CompiledMode& mode =
        job.mode == ModeKind::kDegraded ? c_.equipment[i].degraded : c_.equipment[i].critical;
    schedule(now_ + sample_duration(mode.repair_law, mode.repair_rate, repair_rng_[i]),
             EventKind::kRepairComplete, id);
  }

  void dispatch(std::size_t k) {
    CrewState& crew = crews_[k];
    if (crew.status == CrewStatus::kOffSite) {
      if (crew.waiting.empty()) return;
      const double mobilization = c_.model.crews[k].mobilization_hours;
      bool needs_mobilization = mobilization > 0.0;
      if (needs_mobilization && !c_.options.pm_requires_mobilization) {
        needs_mobilization = std::any_of(crew.waiting.begin(), crew.waiting.end(),
                                         [&](std::size_t id) { return !jobs_[id].preventive; });
      }
      if (needs_mobilization) {
        crew.status = CrewStatus::kMobilizing;
        schedule(now_ + mobilization, EventKind::kCrewArrived, k);
        return;
      }
      crew.status = CrewStatus::kOnSite;
    }
    if (crew.status == CrewStatus::kMobilizing) return;

    for (auto it = crew.waiting.begin(); it != crew.waiting.end() && crew.busy < crew_size_[k];) {
      if (startable(jobs_[*it])) {
        const std::size_t id = *it;
        it = crew.waiting.erase(it);
        start_job(k, id);
        // Starting a job can enqueue new work (demand failures); restart the scan.
        it = crew.waiting.begin();
      } else {
        ++it;
      }
    }
    if (crew.waiting.empty() && crew.busy == 0) crew.status = CrewStatus::kOffSite;
  }

  void dispatch_all() {
    // Starting a job on one crew can create work for another (standby demand
    // failures), so iterate until no crew changes.
    for (int pass = 0; pass < 4; ++pass) {
      const std::size_t before = jobs_started_signature();
      for (std::size_t k = 0; k < crews_.size(); ++k) dispatch(k);
      if (jobs_started_signature() == before) break;
    }
    for (std::size_t k = 0; k < crews_.size(); ++k) crew_busy_[k] = crews_[k].busy;
    for (std::size_t p = 0; p < pools_.size(); ++p) stock_[p] = pools_[p].stock;
  }

  std::size_t jobs_started_signature() const {
    std::size_t sig = jobs_.size();
    for (const auto& crew : crews_) sig = sig * 31 + crew.waiting.size() * 7 + crew.busy;
    return sig;
  }

  void maybe_reorder(std::size_t p) {
    const auto& spec = c_.model.spare_pools[p];
    auto& pool = pools_[p];
    if (spec.policy != RestockPolicy::kOnDemand || pool.order_outstanding) return;
    if (pool.stock > spec.reorder_threshold) return;
    pool.order_outstanding = true;
    schedule(now_ + spec.lead_time_hours, EventKind::kSpareArrived, p,
             static_cast<std::size_t>(spec.restock_to - pool.stock));
  }

  void restore(std::size_t i) {
    auto& s = state_[i];
    const std::size_t g = c_.equipment[i].standby_group;
    if (g == kNone || engaged_count(g) < c_.groups[g].required) {
      s.phase = Phase::kOperating;
      s.engaged = true;
      arm_clocks(i);
    } else {
      s.phase = Phase::kStandby;
      s.engaged = false;
    }
  }

  void on_repair_complete(std::size_t id) {
    const Job& job = jobs_[id];
    const std::size_t i = job.equipment;
    --crews_[c_.equipment[i].crew].busy;
    ++result_.equipment[i].repairs;
    result_.equipment[i].downtime_hours += now_ - failed_at_[i];
    pending_job_[i] = kNone;
    restore(i);
    if (c_.equipment[i].standby_group != kNone) rebalance(c_.equipment[i].standby_group);
  }

  void on_pm_due(std::size_t task, std::size_t occurrence) {
    const auto& spec = c_.model.pm_tasks[task];
    const double next = static_cast<double>(occurrence + 1) * spec.interval_hours;
    if (next < c_.model.horizon_hours) schedule(next, EventKind::kPmDue, task, occurrence + 1);

    const std::size_t i = c_.pm_equipment[task];
    if (c_.equipment[i].out_of_service) return;
    if (spec.align_with_shutdown && absorbed_by_shutdown(spec)) {
      ++result_.equipment[i].pm_completed;
      return;
    }
    new_job(i, true, ModeKind::kCritical, task);
  }

  /// PM due this calendar year is carried out inside that year's shutdown.
  bool absorbed_by_shutdown(const PmTask& task) const {
    const double year = std::floor(now_ / kHoursPerYear);
    for (const auto& w : c_.shutdowns) {
      if (std::floor(w.start / kHoursPerYear) == year && task.duration_hours <= w.end - w.start) {
        return true;
      }
    }
    return false;
  }

  void on_pm_complete(std::size_t id) {
    const Job& job = jobs_[id];
    const std::size_t i = job.equipment;
    --crews_[c_.equipment[i].crew].busy;
    ++result_.equipment[i].pm_completed;
    auto& s = state_[i];
    s.phase = s.engaged ? Phase::kOperating : Phase::kStandby;
    sync_clocks(i);
    if (c_.equipment[i].standby_group != kNone) rebalance(c_.equipment[i].standby_group);
  }

  void on_shutdown(bool start, std::size_t window) {
    if (start) {
      active_shutdowns_.insert(window);
    } else {
      active_shutdowns_.erase(window);
    }
    for (std::size_t i = 0; i < state_.size(); ++i) sync_clocks(i);
    for (std::size_t g = 0; g < ccf_clocks_.size(); ++g) {
      sync_clock(ccf_clocks_[g], !shutdown_freezes(), EventKind::kCcfFailure, g, 0);
    }
  }

  void process(const Event& ev) {
    switch (ev.kind) {
      case EventKind::kFailure: on_failure(ev.target, ev.detail); break;
      case EventKind::kCcfFailure: on_ccf(ev.target); break;
      case EventKind::kCrewArrived: crews_[ev.target].status = CrewStatus::kOnSite; break;
      case EventKind::kSpareArrived: {
        auto& pool = pools_[ev.target];
        pool.stock += static_cast<int>(ev.detail);
        pool.order_outstanding = false;
        maybe_reorder(ev.target);
        break;
      }
      case EventKind::kRepairComplete: on_repair_complete(ev.target); break;
      case EventKind::kPmDue: on_pm_due(ev.target, ev.detail); break;
      case EventKind::kPmComplete: on_pm_complete(ev.target); break;
      case EventKind::kShutdownStart: on_shutdown(true, ev.target); break;
      case EventKind::kShutdownEnd: on_shutdown(false, ev.target); break;
      case EventKind::kPeriodicRestock: {
        const auto& spec = c_.model.spare_pools[ev.target];
        auto& pool = pools_[ev.target];
        if (!pool.order_outstanding && pool.stock < spec.restock_to) {
          pool.order_outstanding = true;
          schedule(now_ + spec.lead_time_hours, EventKind::kSpareArrived, ev.target,
                   static_cast<std::size_t>(spec.restock_to - pool.stock));
        }
        const double next = static_cast<double>(ev.detail + 1) * spec.interval_hours;
        if (next < c_.model.horizon_hours) {
          schedule(next, EventKind::kPeriodicRestock, ev.target, ev.detail + 1);
        }
        break;
      }
    }
  }

  // ---- throughput integration ----------------------------------------------

  double compute_throughput_now() {
    for (std::size_t i = 0; i < state_.size(); ++i) {
      capacities_[i] = effective_capacity(*c_.equipment[i].spec, state_[i]);
    }
    double value = (*c_.flow)(capacities_);
    double loss = 0.0;
    for (std::size_t w : active_shutdowns_) loss = std::max(loss, c_.shutdowns[w].loss);
    return value * (1.0 - loss);
  }

  void advance(double to) {
    if (to > now_ && throughput_ > 0.0) {
      auto b = static_cast<std::size_t>(now_ / bucket_);
      double start = now_;
      while (start < to && b < result_.bucket_integrals.size()) {
        const double bucket_end = std::min(static_cast<double>(b + 1) * bucket_, to);
        if (bucket_end > start) result_.bucket_integrals[b] += throughput_ * (bucket_end - start);
        start = bucket_end;
        ++b;
      }
    }
    now_ = std::max(now_, to);
  }

  void notify(EventKind kind) {
    if (!observer_) return;
    EngineView view;
    view.time = now_;
    view.kind = kind;
    view.throughput = throughput_;
    view.shutdown_active = !active_shutdowns_.empty();
    view.equipment = state_;
    view.crew_busy = crew_busy_;
    view.crew_size = crew_size_;
    view.spare_stock = stock_;
    observer_->on_event(view);
  }

  const Simulator::Compiled& c_;
  RunObserver* observer_;
  double bucket_;
  double now_ = 0.0;
  double throughput_ = 0.0;
  std::uint64_t next_sequence_ = 0;
  std::priority_queue<Event, std::vector<Event>, EventLater> queue_;

  std::vector<EquipmentState> state_;
  std::vector<std::array<Clock, 2>> clocks_;
  std::vector<std::size_t> pending_job_;
  std::vector<double> failed_at_;
  std::vector<double> capacities_;
  std::vector<RandomStream> degraded_rng_, critical_rng_, repair_rng_, demand_rng_, ccf_rng_;
  std::vector<Clock> ccf_clocks_;
  std::vector<Job> jobs_;
  std::vector<CrewState> crews_;
  std::vector<int> crew_busy_, crew_size_;
  std::vector<PoolState> pools_;
  std::vector<int> stock_;
  std::set<std::size_t> active_shutdowns_;
  RunResult result_;
};

std::size_t index_of(const auto& items, const std::string& id) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].id == id) return i;
  }
  return kNone;
}

}  // namespace

Simulator::Simulator(Model model, EngineOptions options) : compiled_(std::make_unique<Compiled>()) {
  const auto diagnostics = validate(model);
  if (has_errors(diagnostics)) {
    std::ostringstream msg;
    msg << "model is not valid:";
    for (const auto& d : diagnostics) {
      if (d.severity == Severity::kError) msg << " [" << d.rule << " " << d.subject << "]";
    }
    throw ContractError(msg.str());
  }
  Compiled& c = *compiled_;
  c.model = std::move(model);
  c.options = options;
  const Model& m = c.model;

  std::vector<std::string> group_names;
  for (const auto& spec : m.equipment) {
    CompiledEquipment e;
    e.id = spec.id;
    e.spec = &spec;
    auto compile_mode = [](const FailureModeSpec* mode) {
      CompiledMode out;
      if (!mode) return out;
      out.present = true;
      out.failure_rate = mode->failure_rate;
      out.repair_rate = mode->repair_rate;
      out.failure_law = mode->failure_law;
      out.repair_law = mode->repair_law;
      return out;
    };
    e.degraded = compile_mode(spec.mode(ModeKind::kDegraded));
    e.critical = compile_mode(spec.mode(ModeKind::kCritical));
    e.passive = spec.role == Role::kPassiveStandby;
    e.demand_failure_prob = spec.demand_failure_prob.value_or(0.0);
    e.crew = index_of(m.crews, spec.crew);
    if (spec.spare_pool) e.pool = index_of(m.spare_pools, *spec.spare_pool);
    e.out_of_service = spec.out_of_service;
    if (spec.standby_group) {
      auto it = std::find(group_names.begin(), group_names.end(), *spec.standby_group);
      if (it == group_names.end()) {
        group_names.push_back(*spec.standby_group);
        c.groups.emplace_back();
        it = group_names.end() - 1;
      }
      e.standby_group = static_cast<std::size_t>(it - group_names.begin());
    }
    c.equipment.push_back(std::move(e));
  }
  for (std::size_t i = 0; i < c.equipment.size(); ++i) {
    const std::size_t g = c.equipment[i].standby_group;
    if (g == kNone) continue;
    c.groups[g].members.push_back(i);
    if (!c.equipment[i].passive) ++c.groups[g].required;
  }

  for (const auto& group : m.ccf_groups) {
    CompiledCcf cg;
    cg.id = group.id;
    double lambda = 0.0;
    for (const auto& id : group.member_ids) {
      const std::size_t i = index_of(c.equipment, id);
      cg.members.push_back(i);
      lambda = c.equipment[i].spec->mode(ModeKind::kCritical)->failure_rate;
    }
    const BetaSplit split = beta_split(lambda, group.beta);
    cg.rate = split.ccf_rate;
    for (std::size_t i : cg.members) c.equipment[i].critical.failure_rate = split.independent_rate;
    c.ccf.push_back(std::move(cg));
  }

  for (const auto& s : m.shutdowns) {
    for (int k = 1;; ++k) {
      const double start = k * s.interval_hours;
      if (start + s.duration_hours > m.horizon_hours) break;
      c.shutdowns.push_back({start, start + s.duration_hours, s.capacity_loss});
    }
  }
  std::stable_sort(c.shutdowns.begin(), c.shutdowns.end(),
                   [](const ShutdownWindow& a, const ShutdownWindow& b) { return a.start < b.start; });

  for (const auto& task : m.pm_tasks) c.pm_equipment.push_back(index_of(c.equipment, task.equipment_id));
  c.flow.emplace(m.network, m.equipment);
}

Simulator::~Simulator() = default;
Simulator::Simulator(Simulator&&) noexcept = default;
Simulator& Simulator::operator=(Simulator&&) noexcept = default;

const Model& Simulator::model() const { return compiled_->model; }
const EngineOptions& Simulator::options() const { return compiled_->options; }

RunResult Simulator::run(std::uint64_t seed, double bucket_hours, RunObserver* observer,
                         std::uint64_t run_index) const {
  if (!(bucket_hours > 0.0)) throw ContractError("bucket_hours must be positive");
  return Run(*compiled_, seed, bucket_hours, observer, run_index).execute();
}

RunResult run_simulation(const Model& model, std::uint64_t seed, double bucket_hours,
                         const EngineOptions& options) {
  return Simulator(model, options).run(seed, bucket_hours);
}

}  // namespace pasim
