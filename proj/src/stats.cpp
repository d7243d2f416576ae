#include "pasim/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace pasim {

std::vector<RunResult> run_batch(const Simulator& simulator, const BatchOptions& options) {
  std::vector<RunResult> results(options.runs);
  unsigned threads = options.threads == 0 ? std::thread::hardware_concurrency() : options.threads;
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(options.runs)));

  auto run_one = [&](std::size_t i) {
    results[i] = simulator.run(run_seed(options.seed, i), options.bucket_hours, nullptr, i);
  };
  if (threads <= 1) {
    for (std::size_t i = 0; i < options.runs; ++i) run_one(i);
    return results;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> workers;
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < options.runs; i = next++) {
        try {
          run_one(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  workers.clear();
  if (failure) std::rethrow_exception(failure);
  return results;
}

double production_availability(const RunResult& run) {
  if (!(run.planned_volume > 0.0)) throw DomainError("planned volume must be positive");
  return run.produced_volume / run.planned_volume;
}

double BatchStats::bucket_width(std::size_t b) const {
  return std::min(bucket_start(b + 1), horizon_hours) - bucket_start(b);
}

BatchStats aggregate(std::vector<RunResult> runs) {
  if (runs.empty()) throw DomainError("cannot aggregate an empty batch");
  std::stable_sort(runs.begin(), runs.end(), [](const RunResult& a, const RunResult& b) {
    return a.run_index < b.run_index;
  });
  const RunResult& first = runs.front();
  for (const auto& r : runs) {
    if (r.planned_volume != first.planned_volume || r.bucket_hours != first.bucket_hours ||
        r.bucket_integrals.size() != first.bucket_integrals.size() ||
        r.equipment.size() != first.equipment.size()) {
      throw ContractError("runs do not share one bucket layout and planned volume");
    }
  }

  BatchStats stats;
  const auto n = runs.size();
  stats.run_count = n;
  stats.horizon_hours = first.horizon_hours;
  stats.bucket_hours = first.bucket_hours;

  double sum = 0.0;
  for (const auto& r : runs) sum += production_availability(r);
  stats.mean_pa = sum / static_cast<double>(n);
  if (n > 1) {
    double ss = 0.0;
    for (const auto& r : runs) {
      const double d = production_availability(r) - stats.mean_pa;
      ss += d * d;
    }
    stats.std_pa = std::sqrt(ss / static_cast<double>(n - 1));
  }
  stats.sem_pa = stats.std_pa / std::sqrt(static_cast<double>(n));

  stats.profile.assign(first.bucket_integrals.size(), 0.0);
  for (const auto& r : runs) {
    for (std::size_t b = 0; b < stats.profile.size(); ++b) stats.profile[b] += r.bucket_integrals[b];
  }
  for (std::size_t b = 0; b < stats.profile.size(); ++b) {
    stats.profile[b] /= static_cast<double>(n) * stats.bucket_width(b);
  }

  stats.equipment.resize(first.equipment.size());
  for (const auto& r : runs) {
    for (std::size_t i = 0; i < r.equipment.size(); ++i) {
      const auto& c = r.equipment[i];
      auto& m = stats.equipment[i];
      m.degraded_failures += static_cast<double>(c.degraded_failures);
      m.critical_failures += static_cast<double>(c.critical_failures);
      m.ccf_failures += static_cast<double>(c.ccf_failures);
      m.demand_failures += static_cast<double>(c.demand_failures);
      m.repairs += static_cast<double>(c.repairs);
      m.pm_completed += static_cast<double>(c.pm_completed);
      m.downtime_hours += c.downtime_hours;
      m.repair_wait_hours += c.repair_wait_hours;
    }
  }
  const double inv = 1.0 / static_cast<double>(n);
  for (auto& m : stats.equipment) {
    m.degraded_failures *= inv;
    m.critical_failures *= inv;
    m.ccf_failures *= inv;
    m.demand_failures *= inv;
    m.repairs *= inv;
    m.pm_completed *= inv;
    m.downtime_hours *= inv;
    m.repair_wait_hours *= inv;
  }
  return stats;
}

}  // namespace pasim
