#include "pasim/report.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace pasim {

using OrderedJson = nlohmann::ordered_json;

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace {

OrderedJson stats_json(const BatchStats& s, const std::vector<std::string>& ids) {
  OrderedJson j;
  j["run_count"] = s.run_count;
  j["mean_pa"] = s.mean_pa;
  j["std_pa"] = s.std_pa;
  j["sem_pa"] = s.sem_pa;
  j["horizon_hours"] = s.horizon_hours;
  j["bucket_hours"] = s.bucket_hours;
  j["profile"] = s.profile;
  OrderedJson equipment = OrderedJson::array();
  for (std::size_t i = 0; i < s.equipment.size(); ++i) {
    const auto& c = s.equipment[i];
    OrderedJson e;
    e["id"] = i < ids.size() ? ids[i] : std::to_string(i);
    e["degraded_failures"] = c.degraded_failures;
    e["critical_failures"] = c.critical_failures;
    e["ccf_failures"] = c.ccf_failures;
    e["demand_failures"] = c.demand_failures;
    e["repairs"] = c.repairs;
    e["pm_completed"] = c.pm_completed;
    e["downtime_hours"] = c.downtime_hours;
    e["repair_wait_hours"] = c.repair_wait_hours;
    equipment.push_back(std::move(e));
  }
  j["equipment"] = std::move(equipment);
  return j;
}

std::string percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f%%", 100.0 * fraction);
  return buf;
}

}  // namespace

std::string report_json(const Report& r) {
  OrderedJson j;
  j["tool"] = "pasim";
  j["version"] = r.tool_version;
  j["generated_at"] = r.generated_at;
  j["model_digest"] = r.model_digest;
  j["parameters"]["runs"] = r.runs;
  j["parameters"]["seed"] = r.seed;
  j["parameters"]["bucket_hours"] = r.bucket_hours;
  j["parameters"]["zero_logistics"] = r.zero_logistics;
  j["results"] = stats_json(r.stats, r.equipment_ids);
  if (r.indicators) {
    OrderedJson ind;
    ind["base_mean_pa"] = r.indicators->base_mean_pa;
    ind["base_sem_pa"] = r.indicators->base_sem_pa;
    ind["rows"] = OrderedJson::array();
    for (const auto& row : r.indicators->rows) {
      OrderedJson rj;
      rj["name"] = row.name;
      rj["criticality"] = row.criticality;
      rj["contribution"] = row.contribution;
      rj["zero_mean_pa"] = row.zero_mean_pa;
      rj["perfect_mean_pa"] = row.perfect_mean_pa;
      rj["perfect_sem_pa"] = row.perfect_sem_pa;
      ind["rows"].push_back(std::move(rj));
    }
    j["indicators"] = std::move(ind);
  }
  return j.dump(2) + "\n";
}

std::string profile_csv(const BatchStats& stats) {
  std::ostringstream out;
  out << "bucket_start_hours,mean_throughput\n";
  out << std::setprecision(17);
  for (std::size_t b = 0; b < stats.profile.size(); ++b) {
    out << stats.bucket_start(b) << ',' << stats.profile[b] << '\n';
  }
  return out.str();
}

std::string report_text(const Report& r) {
  std::ostringstream out;
  out << "model " << r.model_digest << "  runs " << r.runs << "  seed " << r.seed << "  bucket "
      << r.bucket_hours << " h" << (r.zero_logistics ? "  (zero logistics)" : "") << "\n";
  out << "mean production availability  " << percent(r.stats.mean_pa) << "\n";
  out << "standard deviation            " << percent(r.stats.std_pa) << "\n";
  out << "standard error of the mean    " << percent(r.stats.sem_pa) << "\n";
  if (r.indicators) {
    out << "\n" << std::left << std::setw(24) << "subsystem" << std::right << std::setw(12)
        << "criticality" << std::setw(14) << "contribution" << "\n";
    for (const auto& row : r.indicators->rows) {
      out << std::left << std::setw(24) << row.name << std::right << std::setw(12)
          << percent(row.criticality) << std::setw(14) << percent(row.contribution) << "\n";
    }
  }
  return out.str();
}

}  // namespace pasim
