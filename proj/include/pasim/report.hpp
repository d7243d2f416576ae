#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "pasim/indicators.hpp"
#include "pasim/stats.hpp"

namespace pasim {

/// Everything needed to reproduce a study plus its numerical results.
struct Report {
  std::string tool_version = PASIM_VERSION;
  std::string generated_at;  // UTC ISO-8601; the only field that varies between identical runs
  std::string model_digest;
  std::size_t runs = 0;
  std::uint64_t seed = 0;
  double bucket_hours = 0.0;
  bool zero_logistics = false;
  BatchStats stats;
  std::vector<std::string> equipment_ids;
  std::optional<IndicatorTable> indicators;
};

std::string utc_timestamp();

/// Machine-readable report document (JSON, full double precision).
std::string report_json(const Report& report);

/// `bucket_start_hours,mean_throughput` table, one row per bucket.
std::string profile_csv(const BatchStats& stats);

/// Short text summary with percentages rounded to 2 decimals.
std::string report_text(const Report& report);

}  // namespace pasim
