#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string_view>

#include "pasim/model.hpp"

namespace pasim {

inline constexpr double kNever = std::numeric_limits<double>::infinity();

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a64(std::string_view text);

/// Seed of run `run_index` in a batch started from `base_seed`.
std::uint64_t run_seed(std::uint64_t base_seed, std::uint64_t run_index);

/// Independent substream of one run, identified by a stable name (for example
/// an equipment id) and a purpose tag. The same (run seed, name, purpose)
/// always yields the same sequence, whatever else the model contains.
class RandomStream {
 public:
  RandomStream(std::uint64_t run_seed, std::string_view name, std::uint64_t purpose);

  /// Uniform variate strictly inside (0, 1) built from the top 53 bits.
  double uniform();

 private:
  std::mt19937_64 engine_;
};

/// Inverse-transform exponential sample -ln(u)/rate. Returns kNever when
/// rate <= 0 (the event is never scheduled).
double sample_exponential(double rate, double u);

/// Duration drawn from `law` with the given rate; deterministic laws return
/// 1/rate without consuming a variate.
double sample_duration(Law law, double rate, RandomStream& stream);

}  // namespace pasim
