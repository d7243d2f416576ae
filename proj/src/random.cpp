#include "pasim/random.hpp"

#include <cmath>

namespace pasim {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t run_seed(std::uint64_t base_seed, std::uint64_t run_index) {
  return splitmix64(splitmix64(base_seed) ^ splitmix64(run_index + 0x632be59bd9b4e019ULL));
}

RandomStream::RandomStream(std::uint64_t seed, std::string_view name, std::uint64_t purpose) {
  const std::uint64_t key = splitmix64(seed ^ splitmix64(fnv1a64(name) + purpose));
  std::seed_seq seq{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32),
                    static_cast<std::uint32_t>(purpose)};
  engine_.seed(seq);
}

double RandomStream::uniform() {
  const std::uint64_t bits = engine_() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double sample_exponential(double rate, double u) {
  if (!(rate > 0.0)) return kNever;
  return -std::log(u) / rate;
}

double sample_duration(Law law, double rate, RandomStream& stream) {
  if (!(rate > 0.0)) return kNever;
  if (law == Law::kDeterministic) return 1.0 / rate;
  return sample_exponential(rate, stream.uniform());
}

}  // namespace pasim
