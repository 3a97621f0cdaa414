#include "gscal/rng.hpp"

#include <stdexcept>

namespace gscal {
namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t stream_id_for(std::string_view name) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::mt19937_64 make_engine(StreamKey key) {
  std::uint64_t state = key.master_seed;
  const std::uint64_t a = splitmix64(state);
  state ^= key.stream_id;
  const std::uint64_t b = splitmix64(state);
  std::seed_seq seq{std::uint32_t(a), std::uint32_t(a >> 32), std::uint32_t(b),
                    std::uint32_t(b >> 32)};
  return std::mt19937_64(seq);
}

std::int64_t sample_shots(double p_zero, std::int64_t n, StreamKey key) {
  if (!(p_zero >= 0.0 && p_zero <= 1.0)) throw std::invalid_argument("sample_shots: p outside [0, 1]");
  if (n < 1) throw std::invalid_argument("sample_shots: n must be >= 1");
  if (p_zero == 0.0) return 0;
  if (p_zero == 1.0) return n;
  auto engine = make_engine(key);
  std::binomial_distribution<std::int64_t> dist(n, p_zero);
  return dist(engine);
}

}  // namespace gscal
