#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace gscal {

// A shot stream is keyed by (master seed, stream id). The same key always
// produces the same draws, independent of which other streams were used or
// in what order, so circuits can be sampled in any order or in parallel.
struct StreamKey {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;
};

// Stable 64-bit id for a string (FNV-1a); used to key streams by circuit id.
std::uint64_t stream_id_for(std::string_view name);

std::mt19937_64 make_engine(StreamKey key);

// Number of outcome-0 results in n shots when Pr(outcome 0) = p_zero.
std::int64_t sample_shots(double p_zero, std::int64_t n, StreamKey key);

}  // namespace gscal
