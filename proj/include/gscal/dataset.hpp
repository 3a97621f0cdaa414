#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gscal/model.hpp"
#include "gscal/protocols.hpp"
#include "gscal/rng.hpp"

namespace gscal {

// Shot counts for one circuit. `zeros` is integral for sampled data; expected-
// count datasets (exact probabilities times shots) carry fractional values.
struct CountRecord {
  std::string circuit_id;
  std::int64_t shots = 0;
  double zeros = 0.0;

  double frequency() const { return zeros / double(shots); }
};

struct Provenance {
  std::uint64_t seed = 0;
  std::optional<GatesetModel> model;
};

class Dataset {
 public:
  // Throws DatasetError for duplicate ids, shots < 1 or zeros outside [0, shots].
  void add(CountRecord record);

  const std::vector<CountRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  const CountRecord* find(std::string_view id) const;
  // Like find, but throws DatasetError when the id is absent.
  const CountRecord& at(std::string_view id) const;
  bool contains(std::string_view id) const { return find(id) != nullptr; }

  // Checks every id resolves to a known circuit.
  void validate() const;

  std::optional<Provenance> provenance;

 private:
  std::vector<CountRecord> records_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct PlannedCircuit {
  CircuitFamily family;
  std::int64_t shots = 1;
};

// Samples each circuit with its own stream keyed by (seed, circuit id).
Dataset simulate_dataset(const GatesetModel& model, const std::vector<PlannedCircuit>& plan,
                         std::uint64_t seed);

// zeros = shots * Pr(0) exactly; the infinite-statistics surrogate.
Dataset expected_dataset(const GatesetModel& model, const std::vector<PlannedCircuit>& plan);

// JSON lines: one {"id", "n", "k"} object per record, optionally preceded by a
// {"provenance": {"seed", "model"}} line.
void write_jsonl(const Dataset& d, std::ostream& out);
Dataset read_jsonl(std::istream& in);

}  // namespace gscal
