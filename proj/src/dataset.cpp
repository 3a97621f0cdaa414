#include "gscal/dataset.hpp"

#include <cmath>
#include <istream>
#include <ostream>

#include "json.hpp"

#include "gscal/errors.hpp"

namespace gscal {

void Dataset::add(CountRecord record) {
  if (record.shots < 1) throw DatasetError("record '" + record.circuit_id + "' has shots < 1");
  if (!(record.zeros >= 0.0 && record.zeros <= double(record.shots))) {
    throw DatasetError("record '" + record.circuit_id + "' has zeros outside [0, shots]");
  }
  if (index_.contains(record.circuit_id)) {
    throw DatasetError("duplicate circuit id '" + record.circuit_id + "'");
  }
  index_.emplace(record.circuit_id, records_.size());
  records_.push_back(std::move(record));
}

const CountRecord* Dataset::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &records_[it->second];
}

const CountRecord& Dataset::at(std::string_view id) const {
  const CountRecord* r = find(id);
  if (r == nullptr) throw DatasetError("dataset has no record for '" + std::string(id) + "'");
  return *r;
}

void Dataset::validate() const {
  for (const auto& r : records_) {
    try {
      (void)resolve_circuit(r.circuit_id);
    } catch (const CircuitError& e) {
      throw DatasetError(std::string("unresolvable circuit id: ") + e.what());
    }
  }
}

Dataset simulate_dataset(const GatesetModel& model, const std::vector<PlannedCircuit>& plan,
                         std::uint64_t seed) {
  const CircuitSimulator sim(model);
  Dataset d;
  for (const auto& item : plan) {
    const double p = sim.probability(compile(item.family.circuit));
    const StreamKey key{seed, stream_id_for(item.family.id)};
    d.add({item.family.id, item.shots, double(sample_shots(p, item.shots, key))});
  }
  d.provenance = Provenance{seed, model};
  return d;
}

Dataset expected_dataset(const GatesetModel& model, const std::vector<PlannedCircuit>& plan) {
  const CircuitSimulator sim(model);
  Dataset d;
  for (const auto& item : plan) {
    const double p = sim.probability(compile(item.family.circuit));
    d.add({item.family.id, item.shots, p * double(item.shots)});
  }
  d.provenance = Provenance{0, model};
  return d;
}

void write_jsonl(const Dataset& d, std::ostream& out) {
  if (d.provenance) {
    nlohmann::json prov{{"seed", d.provenance->seed}};
    prov["model"] = d.provenance->model ? model_to_json(*d.provenance->model) : nlohmann::json(nullptr);
    out << nlohmann::json{{"provenance", prov}}.dump() << '\n';
  }
  for (const auto& r : d.records()) {
    nlohmann::json j{{"id", r.circuit_id}, {"n", r.shots}};
    if (r.zeros == std::floor(r.zeros)) {
      j["k"] = std::int64_t(r.zeros);
    } else {
      j["k"] = r.zeros;
    }
    out << j.dump() << '\n';
  }
}

Dataset read_jsonl(std::istream& in) {
  Dataset d;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw DatasetError("line " + std::to_string(lineno) + ": " + e.what());
    }
    if (j.contains("provenance")) {
      const auto& p = j.at("provenance");
      Provenance prov;
      prov.seed = p.value("seed", std::uint64_t{0});
      if (p.contains("model") && !p.at("model").is_null()) prov.model = model_from_json(p.at("model"));
      d.provenance = prov;
      continue;
    }
    if (!j.is_object() || j.size() != 3 || !j.contains("id") || !j.contains("n") || !j.contains("k")) {
      throw DatasetError("line " + std::to_string(lineno) + ": expected {id, n, k}");
    }
    if (!j.at("id").is_string() || !j.at("n").is_number_integer() || !j.at("k").is_number()) {
      throw DatasetError("line " + std::to_string(lineno) + ": bad field types");
    }
    d.add({j.at("id").get<std::string>(), j.at("n").get<std::int64_t>(), j.at("k").get<double>()});
  }
  return d;
}

}  // namespace gscal
