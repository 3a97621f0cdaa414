#include <sstream>

#include "doctest.h"
#include "gscal/dataset.hpp"
#include "gscal/errors.hpp"
#include "gscal/protocols.hpp"

using namespace gscal;

namespace {

std::vector<PlannedCircuit> small_plan(std::int64_t shots) {
  std::vector<PlannedCircuit> plan;
  for (const auto& f : decoherence_circuits({2, 4})) plan.push_back({f, shots});
  for (const auto& f : readout_circuits()) plan.push_back({f, shots});
  return plan;
}

const GatesetModel kBaseline{0.06, 0.01, 0.002, 0.02, 0.08, 0.05, std::nullopt};

}  // namespace

TEST_CASE("record invariants") {
  Dataset d;
  d.add({"ReadoutZero/0/0", 10, 3});
  CHECK_THROWS_AS(d.add({"ReadoutZero/0/0", 10, 3}), DatasetError);
  CHECK_THROWS_AS(d.add({"ReadoutPi/2/0", 0, 0}), DatasetError);
  CHECK_THROWS_AS(d.add({"ReadoutPi/2/0", 10, 11}), DatasetError);
  CHECK_THROWS_AS(d.add({"ReadoutPi/2/0", 10, -1}), DatasetError);
  CHECK(d.at("ReadoutZero/0/0").frequency() == doctest::Approx(0.3));
  CHECK_THROWS_AS(d.at("ReadoutPi/2/0"), DatasetError);
  d.add({"Bogus/1/0", 1, 0});
  CHECK_THROWS_AS(d.validate(), DatasetError);
}

TEST_CASE("simulation is deterministic per seed and per circuit") {
  const auto plan = small_plan(50);
  const Dataset a = simulate_dataset(kBaseline, plan, 42);
  const Dataset b = simulate_dataset(kBaseline, plan, 42);
  std::ostringstream sa, sb;
  write_jsonl(a, sa);
  write_jsonl(b, sb);
  CHECK(sa.str() == sb.str());

  // A record depends only on (seed, circuit id), not on the rest of the plan.
  std::vector<PlannedCircuit> reversed(plan.rbegin(), plan.rend());
  reversed.pop_back();
  const Dataset c = simulate_dataset(kBaseline, reversed, 42);
  for (const auto& r : c.records()) CHECK(r.zeros == a.at(r.circuit_id).zeros);

  const Dataset other = simulate_dataset(kBaseline, plan, 43);
  bool differs = false;
  for (const auto& r : other.records()) differs = differs || r.zeros != a.at(r.circuit_id).zeros;
  CHECK(differs);
}

TEST_CASE("zero-noise decoherence records are all-or-nothing") {
  const Dataset d = simulate_dataset(GatesetModel{}, small_plan(30), 1);
  for (const auto& r : d.records()) CHECK((r.zeros == 0 || r.zeros == 30));
}

TEST_CASE("sampled frequencies concentrate on the model probability") {
  const auto plan = small_plan(200000);
  const Dataset d = simulate_dataset(kBaseline, plan, 9);
  const Dataset e = expected_dataset(kBaseline, plan);
  for (const auto& r : d.records()) {
    const double p = e.at(r.circuit_id).frequency();
    CHECK(std::fabs(r.frequency() - p) < 5 * std::sqrt(p * (1 - p) / 200000) + 1e-12);
  }
}

TEST_CASE("JSON lines round trip") {
  Dataset d = simulate_dataset(kBaseline, small_plan(30), 5);
  d.provenance = Provenance{5, kBaseline};
  d.add({"DecoherenceX/6/+", 7, 2.5});
  std::stringstream io;
  write_jsonl(d, io);
  const Dataset back = read_jsonl(io);
  REQUIRE(back.size() == d.size());
  for (const auto& r : d.records()) {
    CHECK(back.at(r.circuit_id).shots == r.shots);
    CHECK(back.at(r.circuit_id).zeros == r.zeros);
  }
  REQUIRE(back.provenance);
  CHECK(back.provenance->seed == 5);
  CHECK(*back.provenance->model == kBaseline);

  std::istringstream bad("{\"id\": \"ReadoutZero/0/0\", \"n\": 3}\n");
  CHECK_THROWS_AS(read_jsonl(bad), DatasetError);
  std::istringstream garbage("not json\n");
  CHECK_THROWS_AS(read_jsonl(garbage), DatasetError);
  std::istringstream blank("\n{\"id\": \"ReadoutZero/0/0\", \"n\": 3, \"k\": 1}\n\n");
  CHECK(read_jsonl(blank).size() == 1);
}
