#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "gscal/pipeline.hpp"
#include "gscal/protocols.hpp"

using namespace gscal;

namespace {

Dataset without(const Dataset& d, FamilyKind kind) {
  Dataset out;
  const std::string prefix = std::string(family_name(kind)) + "/";
  for (const auto& r : d.records())
    if (r.circuit_id.rfind(prefix, 0) != 0) out.add(r);
  out.provenance = d.provenance;
  return out;
}

}  // namespace

TEST_CASE("config defaults and JSON round trip") {
  const RunConfig c;
  CHECK(c.decoherence_depths == std::vector<int>{20, 40, 60, 80, 100, 120});
  CHECK(c.rpe_max_exponent == 3);
  CHECK(c.shots.decoherence == 30);
  CHECK(c.shots.readout == 300);
  CHECK(c.pstar == 0.05);
  const auto back = config_from_json(config_to_json(c));
  CHECK(config_to_json(back) == config_to_json(c));
  const auto partial = config_from_json(nlohmann::json::parse(R"({"seed": 9, "shots": {"rpe": 100}})"));
  CHECK(partial.seed == 9);
  CHECK(partial.shots.rpe == 100);
  CHECK(partial.shots.decoherence == 30);
}

TEST_CASE("config rejects unknown fields and bad values") {
  using nlohmann::json;
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"sed": 1})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"shots": {"cz_shots": 1}})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"decoherence_depths": [20, 25, 40, 50]})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"shots": {"rpe": 0}})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"pstar": 0.7})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"seed": "one"})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"cz": {"enabled": true}})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"model": {"p_x": 0.9}})")), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
  const auto path = std::filesystem::temp_directory_path() / "gscal_bad_config.json";
  std::ofstream(path) << "{ not json";
  CHECK_THROWS_AS(load_config(path), ConfigError);
  std::filesystem::remove(path);
}

TEST_CASE("circuit plans") {
  RunConfig c;
  // 6 depths x 2 bases x 2 signs, 4 depths x 2 families x 2 quadratures, 2 readout.
  CHECK(plan_circuits(c).size() == 24 + 16 + 2);
  c.model.cz = CzParams{};
  c.cz.enabled = true;
  // 4 depths x 4 phase circuits, 7 depths x 2 decay circuits.
  CHECK(plan_cz_circuits(c).size() == 16 + 14);
  CHECK(simulate(c).size() == 42 + 30);
  CHECK(single_qubit_records(simulate(c)).size() == 42);
}

TEST_CASE("simulation is deterministic per seed and records provenance") {
  RunConfig c;
  c.seed = 11;
  const Dataset a = simulate(c), b = simulate(c);
  std::ostringstream sa, sb;
  write_jsonl(a, sa);
  write_jsonl(b, sb);
  CHECK(sa.str() == sb.str());
  REQUIRE(a.provenance);
  CHECK(a.provenance->seed == 11);
  c.seed = 12;
  std::ostringstream sc;
  write_jsonl(simulate(c), sc);
  CHECK(sc.str() != sa.str());
}

TEST_CASE("full characterization report") {
  RunConfig c;
  c.seed = 7;
  const auto r = characterize(simulate(c));
  REQUIRE(r.mle);
  REQUIRE(r.independent_model);
  CHECK(r.gaps.empty());
  CHECK(r.profiles.size() == 6);
  CHECK(r.mle->log_likelihood >= r.mle->initial_log_likelihood - 1e-9);
  REQUIRE(r.truth);
  CHECK(*r.truth == c.model);
  const auto j = report_to_json(r);
  for (const char* key : {"pstar", "gaps", "notes", "independent", "independent_model", "mle", "profiles",
                          "violation", "truth"})
    CHECK(j.contains(key));
  CHECK(j["profiles"].size() == 6);
  CHECK(j["mle"]["log_likelihood_increase"].get<double>() >= -1e-9);
  CHECK(report_summary(r).find("Likelihood maximization") != std::string::npos);

  const auto dir = std::filesystem::temp_directory_path() / "gscal_report_test";
  std::filesystem::remove_all(dir);
  write_report(r, dir);
  CHECK(std::filesystem::exists(dir / "report.json"));
  CHECK(std::filesystem::exists(dir / "summary.txt"));
  CHECK(std::filesystem::exists(dir / "profile_epsilon.csv"));
  CHECK(std::filesystem::exists(dir / "profile_r_10.csv"));
  std::ifstream in(dir / "report.json");
  CHECK(nlohmann::json::parse(in) == j);
  std::filesystem::remove_all(dir);
}

TEST_CASE("missing families give a partial report") {
  RunConfig c;
  const Dataset d = simulate(c);
  for (auto kind : {FamilyKind::DecoherenceX, FamilyKind::RpeAxis, FamilyKind::ReadoutPi}) {
    const auto r = characterize(without(d, kind));
    CAPTURE(family_name(kind));
    CHECK_FALSE(r.mle);
    CHECK(r.profiles.empty());
    CHECK(r.gaps.size() == 2);
    CHECK(r.gaps.back().find("likelihood: skipped") == 0);
    CHECK(report_to_json(r)["mle"].is_null());
  }
  const auto e = independent_estimates(without(d, FamilyKind::RpeAmplitude));
  CHECK(e.decoherence);
  CHECK(e.readout);
  CHECK_FALSE(e.rpe);
  CHECK_FALSE(e.model());
}

TEST_CASE("unresolvable decays fall back to an offset-free fit with a note") {
  // At 30 shots the X decay of seed 8 is within three standard errors of flat.
  RunConfig c;
  c.seed = 8;
  const auto e = independent_estimates(simulate(c));
  REQUIRE(e.decoherence);
  CHECK(e.gaps.empty());
  REQUIRE_FALSE(e.notes.empty());
  CHECK(e.notes.front().find("refit with offset 0") != std::string::npos);
  CHECK(e.decoherence->fit_x.offset == 0.0);
}

TEST_CASE("CZ report") {
  RunConfig c;
  c.model.cz = CzParams{0.03, -0.05, 0.004, 0.006, 0.002};
  c.cz.enabled = true;
  const auto r = characterize_cz(simulate_cz(c));
  REQUIRE(r.estimate);
  REQUIRE(r.truth);
  const auto j = cz_report_to_json(r);
  CHECK(j["truth"]["p_zz"] == 0.002);
  CHECK(j["estimate"].contains("p_iz_plus_p_zi"));
  CHECK(cz_summary(r).find("alpha") != std::string::npos);
  const auto missing = characterize_cz(Dataset{});
  CHECK_FALSE(missing.estimate);
  CHECK(missing.gaps.size() == 1);
  RunConfig no_cz;
  CHECK_THROWS_AS(simulate_cz(no_cz), ConfigError);
}
