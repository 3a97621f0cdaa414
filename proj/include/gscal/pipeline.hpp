#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "gscal/config.hpp"
#include "gscal/dataset.hpp"
#include "gscal/estimation.hpp"
#include "gscal/likelihood.hpp"
#include "gscal/modelstats.hpp"

namespace gscal {

// Single-qubit characterization circuits for the config: decoherence,
// phase estimation and readout.
std::vector<PlannedCircuit> plan_circuits(const RunConfig& c);
// CZ phase and decay circuits.
std::vector<PlannedCircuit> plan_cz_circuits(const RunConfig& c);

// Samples plan_circuits (plus the CZ plan when cz.enabled) with c.seed and
// records the provenance.
Dataset simulate(const RunConfig& c);
Dataset simulate_cz(const RunConfig& c);

// Records whose circuits act on one qubit.
Dataset single_qubit_records(const Dataset& d);

struct IndependentEstimates {
  std::optional<DecoherenceEstimate> decoherence;
  std::optional<RpeResult> rpe;
  std::optional<ReadoutEstimate> readout;
  std::vector<std::string> gaps;
  // Estimates that were produced by a fallback, with the reason.
  std::vector<std::string> notes;

  // Combined model clipped into the estimation bounds; empty if any part is missing.
  std::optional<GatesetModel> model() const;
};

// A decay fit that is flat or does not converge with a free offset is
// retried with the offset pinned at 0 (noted); missing records are gaps.
IndependentEstimates independent_estimates(const Dataset& d);

struct CharacterizationOptions {
  double pstar = 0.05;
  int profile_points = 41;
  bool profiles = true;
  NelderMeadOptions optimizer;
};

struct CharacterizationReport {
  IndependentEstimates independent;
  std::optional<GatesetModel> independent_model;
  std::optional<MleResult> mle;
  std::vector<LikelihoodProfile> profiles;
  std::optional<ViolationReport> independent_violation;
  std::optional<ViolationReport> mle_violation;
  std::optional<GatesetModel> truth;  // from the dataset provenance
  std::vector<std::string> gaps;
  std::vector<std::string> notes;
  double pstar = 0.05;
};

// Missing families produce a partial report with the reasons listed in gaps.
CharacterizationReport characterize(const Dataset& d, const CharacterizationOptions& opts = {});

// MLE profiles through `model` using default grids.
std::vector<LikelihoodProfile> default_profiles(const GatesetModel& model, const LikelihoodProblem& problem,
                                                double pstar, int points = 41);

nlohmann::json fit_to_json(const FitResult& f);
nlohmann::json phase_to_json(const PhaseEstimate& p);
nlohmann::json independent_to_json(const IndependentEstimates& e);
nlohmann::json report_to_json(const CharacterizationReport& r);
std::string report_summary(const CharacterizationReport& r);

// report.json, summary.txt and profile_<param>.csv under dir (created if needed).
void write_report(const CharacterizationReport& r, const std::filesystem::path& dir);

struct CzReport {
  std::optional<CzEstimate> estimate;
  std::optional<CzParams> truth;
  std::vector<std::string> gaps;
};

CzReport characterize_cz(const Dataset& d);
nlohmann::json cz_report_to_json(const CzReport& r);
std::string cz_summary(const CzReport& r);

}  // namespace gscal
