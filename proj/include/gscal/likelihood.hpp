#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "gscal/dataset.hpp"
#include "gscal/model.hpp"
#include "gscal/optimize.hpp"

namespace gscal {

inline constexpr double kLikelihoodProbabilityFloor = 1e-12;

// A dataset with its circuits compiled once, for repeated likelihood
// evaluation under different models.
class LikelihoodProblem {
 public:
  // Throws CircuitError for ids that do not resolve.
  explicit LikelihoodProblem(const Dataset& d);

  std::size_t size() const { return circuits_.size(); }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::vector<Circuit>& circuits() const { return circuits_; }
  const std::vector<double>& shots() const { return shots_; }
  const std::vector<double>& zeros() const { return zeros_; }
  bool needs_cz() const { return needs_cz_; }

  // Outcome-0 probability of every circuit under `model`, unclamped.
  std::vector<double> probabilities(const GatesetModel& model) const;
  double log_likelihood(const GatesetModel& model) const;

 private:
  std::vector<std::string> ids_;
  std::vector<Circuit> circuits_;
  std::vector<double> shots_;
  std::vector<double> zeros_;
  bool needs_cz_ = false;
};

// sum_i k_i log p_i + (n_i - k_i) log(1 - p_i), p_i clamped to [1e-12, 1 - 1e-12].
double log_likelihood(const GatesetModel& model, const Dataset& d);

struct MleResult {
  GatesetModel model;
  double log_likelihood = 0.0;
  double initial_log_likelihood = 0.0;
  int evaluations = 0;
  bool converged = false;
  // Parameters that ended within 1e-9 of an estimation bound, in kAllParams order.
  std::vector<Param> at_bound;
};

// Bounded simplex search over the six one-qubit parameters. CZ parameters, if
// present, are held fixed. Never returns a model worse than `init`.
MleResult maximize_likelihood(const GatesetModel& init, const LikelihoodProblem& problem,
                              const NelderMeadOptions& opts = {});
MleResult maximize_likelihood(const GatesetModel& init, const Dataset& d, const NelderMeadOptions& opts = {});

struct LikelihoodProfile {
  Param param = Param::Epsilon;
  double pstar = 0.05;
  double center = 0.0;  // the parameter value of the model the slice runs through
  std::vector<double> grid;
  std::vector<double> log_likelihood;
  double max_log_likelihood = 0.0;
  double threshold = 0.0;  // log L* = log L_max - log(1/p* - 1)
  double lower = 0.0;
  double upper = 0.0;
  bool lower_truncated = false;  // the interval reaches the grid edge
  bool upper_truncated = false;

  bool contains(double value) const { return value >= lower && value <= upper; }
  bool above_threshold(std::size_t i) const { return log_likelihood[i] >= threshold; }
};

// log(1/p* - 1); log 19 at p* = 0.05. Throws std::invalid_argument unless 0 < p* < 0.5.
double profile_threshold_drop(double pstar);

// Slice through `model` varying only `param`. The grid must be strictly
// increasing and span the model's value. Throws std::invalid_argument otherwise.
LikelihoodProfile likelihood_profile(const GatesetModel& model, const LikelihoodProblem& problem, Param param,
                                     std::vector<double> grid, double pstar = 0.05);
LikelihoodProfile likelihood_profile(const GatesetModel& model, const Dataset& d, Param param,
                                     std::vector<double> grid, double pstar = 0.05);

// Standard error of `param` from the curvature of the slice log-likelihood at
// the model. Returns 0 when the slice is not locally concave.
double slice_standard_error(const GatesetModel& model, const LikelihoodProblem& problem, Param param);

// `points` values over center +- max(5 se, 0.01), clipped to the estimation bounds.
std::vector<double> default_profile_grid(Param param, double center, double se, int points = 41);

nlohmann::json profile_to_json(const LikelihoodProfile& p);
// Columns param_value, log_likelihood, above_threshold.
std::string profile_to_csv(const LikelihoodProfile& p);

}  // namespace gscal
