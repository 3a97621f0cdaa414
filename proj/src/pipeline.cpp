#include "gscal/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gscal/errors.hpp"
#include "gscal/protocols.hpp"

namespace gscal {
namespace {

void append(std::vector<PlannedCircuit>& plan, const std::vector<CircuitFamily>& fs, std::int64_t shots) {
  for (const auto& f : fs) plan.push_back({f, shots});
}

double clip(Param p, double v) {
  const auto b = estimation_bounds(p);
  return std::clamp(v, b.lower, b.upper);
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string describe(const std::exception& e) { return e.what(); }

}  // namespace

std::vector<PlannedCircuit> plan_circuits(const RunConfig& c) {
  std::vector<PlannedCircuit> plan;
  append(plan, decoherence_circuits(c.decoherence_depths), c.shots.decoherence);
  append(plan, rpe_circuits(c.rpe_max_exponent), c.shots.rpe);
  append(plan, readout_circuits(), c.shots.readout);
  return plan;
}

std::vector<PlannedCircuit> plan_cz_circuits(const RunConfig& c) {
  std::vector<PlannedCircuit> plan;
  append(plan, cz_phase_circuits(c.cz.phase_max_exponent), c.shots.cz);
  append(plan, cz_decay_circuits(c.cz.decay_depths), c.shots.cz);
  return plan;
}

Dataset simulate(const RunConfig& c) {
  c.validate();
  auto plan = plan_circuits(c);
  if (c.cz.enabled) {
    auto cz = plan_cz_circuits(c);
    plan.insert(plan.end(), cz.begin(), cz.end());
  }
  Dataset d = simulate_dataset(c.model, plan, c.seed);
  d.provenance = Provenance{c.seed, c.model};
  return d;
}

Dataset simulate_cz(const RunConfig& c) {
  c.validate();
  if (!c.model.cz) throw ConfigError("CZ simulation requires model.cz");
  Dataset d = simulate_dataset(c.model, plan_cz_circuits(c), c.seed);
  d.provenance = Provenance{c.seed, c.model};
  return d;
}

Dataset single_qubit_records(const Dataset& d) {
  Dataset out;
  for (const auto& r : d.records()) {
    if (resolve_circuit(r.circuit_id).circuit.qubit_count == 1) out.add(r);
  }
  out.provenance = d.provenance;
  return out;
}

std::optional<GatesetModel> IndependentEstimates::model() const {
  if (!decoherence || !rpe || !readout) return std::nullopt;
  GatesetModel m;
  m.epsilon = clip(Param::Epsilon, rpe->epsilon);
  m.theta = clip(Param::Theta, rpe->theta);
  m.p_x = clip(Param::PX, decoherence->params.p_x);
  m.p_z = clip(Param::PZ, decoherence->params.p_z);
  m.r_01 = clip(Param::R01, readout->r_01);
  m.r_10 = clip(Param::R10, readout->r_10);
  return m;
}

IndependentEstimates independent_estimates(const Dataset& d) {
  IndependentEstimates e;
  try {
    auto fit = [&](FamilyKind kind, const char* label) {
      const auto pts = pauli_signal_series(d, kind);
      try {
        return fit_exponential(pts);
      } catch (const IdentifiabilityError& ex) {
        e.notes.push_back(std::string("decoherence ") + label + ": " + describe(ex) + "; refit with offset 0");
      } catch (const NonConvergenceError& ex) {
        e.notes.push_back(std::string("decoherence ") + label + ": " + describe(ex) + "; refit with offset 0");
      }
      FitOptions pinned;
      pinned.min_range_in_se = 0.0;
      pinned.free_offset = false;
      return fit_exponential(pts, pinned);
    };
    DecoherenceEstimate est;
    est.fit_x = fit(FamilyKind::DecoherenceX, "X");
    est.fit_z = fit(FamilyKind::DecoherenceZ, "Z");
    est.params = decoherence_params(est.fit_x.rate, est.fit_z.rate);
    e.decoherence = est;
  } catch (const std::exception& ex) {
    e.gaps.push_back("decoherence: " + describe(ex));
  }
  try {
    e.rpe = rpe_extract(d);
  } catch (const std::exception& ex) {
    e.gaps.push_back("rpe: " + describe(ex));
  }
  try {
    e.readout = readout_extract(d);
  } catch (const std::exception& ex) {
    e.gaps.push_back("readout: " + describe(ex));
  }
  return e;
}

std::vector<LikelihoodProfile> default_profiles(const GatesetModel& model, const LikelihoodProblem& problem,
                                                double pstar, int points) {
  std::vector<LikelihoodProfile> out;
  for (Param p : kAllParams) {
    const double se = slice_standard_error(model, problem, p);
    out.push_back(likelihood_profile(model, problem, p, default_profile_grid(p, get_param(model, p), se, points),
                                     pstar));
  }
  return out;
}

CharacterizationReport characterize(const Dataset& full, const CharacterizationOptions& opts) {
  CharacterizationReport r;
  r.pstar = opts.pstar;
  const Dataset d = single_qubit_records(full);
  if (full.provenance && full.provenance->model) r.truth = full.provenance->model;
  r.independent = independent_estimates(d);
  r.gaps = r.independent.gaps;
  r.notes = r.independent.notes;
  r.independent_model = r.independent.model();
  if (!r.independent_model) {
    r.gaps.push_back("likelihood: skipped, needs decoherence, rpe and readout estimates");
    return r;
  }
  const LikelihoodProblem problem(d);
  r.mle = maximize_likelihood(*r.independent_model, problem, opts.optimizer);
  if (opts.profiles) r.profiles = default_profiles(r.mle->model, problem, opts.pstar, opts.profile_points);
  r.independent_violation = model_violation(*r.independent_model, problem);
  r.mle_violation = model_violation(r.mle->model, problem);
  return r;
}

nlohmann::json fit_to_json(const FitResult& f) {
  return {{"amplitude", f.amplitude}, {"rate", f.rate},       {"offset", f.offset},
          {"amplitude_se", f.amplitude_se}, {"rate_se", f.rate_se}, {"offset_se", f.offset_se},
          {"rss", f.rss},           {"chi2", f.chi2},       {"iterations", f.iterations}};
}

nlohmann::json phase_to_json(const PhaseEstimate& p) {
  return {{"angle", p.angle}, {"half_width", p.half_width}, {"last_depth", p.last_depth}, {"aborted", p.aborted}};
}

nlohmann::json independent_to_json(const IndependentEstimates& e) {
  nlohmann::json j = nlohmann::json::object();
  if (e.decoherence) {
    j["decoherence"] = {{"p_x", e.decoherence->params.p_x},
                        {"p_z", e.decoherence->params.p_z},
                        {"p_x_clamped", e.decoherence->params.p_x_clamped},
                        {"fit_x", fit_to_json(e.decoherence->fit_x)},
                        {"fit_z", fit_to_json(e.decoherence->fit_z)}};
  } else {
    j["decoherence"] = nullptr;
  }
  if (e.rpe) {
    j["rpe"] = {{"epsilon", e.rpe->epsilon},
                {"theta", e.rpe->theta},
                {"epsilon_half_width", e.rpe->epsilon_half_width},
                {"theta_half_width", e.rpe->theta_half_width},
                {"amplitude", phase_to_json(e.rpe->amplitude)},
                {"axis", phase_to_json(e.rpe->axis)}};
  } else {
    j["rpe"] = nullptr;
  }
  if (e.readout) {
    j["readout"] = {{"r_01", e.readout->r_01}, {"r_10", e.readout->r_10}};
  } else {
    j["readout"] = nullptr;
  }
  return j;
}

nlohmann::json report_to_json(const CharacterizationReport& r) {
  nlohmann::json j;
  j["pstar"] = r.pstar;
  j["gaps"] = r.gaps;
  j["notes"] = r.notes;
  j["independent"] = independent_to_json(r.independent);
  j["independent_model"] = r.independent_model ? model_to_json(*r.independent_model) : nlohmann::json(nullptr);
  if (r.mle) {
    nlohmann::json bounds = nlohmann::json::array();
    for (Param p : r.mle->at_bound) bounds.push_back(param_name(p));
    j["mle"] = {{"model", model_to_json(r.mle->model)},
                {"log_likelihood", r.mle->log_likelihood},
                {"initial_log_likelihood", r.mle->initial_log_likelihood},
                {"log_likelihood_increase", r.mle->log_likelihood - r.mle->initial_log_likelihood},
                {"evaluations", r.mle->evaluations},
                {"converged", r.mle->converged},
                {"at_bound", bounds}};
  } else {
    j["mle"] = nullptr;
  }
  j["profiles"] = nlohmann::json::array();
  for (const auto& p : r.profiles) j["profiles"].push_back(profile_to_json(p));
  nlohmann::json v = nlohmann::json::object();
  v["independent"] = r.independent_violation ? violation_to_json(*r.independent_violation) : nlohmann::json(nullptr);
  v["mle"] = r.mle_violation ? violation_to_json(*r.mle_violation) : nlohmann::json(nullptr);
  j["violation"] = v;
  j["truth"] = r.truth ? model_to_json(*r.truth) : nlohmann::json(nullptr);
  return j;
}

std::string report_summary(const CharacterizationReport& r) {
  std::ostringstream os;
  os << "Independent estimates\n";
  if (const auto& e = r.independent.decoherence) {
    os << "  p_z      " << fmt("%.5f", e->params.p_z) << "   (X decay rate " << fmt("%.6f", e->fit_x.rate) << ")\n";
    os << "  p_x      " << fmt("%.5f", e->params.p_x) << "   (Z decay rate " << fmt("%.6f", e->fit_z.rate) << ")"
       << (e->params.p_x_clamped ? "  clamped to 0" : "") << "\n";
  }
  if (const auto& e = r.independent.rpe) {
    os << "  epsilon  " << fmt("%.5f", e->epsilon) << " +- " << fmt("%.5f", e->epsilon_half_width) << "\n";
    os << "  theta    " << fmt("%.5f", e->theta) << " +- " << fmt("%.5f", e->theta_half_width) << "\n";
  }
  if (const auto& e = r.independent.readout) {
    os << "  r_01     " << fmt("%.5f", e->r_01) << "\n";
    os << "  r_10     " << fmt("%.5f", e->r_10) << "\n";
  }
  for (const auto& g : r.gaps) os << "  missing: " << g << "\n";
  for (const auto& n : r.notes) os << "  note: " << n << "\n";

  if (r.mle) {
    os << "\nLikelihood maximization\n";
    os << "  log-likelihood " << fmt("%.3f", r.mle->initial_log_likelihood) << " -> "
       << fmt("%.3f", r.mle->log_likelihood) << " (increase "
       << fmt("%.3f", r.mle->log_likelihood - r.mle->initial_log_likelihood) << ")\n";
    for (Param p : r.mle->at_bound) os << "  " << param_name(p) << " at its bound\n";
  }
  if (!r.profiles.empty()) {
    os << "\nLikelihood intervals (p* = " << r.pstar << ", L* = L_max / " << fmt("%.4g", 1.0 / r.pstar - 1.0)
       << ")\n";
    for (const auto& p : r.profiles) {
      os << "  " << param_name(p.param);
      for (std::size_t pad = param_name(p.param).size(); pad < 9; ++pad) os << ' ';
      os << "MLE " << fmt("%9.5f", p.center) << "  [" << fmt("%.5f", p.lower) << ", " << fmt("%.5f", p.upper)
         << "]";
      if (p.lower_truncated || p.upper_truncated) os << " (grid edge)";
      if (r.truth) {
        const double t = get_param(*r.truth, p.param);
        os << "  true " << fmt("%.5f", t) << (p.contains(t) ? " inside" : " outside");
      }
      os << "\n";
    }
  }
  auto violation_line = [&](const char* name, const std::optional<ViolationReport>& v) {
    if (!v) return;
    os << "  " << name << " delta " << fmt("%.4f", v->delta_hat) << ", mu " << fmt("%.4f", v->mu) << ", sigma "
       << fmt("%.4f", v->sigma) << ", k " << fmt("%.3f", v->k_hat) << ", bound " << fmt("%.4f", v->bound)
       << (v->rejected ? ", rejected" : ", not rejected") << "\n";
  };
  if (r.independent_violation || r.mle_violation) {
    os << "\nModel violation\n";
    violation_line("independent", r.independent_violation);
    violation_line("mle        ", r.mle_violation);
  }
  return os.str();
}

void write_report(const CharacterizationReport& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "report.json");
    out << report_to_json(r).dump(2) << "\n";
  }
  {
    std::ofstream out(dir / "summary.txt");
    out << report_summary(r);
  }
  for (const auto& p : r.profiles) {
    std::ofstream out(dir / ("profile_" + std::string(param_name(p.param)) + ".csv"));
    out << profile_to_csv(p);
  }
}

CzReport characterize_cz(const Dataset& d) {
  CzReport r;
  if (d.provenance && d.provenance->model && d.provenance->model->cz) r.truth = d.provenance->model->cz;
  try {
    r.estimate = cz_extract(d);
  } catch (const std::exception& ex) {
    r.gaps.push_back("cz: " + describe(ex));
  }
  return r;
}

nlohmann::json cz_report_to_json(const CzReport& r) {
  nlohmann::json j;
  j["gaps"] = r.gaps;
  if (r.estimate) {
    const auto& e = *r.estimate;
    j["estimate"] = {{"alpha", e.alpha},
                     {"beta", e.beta},
                     {"alpha_half_width", e.alpha_half_width},
                     {"beta_half_width", e.beta_half_width},
                     {"alpha_phase", phase_to_json(e.alpha_phase)},
                     {"beta_minus_alpha_phase", phase_to_json(e.beta_minus_alpha_phase)},
                     {"bell_fit", fit_to_json(e.bell_fit)},
                     {"plus_fit", fit_to_json(e.plus_fit)},
                     {"p_iz_plus_p_zi", e.sum_iz_zi},
                     {"p_iz_plus_p_zi_se", e.sum_iz_zi_se},
                     {"p_zi_plus_p_zz", e.sum_zi_zz},
                     {"p_zi_plus_p_zz_se", e.sum_zi_zz_se},
                     {"bell_flat", e.bell_flat},
                     {"plus_flat", e.plus_flat}};
  } else {
    j["estimate"] = nullptr;
  }
  if (r.truth) {
    j["truth"] = {{"alpha", r.truth->alpha}, {"beta", r.truth->beta}, {"p_iz", r.truth->p_iz},
                  {"p_zi", r.truth->p_zi},   {"p_zz", r.truth->p_zz}};
  } else {
    j["truth"] = nullptr;
  }
  return j;
}

std::string cz_summary(const CzReport& r) {
  std::ostringstream os;
  if (const auto& e = r.estimate) {
    os << "alpha          " << fmt("%.5f", e->alpha) << " +- " << fmt("%.5f", e->alpha_half_width) << "\n";
    os << "beta           " << fmt("%.5f", e->beta) << " +- " << fmt("%.5f", e->beta_half_width) << "\n";
    os << "p_IZ + p_ZI    " << fmt("%.5f", e->sum_iz_zi) << " +- " << fmt("%.5f", e->sum_iz_zi_se) << "\n";
    os << "p_ZI + p_ZZ    " << fmt("%.5f", e->sum_zi_zz) << " +- " << fmt("%.5f", e->sum_zi_zz_se) << "\n";
  }
  if (r.truth) {
    os << "true: alpha " << fmt("%.5f", r.truth->alpha) << ", beta " << fmt("%.5f", r.truth->beta)
       << ", p_IZ + p_ZI " << fmt("%.5f", r.truth->p_iz + r.truth->p_zi) << ", p_ZI + p_ZZ "
       << fmt("%.5f", r.truth->p_zi + r.truth->p_zz) << "\n";
  }
  for (const auto& g : r.gaps) os << "missing: " << g << "\n";
  return os.str();
}

}  // namespace gscal
