#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gscal/config.hpp"
#include "gscal/pipeline.hpp"

namespace fs = std::filesystem;
using namespace gscal;

namespace {

struct CommonArgs {
  std::string config;
  std::string dataset;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> shots;
  double pstar = 0.05;
};

RunConfig resolve_config(const CommonArgs& a) {
  RunConfig c = a.config.empty() ? RunConfig{} : load_config(a.config);
  if (a.seed) c.seed = *a.seed;
  if (a.shots) c.shots = ShotConfig{*a.shots, *a.shots, *a.shots, *a.shots};
  c.validate();
  return c;
}

Dataset load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset " + path);
  Dataset d = read_jsonl(in);
  d.validate();
  return d;
}

void write_dataset(const Dataset& d, const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_jsonl(d, out);
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

// The model to evaluate: the config's when one is given, otherwise the MLE
// started from the independent estimates.
GatesetModel model_for(const CommonArgs& a, const Dataset& d, const LikelihoodProblem& problem) {
  if (!a.config.empty()) return load_config(a.config).model;
  const auto est = independent_estimates(d);
  const auto init = est.model();
  if (!init) {
    std::string why;
    for (const auto& g : est.gaps) why += "\n  " + g;
    throw std::runtime_error("cannot build a model from this dataset:" + why);
  }
  return maximize_likelihood(*init, problem).model;
}

int cmd_simulate(const CommonArgs& a) {
  const RunConfig c = resolve_config(a);
  const Dataset d = simulate(c);
  const fs::path out = a.out.empty() ? fs::path(c.output_dir) / "dataset.jsonl" : fs::path(a.out);
  write_dataset(d, out);
  std::cout << "wrote " << d.size() << " records to " << out.string() << "\n";
  return 0;
}

int cmd_characterize(const CommonArgs& a) {
  const Dataset d = load_dataset(a.dataset);
  CharacterizationOptions opts;
  opts.pstar = a.pstar;
  const auto report = characterize(d, opts);
  const fs::path dir = a.out.empty() ? fs::path("out") : fs::path(a.out);
  write_report(report, dir);
  std::cout << report_summary(report);
  return 0;
}

int cmd_profile(const CommonArgs& a, const std::vector<std::string>& names) {
  const Dataset d = single_qubit_records(load_dataset(a.dataset));
  const LikelihoodProblem problem(d);
  const GatesetModel model = model_for(a, d, problem);
  std::vector<Param> params;
  for (const auto& n : names) params.push_back(param_from_name(n));
  if (params.empty()) params.assign(kAllParams.begin(), kAllParams.end());

  const fs::path dir = a.out.empty() ? fs::path("out") : fs::path(a.out);
  nlohmann::json all = nlohmann::json::array();
  for (Param p : params) {
    const double se = slice_standard_error(model, problem, p);
    const auto prof = likelihood_profile(model, problem, p, default_profile_grid(p, get_param(model, p), se), a.pstar);
    write_text(dir / ("profile_" + std::string(param_name(p)) + ".csv"), profile_to_csv(prof));
    all.push_back(profile_to_json(prof));
    std::cout << param_name(p) << ": " << prof.center << " [" << prof.lower << ", " << prof.upper << "]\n";
  }
  write_text(dir / "profiles.json", all.dump(2) + "\n");
  return 0;
}

int cmd_violation(const CommonArgs& a) {
  const Dataset d = single_qubit_records(load_dataset(a.dataset));
  const LikelihoodProblem problem(d);
  const GatesetModel model = model_for(a, d, problem);
  nlohmann::json j = violation_to_json(model_violation(model, problem));
  j["model"] = model_to_json(model);
  if (a.out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    write_text(a.out, j.dump(2) + "\n");
  }
  return 0;
}

int cmd_cz(const CommonArgs& a) {
  const fs::path dir = a.out.empty() ? fs::path("out") : fs::path(a.out);
  Dataset d;
  if (!a.dataset.empty()) {
    d = load_dataset(a.dataset);
  } else {
    RunConfig c = resolve_config(a);
    c.cz.enabled = true;
    d = simulate_cz(c);
    write_dataset(d, dir / "cz_dataset.jsonl");
  }
  const auto report = characterize_cz(d);
  write_text(dir / "cz_report.json", cz_report_to_json(report).dump(2) + "\n");
  std::cout << cz_summary(report);
  return report.estimate ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gateset characterization: simulate, estimate and test noise models"};
  app.require_subcommand(1);
  CommonArgs a;
  std::vector<std::string> params;

  auto add_common = [&](CLI::App* sub, bool need_dataset) {
    sub->add_option("--config", a.config, "JSON run configuration")->check(CLI::ExistingFile);
    auto* ds = sub->add_option("--dataset", a.dataset, "JSON-lines dataset")->check(CLI::ExistingFile);
    if (need_dataset) ds->required();
    sub->add_option("--out", a.out, "output path");
    sub->add_option("--seed", a.seed, "master seed (overrides the config)");
    sub->add_option("--shots", a.shots, "shots for every circuit (overrides the config)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--pstar", a.pstar, "likelihood interval error probability")
        ->check(CLI::Range(1e-9, 0.4999999));
  };

  auto* sim = app.add_subcommand("simulate", "sample a dataset from the configured model");
  add_common(sim, false);
  auto* chr = app.add_subcommand("characterize", "independent estimates, MLE, profiles and violation tests");
  add_common(chr, true);
  auto* prof = app.add_subcommand("profile", "likelihood profiles through a model");
  add_common(prof, true);
  prof->add_option("--param", params, "parameter(s) to profile (default: all six)");
  auto* vio = app.add_subcommand("violation", "model violation statistic");
  add_common(vio, true);
  auto* cz = app.add_subcommand("cz", "CZ phase and decay characterization");
  add_common(cz, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return cmd_simulate(a);
    if (chr->parsed()) return cmd_characterize(a);
    if (prof->parsed()) return cmd_profile(a, params);
    if (vio->parsed()) return cmd_violation(a);
    if (cz->parsed()) return cmd_cz(a);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
