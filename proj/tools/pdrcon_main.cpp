// Copyright 2026 the pdrcon authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <random>
#include <thread>

#include "pdrcon/csv.hpp"
#include "pdrcon/lattice.hpp"
#include "pdrcon/manifest.hpp"
#include "pdrcon/model_io.hpp"
#include "pdrcon/rcon.hpp"
#include "pdrcon/search.hpp"
#include "pdrcon/simbench.hpp"

namespace {

using namespace pdrcon;

double env_alpha() {
  if (const char* raw = std::getenv("PDRCON_ALPHA")) {
    return std::stod(raw);
  }
  return 0.05;
}

int env_jobs() {
  if (const char* raw = std::getenv("PDRCON_JOBS")) {
    return std::max(1, std::atoi(raw));
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::uint64_t entropy_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << text;
}

RunManifest make_manifest(const std::string& command) {
  RunManifest m;
  m.command = command;
  m.created_utc = utc_timestamp();
  return m;
}

SampleMoments ingest_moments(const std::string& data_path,
                             const std::string& cov_path, double n_override,
                             bool divisor_n, RunManifest& manifest) {
  if (data_path.empty() == cov_path.empty()) {
    throw std::invalid_argument("exactly one of --data or --cov is required");
  }
  if (!data_path.empty()) {
    manifest.add_input(data_path);
    const Eigen::MatrixXd data = read_matrix_csv(data_path);
    const double n =
        n_override > 0 ? n_override : static_cast<double>(data.rows());
    return SampleMoments(sample_covariance(data, divisor_n), n);
  }
  manifest.add_input(cov_path);
  if (n_override <= 0) {
    throw std::invalid_argument("--n is required with --cov");
  }
  return SampleMoments(read_matrix_csv(cov_path), n_override);
}

int run(int argc, char** argv) {
  CLI::App app{"Structure learning of Gaussian graphical models for paired "
               "data over the twin lattice"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  // count
  auto* count_cmd =
      app.add_subcommand("count", "Print the exact number of models");
  int count_p = 0;
  count_cmd->add_option("-p,--p", count_p, "number of variables (even)")
      ->required();

  // convert
  auto* convert_cmd = app.add_subcommand(
      "convert", "Canonicalize a model file; optionally emit DOT or classes");
  std::string convert_model, convert_out, convert_dot;
  bool convert_classes = false;
  convert_cmd->add_option("model", convert_model, "model JSON file")
      ->required();
  convert_cmd->add_option("-o,--out", convert_out, "canonical JSON output");
  convert_cmd->add_option("--dot", convert_dot, "DOT output path");
  convert_cmd->add_flag("--classes", convert_classes,
                        "print the colour classes");

  // neighbours
  auto* nb_cmd = app.add_subcommand(
      "neighbours", "List the covering submodels of a model");
  std::string nb_model, nb_layer = "all", nb_dot;
  nb_cmd->add_option("model", nb_model, "model JSON file")->required();
  nb_cmd->add_option("--layer", nb_layer, "filter: upper|lower|all")
      ->check(CLI::IsMember({"upper", "lower", "all"}));
  nb_cmd->add_option("--dot", nb_dot, "two-row Hasse fragment DOT output");

  // fit
  auto* fit_cmd = app.add_subcommand("fit", "Fit one model by maximum "
                                            "likelihood and test it");
  std::string fit_model, fit_data, fit_cov, fit_out;
  double fit_n = 0, fit_alpha = env_alpha();
  std::string fit_divisor = "n";
  fit_cmd->add_option("model", fit_model, "model JSON file")->required();
  fit_cmd->add_option("--data", fit_data, "n x p data CSV");
  fit_cmd->add_option("--cov", fit_cov, "p x p covariance CSV");
  fit_cmd->add_option("--n", fit_n, "sample size (required with --cov)");
  fit_cmd->add_option("--alpha", fit_alpha, "acceptance level");
  fit_cmd->add_option("--divisor", fit_divisor, "covariance divisor: n|n-1")
      ->check(CLI::IsMember({"n", "n-1"}));
  fit_cmd->add_option("-o,--out", fit_out, "fit report JSON output");

  // select
  auto* sel_cmd = app.add_subcommand(
      "select", "Stepwise backward model selection");
  std::string sel_data, sel_cov, sel_proc = "coherent";
  std::string sel_model_out, sel_trace_out, sel_dot_out;
  std::string sel_divisor = "n";
  double sel_n = 0, sel_alpha = env_alpha();
  int sel_steps = 1000, sel_jobs = env_jobs();
  sel_cmd->add_option("--data", sel_data, "n x p data CSV");
  sel_cmd->add_option("--cov", sel_cov, "p x p covariance CSV");
  sel_cmd->add_option("--n", sel_n, "sample size (required with --cov)");
  sel_cmd->add_option("--procedure", sel_proc, "coherent|naive")
      ->check(CLI::IsMember({"coherent", "naive"}));
  sel_cmd->add_option("--alpha", sel_alpha, "acceptance level");
  sel_cmd->add_option("--max-steps", sel_steps, "maximum number of steps");
  sel_cmd->add_option("-j,--jobs", sel_jobs, "max concurrent candidate fits");
  sel_cmd->add_option("--divisor", sel_divisor, "covariance divisor: n|n-1")
      ->check(CLI::IsMember({"n", "n-1"}));
  sel_cmd->add_option("--model-out", sel_model_out, "selected model JSON");
  sel_cmd->add_option("--trace", sel_trace_out, "search trace JSON");
  sel_cmd->add_option("--dot", sel_dot_out, "selected model DOT");

  // simulate
  auto* sim_cmd = app.add_subcommand(
      "simulate", "Generate a synthetic dataset from a scenario or model");
  std::string sim_spec, sim_scenario, sim_model, sim_outdir = ".";
  int sim_n = 0;
  std::uint64_t sim_seed = 0;
  bool sim_seed_set = false;
  sim_cmd->add_option("--spec", sim_spec, "scenario spec JSON file");
  sim_cmd->add_option("--scenario", sim_scenario,
                      "scenario name when the spec holds several");
  sim_cmd->add_option("--model", sim_model, "generate from this model file");
  sim_cmd->add_option("--n", sim_n, "sample size override");
  sim_cmd->add_option("--seed", sim_seed, "master seed")
      ->each([&](const std::string&) { sim_seed_set = true; });
  sim_cmd->add_option("--out-dir", sim_outdir, "output directory");

  // bench
  auto* bench_cmd = app.add_subcommand(
      "bench", "Run the synthetic benchmark for the selection procedures");
  std::string bench_spec, bench_prefix = "bench";
  std::vector<std::string> bench_procs{"coherent", "naive"};
  int bench_jobs = env_jobs();
  std::uint64_t bench_seed = 0;
  bool bench_seed_set = false;
  bench_cmd->add_option("--spec", bench_spec, "scenario spec JSON file")
      ->required();
  bench_cmd->add_option("--procedures", bench_procs,
                        "procedures to run (coherent naive)");
  bench_cmd->add_option("-j,--jobs", bench_jobs, "max concurrent fits");
  bench_cmd->add_option("--seed", bench_seed, "override the spec seeds")
      ->each([&](const std::string&) { bench_seed_set = true; });
  bench_cmd->add_option("--out-prefix", bench_prefix,
                        "prefix for <prefix>.csv and <prefix>.json");

  CLI11_PARSE(app, argc, argv);

  if (count_cmd->parsed()) {
    std::cout << count_models(count_p) << "\n";
    return 0;
  }

  if (convert_cmd->parsed()) {
    const Pdcg g = read_model_file(convert_model);
    if (convert_classes) {
      const ColourClasses cc = to_colour_classes(g);
      std::cout << "vertex classes:\n";
      for (const auto& cls : cc.vertex_classes) {
        std::cout << "  {";
        for (std::size_t i = 0; i < cls.size(); ++i) {
          std::cout << (i ? "," : "") << cls[i];
        }
        std::cout << "}\n";
      }
      std::cout << "edge classes:\n";
      for (const auto& cls : cc.edge_classes) {
        std::cout << "  {";
        for (std::size_t i = 0; i < cls.size(); ++i) {
          std::cout << (i ? "," : "") << "(" << cls[i].first << ","
                    << cls[i].second << ")";
        }
        std::cout << "}\n";
      }
    }
    if (!convert_dot.empty()) write_text(convert_dot, model_to_dot(g));
    if (!convert_out.empty()) {
      write_model_file(g, convert_out);
    } else if (!convert_classes && convert_dot.empty()) {
      std::cout << model_to_json_text(g);
    }
    return 0;
  }

  if (nb_cmd->parsed()) {
    const Pdcg g = read_model_file(nb_model);
    const std::vector<NeighbourRecord> records = neighbour_submodels(g);
    int shown = 0;
    std::cout << "rule\tlayer\tprovenance\n";
    for (const auto& rec : records) {
      if (nb_layer != "all" && layer_tag(rec.layer) != nb_layer) continue;
      std::cout << rule_tag(rec.rule) << "\t" << layer_tag(rec.layer) << "\t"
                << provenance_str(rec.provenance) << "\n";
      ++shown;
    }
    std::cout << "# " << shown << " neighbours\n";
    if (!nb_dot.empty()) write_text(nb_dot, hasse_fragment_dot(g, records));
    return 0;
  }

  if (fit_cmd->parsed()) {
    RunManifest manifest = make_manifest("fit");
    manifest.add_input(fit_model);
    const Pdcg g = read_model_file(fit_model);
    const SampleMoments moments = ingest_moments(
        fit_data, fit_cov, fit_n, fit_divisor == "n", manifest);
    manifest.config = {{"alpha", fit_alpha}, {"divisor", fit_divisor}};

    const FitResult fit = fit_mle(design_from_pdcg(g), moments);
    const bool accepted = is_accepted(fit, fit_alpha);
    std::cout << "df " << fit.df << "\ndeviance " << fit.deviance
              << "\np_value " << fit.p_value << "\nconverged "
              << (fit.converged ? "yes" : "no") << "\naccepted "
              << (accepted ? "yes" : "no") << "\n";
    if (!fit_out.empty()) {
      nlohmann::ordered_json j;
      j["manifest"] = manifest.to_json();
      j["model"] = model_to_json(g);
      j["fit"] = {{"df", fit.df},
                  {"deviance", fit.deviance},
                  {"loglik", fit.loglik},
                  {"p_value", fit.p_value},
                  {"iterations", fit.iterations},
                  {"converged", fit.converged},
                  {"max_residual", fit.max_residual},
                  {"alpha", fit_alpha},
                  {"accepted", accepted}};
      write_text(fit_out, j.dump(2) + "\n");
    }
    return fit.converged ? 0 : 1;
  }

  if (sel_cmd->parsed()) {
    RunManifest manifest = make_manifest("select");
    const SampleMoments moments = ingest_moments(
        sel_data, sel_cov, sel_n, sel_divisor == "n", manifest);
    SearchConfig config;
    config.alpha = sel_alpha;
    config.max_steps = sel_steps;
    config.jobs = sel_jobs;
    manifest.config = {{"alpha", sel_alpha},
                       {"max_steps", sel_steps},
                       {"jobs", sel_jobs},
                       {"procedure", sel_proc},
                       {"divisor", sel_divisor}};

    const SearchResult result =
        sel_proc == "coherent" ? coherent_backward_search(moments, config)
                               : naive_backward_search(moments, config);
    const FitResult fit = fit_mle(design_from_pdcg(result.model), moments);
    std::cout << "selected model: " << result.model.edges().size()
              << " edges, " << result.model.merged_pairs().size()
              << " edge twin classes, " << result.model.merged_left().size()
              << " vertex twin classes\n";
    std::cout << "df " << fit.df << ", deviance " << fit.deviance
              << ", p_value " << fit.p_value << "\n";
    std::cout << "fitted models " << result.trace.models_fitted << ", steps "
              << result.trace.steps.size() << ", seconds "
              << result.trace.wall_seconds << "\n";
    if (!sel_model_out.empty()) write_model_file(result.model, sel_model_out);
    if (!sel_dot_out.empty()) {
      write_text(sel_dot_out, model_to_dot(result.model));
    }
    if (!sel_trace_out.empty()) {
      nlohmann::ordered_json j = trace_to_json(result, config, sel_proc);
      j["manifest"] = manifest.to_json();
      write_text(sel_trace_out, j.dump(2) + "\n");
    }
    return 0;
  }

  if (sim_cmd->parsed()) {
    RunManifest manifest = make_manifest("simulate");
    if (!sim_seed_set) sim_seed = entropy_seed();
    manifest.seed = sim_seed;
    std::filesystem::create_directories(sim_outdir);

    Rng rng(sim_seed);
    std::optional<Pdcg> truth;
    int n = sim_n;
    if (!sim_spec.empty()) {
      manifest.add_input(sim_spec);
      const auto scenarios = scenarios_from_file(sim_spec);
      const ScenarioSpec* chosen = nullptr;
      for (const auto& s : scenarios) {
        if (sim_scenario.empty() || s.name == sim_scenario) {
          chosen = &s;
          break;
        }
      }
      if (!chosen) {
        throw std::invalid_argument("scenario '" + sim_scenario +
                                    "' not found in " + sim_spec);
      }
      truth = random_pdcg(*chosen, rng);
      if (n <= 0) n = chosen->n;
    } else if (!sim_model.empty()) {
      manifest.add_input(sim_model);
      truth = read_model_file(sim_model);
    } else {
      throw std::invalid_argument("one of --spec or --model is required");
    }
    if (n <= 0) n = 100;
    manifest.config = {{"n", n}};

    const Eigen::MatrixXd theta = concentration_for(*truth);
    const Eigen::MatrixXd data = sample_gaussian(theta, n, rng.next_u64());
    const auto dir = std::filesystem::path(sim_outdir);
    write_model_file(*truth, (dir / "model.json").string());
    write_matrix_csv(theta, (dir / "theta.csv").string());
    write_matrix_csv(data, (dir / "data.csv").string());
    write_text((dir / "manifest.json").string(),
               manifest.to_json().dump(2) + "\n");
    std::cout << "wrote model.json, theta.csv, data.csv, manifest.json to "
              << sim_outdir << " (seed " << sim_seed << ")\n";
    return 0;
  }

  if (bench_cmd->parsed()) {
    RunManifest manifest = make_manifest("bench");
    manifest.add_input(bench_spec);
    std::vector<ScenarioSpec> scenarios = scenarios_from_file(bench_spec);
    if (bench_seed_set) {
      for (auto& s : scenarios) s.seed = bench_seed;
      manifest.seed = bench_seed;
    }
    manifest.config = {{"jobs", bench_jobs}, {"procedures", bench_procs}};

    const BenchmarkReport report =
        run_benchmark(scenarios, bench_procs, bench_jobs);
    const std::string csv = benchmark_csv(report);
    std::cout << csv;
    write_text(bench_prefix + ".csv",
               "# manifest: " + manifest.to_json().dump() + "\n" + csv);
    nlohmann::ordered_json j;
    j["manifest"] = manifest.to_json();
    j["report"] = benchmark_json(report);
    write_text(bench_prefix + ".json", j.dump(2) + "\n");
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
