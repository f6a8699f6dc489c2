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

#ifndef PDRCON_SIMBENCH_HPP_
#define PDRCON_SIMBENCH_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>
#include <vector>

#include "pdrcon/pdcg.hpp"
#include "pdrcon/rng.hpp"
#include "pdrcon/search.hpp"

namespace pdrcon {

/// One synthetic-data scenario: the structure counts of the generating graph
/// plus sampling parameters. The counts pin |E| (or a target density from
/// which |E| is derived), the number of edges joining twin vertices, the
/// number of left edges whose twin is present, and how many of those stay
/// atomic; atomic_left fixes the number of unmerged left vertices.
struct ScenarioSpec {
  std::string name = "scenario";
  int p = 0;
  int n = 100;
  int replicates = 0;
  std::uint64_t seed = 0;

  int edges = -1;         // |E|; when negative, derived from density
  double density = -1.0;  // |E| / #all pairs
  int twin_edges = 0;     // edges joining a vertex to its twin
  int mirrored_pairs = 0; // left edges whose twin edge is present
  int atomic_pairs = 0;   // mirrored pairs kept atomic
  int atomic_left = 0;    // left vertices kept atomic

  double alpha = 0.05;
  int max_steps = 1000;

  int resolved_edges() const;
};

/// Parses one scenario object; unknown fields are rejected so that typos in
/// spec files surface as errors.
ScenarioSpec scenario_from_json(const nlohmann::json& j);

/// Reads a spec file holding either a single scenario object or
/// {"seed": ..., "scenarios": [...]} where the top-level seed is the default.
std::vector<ScenarioSpec> scenarios_from_file(const std::string& path);

/// Draws a graph with exactly the structure counts of the spec. Twin classes
/// are placed first, which guarantees both members of each mirrored pair are
/// present; remaining edges are filled in without creating further mirrored
/// pairs. Throws std::invalid_argument when the counts are infeasible.
Pdcg random_pdcg(const ScenarioSpec& spec, Rng& rng);

Eigen::MatrixXd equicorrelation(int p, double rho);

/// Concentration matrix adapted to g: the model is fitted by maximum
/// likelihood to the equicorrelation matrix (unit diagonal, 0.5 off the
/// diagonal) with a nominal sample size of 100. When that fit fails the
/// off-diagonal value is lowered to 0.45 once before giving up.
Eigen::MatrixXd concentration_for(const Pdcg& g);

/// n i.i.d. rows from the zero-mean Gaussian with concentration theta, via
/// the Cholesky factor of its inverse applied to seeded standard normals.
Eigen::MatrixXd sample_gaussian(const Eigen::MatrixXd& theta, int n,
                                std::uint64_t seed);

/// Confusion counts and rates of a selected graph against the truth. Edge
/// rates use single edges; symmetry rates use the edge twin-pairing classes,
/// with all possible mirrored pairs as the universe. Rates are percentages;
/// a 0/0 rate is absent rather than zero.
struct SelectionScores {
  int true_positive_edges = 0;
  int selected_edges = 0;
  int truth_edges = 0;
  int true_negative_edges = 0;
  int truth_missing_edges = 0;

  int true_positive_pairs = 0;
  int selected_pairs = 0;
  int truth_pairs = 0;
  int true_negative_pairs = 0;
  int truth_missing_pairs = 0;

  std::optional<double> eppv, etpr, etnr;
  std::optional<double> sppv, stpr, stnr;
};

SelectionScores score_selection(const Pdcg& selected, const Pdcg& truth);

struct ReplicateResult {
  int replicate = 0;
  std::string procedure;
  bool failed = false;
  std::string error;
  SelectionScores scores;
  std::size_t fitted_models = 0;
  double seconds = 0.0;
};

struct ProcedureSummary {
  std::string procedure;
  int replicates_ok = 0;
  double edges_mean = 0.0, edges_sd = 0.0;
  double pairs_mean = 0.0, pairs_sd = 0.0;
  std::optional<double> eppv, etpr, etnr, sppv, stpr, stnr;
  double models_mean = 0.0;
  double seconds_mean = 0.0;
  double seconds_total = 0.0;
};

struct ScenarioReport {
  ScenarioSpec spec;
  std::vector<ReplicateResult> replicates;
  std::vector<ProcedureSummary> summaries;
};

struct BenchmarkReport {
  std::vector<ScenarioReport> scenarios;
};

/// Runs every scenario: per replicate a fresh graph, concentration matrix
/// and dataset are generated from the replicate's derived seed, each
/// requested procedure runs on the same data, and the selections are scored.
/// Per-replicate failures are recorded and the run continues.
BenchmarkReport run_benchmark(const std::vector<ScenarioSpec>& scenarios,
                              const std::vector<std::string>& procedures,
                              int jobs);

/// CSV table with one row per scenario and procedure; absent rates print NA.
std::string benchmark_csv(const BenchmarkReport& report);

nlohmann::ordered_json benchmark_json(const BenchmarkReport& report);

}  // namespace pdrcon

#endif  // PDRCON_SIMBENCH_HPP_
