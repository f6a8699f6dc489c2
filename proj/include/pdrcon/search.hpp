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

#ifndef PDRCON_SEARCH_HPP_
#define PDRCON_SEARCH_HPP_

#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>
#include <vector>

#include "pdrcon/lattice.hpp"
#include "pdrcon/rcon.hpp"

namespace pdrcon {

struct SearchConfig {
  double alpha = 0.05;  // acceptance level for the likelihood ratio test
  int max_steps = 1000;
  int jobs = 1;         // max concurrent candidate fits
  FitOptions fit;
};

/// One fitted candidate. rule/layer/provenance describe the move that turns
/// the step's parent into this graph. A fit that failed or did not converge
/// is recorded and treated as rejected. For candidates obtained as a meet,
/// `source` holds the accepted model of the previous step they derive from.
struct CandidateFit {
  Pdcg graph;
  Rule rule;
  Layer layer;
  Provenance provenance;
  FitResult fit;
  bool accepted = false;
  bool fit_failed = false;
  std::string error;
  std::optional<Pdcg> source;
};

struct SearchStep {
  int index = 0;
  Pdcg parent;  // model whose candidate submodels are fitted in this step
  std::vector<CandidateFit> candidates;
  /// Best accepted candidate of this step (largest p-value, deterministic
  /// tie-break on rule tag then provenance); absent when nothing is accepted.
  std::optional<Pdcg> selected;
};

struct SearchTrace {
  std::vector<SearchStep> steps;
  std::size_t models_fitted = 0;
  double wall_seconds = 0.0;
};

struct SearchResult {
  Pdcg model;
  SearchTrace trace;
};

/// Coherent stepwise backward elimination over the twin lattice. Starts from
/// the saturated model; the first step fits the upper-layer candidates and,
/// only for every rejected edge merge, the two single-edge removals below it.
/// Each later step promotes the best accepted model, adjusts the candidate
/// set (drops the mirror removal after a one-sided edge removal, adds the
/// joint pair removal after an accepted edge merge) and refits the twin meets
/// of the remaining candidates with the new best model. Stops when no
/// candidate is accepted or after max_steps fitting rounds.
SearchResult coherent_backward_search(const SampleMoments& moments,
                                      const SearchConfig& config);

/// Baseline without the twin-lattice machinery: every step fits all covering
/// submodels of the current best model, skipping only submodels of some
/// previously rejected model. Acceptance and best-model rules are identical
/// to the coherent procedure.
SearchResult naive_backward_search(const SampleMoments& moments,
                                   const SearchConfig& config);

struct CoherenceViolation {
  std::string description;
};

/// Diagnostic scan of a trace: reports every accepted model that is a
/// submodel of some rejected fitted model, and every lower-layer candidate
/// fitted in a step where the edge merge for the same edge was accepted.
std::vector<CoherenceViolation> verify_coherence(const SearchTrace& trace);

/// Trace serialization; timing totals can be omitted to compare runs.
nlohmann::ordered_json trace_to_json(const SearchResult& result,
                                     const SearchConfig& config,
                                     const std::string& procedure,
                                     bool include_timing = true);

}  // namespace pdrcon

#endif  // PDRCON_SEARCH_HPP_
