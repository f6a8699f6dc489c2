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

#include "pdrcon/search.hpp"

#include <atomic>
#include <cassert>
#include <chrono>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <thread>

#include "pdrcon/model_io.hpp"

namespace pdrcon {

namespace {

struct FitOutcome {
  FitResult fit;
  bool failed = false;
  std::string error;
};

// Fits every graph, possibly concurrently; results are returned in input
// order so decisions do not depend on scheduling.
std::vector<FitOutcome> fit_all(const std::vector<Pdcg>& graphs,
                                const SampleMoments& moments,
                                const FitOptions& opts, int jobs) {
  std::vector<FitOutcome> out(graphs.size());
  auto fit_one = [&](std::size_t i) {
    try {
      out[i].fit = fit_mle(design_from_pdcg(graphs[i]), moments, opts);
    } catch (const std::exception& e) {
      out[i].failed = true;
      out[i].error = e.what();
    }
  };
  if (jobs <= 1 || graphs.size() <= 1) {
    for (std::size_t i = 0; i < graphs.size(); ++i) fit_one(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  const int n_threads =
      std::min<std::size_t>(static_cast<std::size_t>(jobs), graphs.size());
  std::vector<std::thread> workers;
  workers.reserve(n_threads);
  for (int t = 0; t < n_threads; ++t) {
    workers.emplace_back([&]() {
      for (std::size_t i = next.fetch_add(1); i < graphs.size();
           i = next.fetch_add(1)) {
        fit_one(i);
      }
    });
  }
  for (auto& w : workers) w.join();
  return out;
}

CandidateFit make_candidate(Pdcg graph, const NeighbourRecord& rec,
                            FitOutcome outcome, double alpha,
                            std::optional<Pdcg> source = std::nullopt) {
  CandidateFit c{std::move(graph), rec.rule,      rec.layer,
                 rec.provenance,   std::move(outcome.fit), false,
                 outcome.failed,   std::move(outcome.error),
                 std::move(source)};
  c.accepted = !c.fit_failed && is_accepted(c.fit, alpha);
  return c;
}

bool provenance_less(const Provenance& a, const Provenance& b) {
  if (a.index() != b.index()) return a.index() < b.index();
  if (std::holds_alternative<Vertex>(a)) {
    return std::get<Vertex>(a) < std::get<Vertex>(b);
  }
  return std::get<Edge>(a) < std::get<Edge>(b);
}

// Largest p-value wins; ties break on the rule tag, then on provenance.
std::size_t best_index(const std::vector<CandidateFit>& accepted) {
  assert(!accepted.empty());
  std::size_t best = 0;
  for (std::size_t i = 1; i < accepted.size(); ++i) {
    const CandidateFit& a = accepted[i];
    const CandidateFit& b = accepted[best];
    if (a.fit.p_value > b.fit.p_value ||
        (a.fit.p_value == b.fit.p_value &&
         (a.rule < b.rule ||
          (a.rule == b.rule && provenance_less(a.provenance, b.provenance))))) {
      best = i;
    }
  }
  return best;
}

std::vector<CandidateFit> accepted_of(const std::vector<CandidateFit>& cands) {
  std::vector<CandidateFit> out;
  for (const auto& c : cands) {
    if (c.accepted) out.push_back(c);
  }
  return out;
}

int even_dimension_of(const SampleMoments& moments) {
  const int p = static_cast<int>(moments.s.rows());
  if (p < 2 || p % 2 != 0) {
    throw std::invalid_argument(
        "paired-data models need an even number of variables, got " +
        std::to_string(p));
  }
  return p;
}

}  // namespace

SearchResult coherent_backward_search(const SampleMoments& moments,
                                      const SearchConfig& config) {
  if (config.max_steps < 1) {
    throw std::invalid_argument("max_steps must be at least 1");
  }
  const auto start_time = std::chrono::steady_clock::now();
  const int p = even_dimension_of(moments);
  const PairedVertexSet vset(p);
  const EdgeSetPartition part = partition_edges(vset);

  Pdcg best = Pdcg::unit(p);
  SearchTrace trace;

  // First step: upper layer unconditionally, then for every rejected edge
  // merge the two single-edge removals below it.
  std::vector<NeighbourRecord> upper;
  for (Vertex v : vset.left()) {
    VertexSet ll = vset.left();
    ll.erase(v);
    upper.push_back({Pdcg(vset, part.all, std::move(ll), part.left),
                     Rule::merge_vertex_class, Layer::upper, v});
    const Edge link = make_edge(v, vset.twin(v));
    EdgeSet edges = part.all;
    edges.erase(link);
    upper.push_back({Pdcg(vset, std::move(edges), vset.left(), part.left),
                     Rule::drop_twin_link, Layer::upper, link});
  }
  for (const Edge& e : part.left) {
    EdgeSet ee = part.left;
    ee.erase(e);
    upper.push_back({Pdcg(vset, part.all, vset.left(), std::move(ee)),
                     Rule::merge_edge_class, Layer::upper, e});
  }

  std::vector<Pdcg> upper_graphs;
  upper_graphs.reserve(upper.size());
  for (const auto& r : upper) upper_graphs.push_back(r.graph);
  std::vector<FitOutcome> upper_fits =
      fit_all(upper_graphs, moments, config.fit, config.jobs);

  std::vector<NeighbourRecord> lower;
  for (std::size_t i = 0; i < upper.size(); ++i) {
    if (upper[i].rule != Rule::merge_edge_class) continue;
    const bool merge_accepted =
        !upper_fits[i].failed && is_accepted(upper_fits[i].fit, config.alpha);
    if (merge_accepted) continue;
    const Edge e = std::get<Edge>(upper[i].provenance);
    EdgeSet edges = part.all;
    edges.erase(e);
    EdgeSet ee = part.left;
    ee.erase(e);
    lower.push_back({Pdcg(vset, std::move(edges), vset.left(), ee),
                     Rule::drop_left_of_pair, Layer::lower, e});
    EdgeSet edges2 = part.all;
    edges2.erase(vset.twin(e));
    lower.push_back({Pdcg(vset, std::move(edges2), vset.left(), std::move(ee)),
                     Rule::drop_right_of_pair, Layer::lower, e});
  }
  std::vector<Pdcg> lower_graphs;
  lower_graphs.reserve(lower.size());
  for (const auto& r : lower) lower_graphs.push_back(r.graph);
  std::vector<FitOutcome> lower_fits =
      fit_all(lower_graphs, moments, config.fit, config.jobs);

  // Assemble the step in the canonical order: the vertex loop, then per
  // mirrored edge the merge followed by its single-edge removals.
  SearchStep step1{1, best, {}, std::nullopt};
  std::size_t lower_pos = 0;
  for (std::size_t i = 0; i < upper.size(); ++i) {
    if (upper[i].rule != Rule::merge_edge_class) {
      step1.candidates.push_back(make_candidate(
          upper[i].graph, upper[i], std::move(upper_fits[i]), config.alpha));
    }
  }
  for (std::size_t i = 0; i < upper.size(); ++i) {
    if (upper[i].rule != Rule::merge_edge_class) continue;
    step1.candidates.push_back(make_candidate(
        upper[i].graph, upper[i], std::move(upper_fits[i]), config.alpha));
    if (!step1.candidates.back().accepted) {
      for (int side = 0; side < 2 && lower_pos < lower.size(); ++side) {
        step1.candidates.push_back(
            make_candidate(lower[lower_pos].graph, lower[lower_pos],
                           std::move(lower_fits[lower_pos]), config.alpha));
        ++lower_pos;
      }
    }
  }
  trace.models_fitted += step1.candidates.size();
  trace.steps.push_back(std::move(step1));

  std::vector<CandidateFit> active = accepted_of(trace.steps.back().candidates);

  int k = 1;
  while (!active.empty() && k < config.max_steps) {
    // Promote the best accepted candidate.
    const std::size_t bi = best_index(active);
    const CandidateFit chosen = active[bi];
    const Pdcg parent = best;
    best = chosen.graph;
    trace.steps.back().selected = best;

    std::vector<CandidateFit> pool;
    pool.reserve(active.size());
    for (std::size_t i = 0; i < active.size(); ++i) {
      if (i != bi) pool.push_back(active[i]);
    }

    // Candidate-set adjustments keyed on how the best model arose from its
    // parent. After a one-sided removal of a mirrored edge, the opposite
    // removal must be dropped: accepting its meet with the new best would
    // remove the pair while the merged model for that edge stands rejected.
    if (chosen.rule == Rule::drop_left_of_pair ||
        chosen.rule == Rule::drop_right_of_pair) {
      const Edge e = std::get<Edge>(chosen.provenance);
      const Edge removed_other = chosen.rule == Rule::drop_left_of_pair
                                     ? parent.vertices().twin(e)
                                     : e;
      EdgeSet edges = parent.edges();
      edges.erase(removed_other);
      EdgeSet ee = parent.atomic_pairs();
      ee.erase(e);
      const Pdcg mirror(parent.vertices(), std::move(edges),
                        parent.atomic_left(), std::move(ee));
      std::erase_if(pool,
                    [&](const CandidateFit& c) { return c.graph == mirror; });
    } else if (chosen.rule == Rule::merge_edge_class) {
      // After an accepted merge the joint removal of the pair becomes a
      // covering submodel of the new best and enters the candidate set.
      const Edge e = std::get<Edge>(chosen.provenance);
      EdgeSet edges = parent.edges();
      edges.erase(e);
      edges.erase(parent.vertices().twin(e));
      EdgeSet ee = parent.atomic_pairs();
      ee.erase(e);
      CandidateFit extra = chosen;
      extra.graph = Pdcg(parent.vertices(), std::move(edges),
                         parent.atomic_left(), std::move(ee));
      pool.push_back(std::move(extra));
    }

    // Next candidate set: twin meets with the new best model.
    SearchStep step{k + 1, best, {}, std::nullopt};
    std::vector<Pdcg> meet_graphs;
    std::vector<NeighbourRecord> meet_records;
    std::vector<Pdcg> meet_sources;
    for (const auto& f : pool) {
      Pdcg m = twin_meet(f.graph, best);
      meet_records.push_back(classify_move(best, m));
      meet_sources.push_back(f.graph);
      meet_graphs.push_back(std::move(m));
    }
    std::vector<FitOutcome> fits =
        fit_all(meet_graphs, moments, config.fit, config.jobs);
    for (std::size_t i = 0; i < meet_graphs.size(); ++i) {
      step.candidates.push_back(
          make_candidate(meet_graphs[i], meet_records[i], std::move(fits[i]),
                         config.alpha, meet_sources[i]));
    }
    trace.models_fitted += step.candidates.size();
    trace.steps.push_back(std::move(step));
    active = accepted_of(trace.steps.back().candidates);
    ++k;
  }

  if (!active.empty()) {
    const std::size_t bi = best_index(active);
    best = active[bi].graph;
    trace.steps.back().selected = best;
  }

  trace.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                    start_time)
          .count();
  return {best, std::move(trace)};
}

SearchResult naive_backward_search(const SampleMoments& moments,
                                   const SearchConfig& config) {
  if (config.max_steps < 1) {
    throw std::invalid_argument("max_steps must be at least 1");
  }
  const auto start_time = std::chrono::steady_clock::now();
  const int p = even_dimension_of(moments);

  Pdcg best = Pdcg::unit(p);
  SearchTrace trace;
  std::vector<Pdcg> rejected;

  for (int k = 1; k <= config.max_steps; ++k) {
    const std::vector<NeighbourRecord> records = neighbour_submodels(best);

    // Descendants of previously rejected models are pruned without fitting.
    std::vector<const NeighbourRecord*> to_fit;
    for (const auto& rec : records) {
      bool pruned = false;
      for (const Pdcg& r : rejected) {
        if (submodel_leq(rec.graph, r)) {
          pruned = true;
          break;
        }
      }
      if (!pruned) to_fit.push_back(&rec);
    }

    std::vector<Pdcg> graphs;
    graphs.reserve(to_fit.size());
    for (const auto* rec : to_fit) graphs.push_back(rec->graph);
    std::vector<FitOutcome> fits =
        fit_all(graphs, moments, config.fit, config.jobs);

    SearchStep step{k, best, {}, std::nullopt};
    for (std::size_t i = 0; i < to_fit.size(); ++i) {
      step.candidates.push_back(make_candidate(
          to_fit[i]->graph, *to_fit[i], std::move(fits[i]), config.alpha));
    }
    trace.models_fitted += step.candidates.size();

    std::vector<CandidateFit> accepted = accepted_of(step.candidates);
    for (const auto& c : step.candidates) {
      if (!c.accepted) rejected.push_back(c.graph);
    }
    if (accepted.empty()) {
      trace.steps.push_back(std::move(step));
      break;
    }
    best = accepted[best_index(accepted)].graph;
    step.selected = best;
    trace.steps.push_back(std::move(step));
  }

  trace.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                    start_time)
          .count();
  return {best, std::move(trace)};
}

std::vector<CoherenceViolation> verify_coherence(const SearchTrace& trace) {
  std::vector<CoherenceViolation> out;

  struct Entry {
    const Pdcg* graph;
    int step;
  };
  std::vector<Entry> accepted, rejected;
  for (const auto& step : trace.steps) {
    for (const auto& c : step.candidates) {
      (c.accepted ? accepted : rejected).push_back({&c.graph, step.index});
    }
  }
  for (const auto& a : accepted) {
    for (const auto& r : rejected) {
      if (submodel_leq(*a.graph, *r.graph)) {
        out.push_back({"model accepted at step " + std::to_string(a.step) +
                       " is a submodel of a model rejected at step " +
                       std::to_string(r.step)});
      }
    }
  }

  for (const auto& step : trace.steps) {
    for (const auto& c : step.candidates) {
      if (c.layer != Layer::lower) continue;
      for (const auto& m : step.candidates) {
        if (m.rule == Rule::merge_edge_class && m.accepted &&
            m.provenance == c.provenance) {
          out.push_back(
              {"lower-layer candidate for edge " +
               provenance_str(c.provenance) + " was fitted at step " +
               std::to_string(step.index) +
               " although the edge merge for that edge was accepted"});
        }
      }
    }
  }
  return out;
}

nlohmann::ordered_json trace_to_json(const SearchResult& result,
                                     const SearchConfig& config,
                                     const std::string& procedure,
                                     bool include_timing) {
  nlohmann::ordered_json j;
  j["procedure"] = procedure;
  j["config"] = {{"alpha", config.alpha},
                 {"max_steps", config.max_steps},
                 {"jobs", config.jobs}};
  auto steps = nlohmann::ordered_json::array();
  for (const auto& step : result.trace.steps) {
    nlohmann::ordered_json js;
    js["step"] = step.index;
    js["parent"] = model_to_json(step.parent);
    auto cands = nlohmann::ordered_json::array();
    for (const auto& c : step.candidates) {
      nlohmann::ordered_json jc;
      jc["rule"] = rule_tag(c.rule);
      jc["layer"] = layer_tag(c.layer);
      jc["provenance"] = provenance_str(c.provenance);
      jc["df"] = c.fit.df;
      jc["deviance"] = c.fit.deviance;
      jc["p_value"] = c.fit.p_value;
      jc["converged"] = c.fit.converged;
      jc["accepted"] = c.accepted;
      if (c.fit_failed) jc["error"] = c.error;
      jc["model"] = model_to_json(c.graph);
      cands.push_back(std::move(jc));
    }
    js["candidates"] = std::move(cands);
    if (step.selected) {
      js["selected"] = model_to_json(*step.selected);
    } else {
      js["selected"] = nullptr;
    }
    steps.push_back(std::move(js));
  }
  j["steps"] = std::move(steps);
  j["selected_model"] = model_to_json(result.model);
  j["totals"]["fitted_models"] = result.trace.models_fitted;
  if (include_timing) {
    j["totals"]["wall_seconds"] = result.trace.wall_seconds;
  }
  return j;
}

}  // namespace pdrcon
