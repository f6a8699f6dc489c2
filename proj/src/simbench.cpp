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

#include "pdrcon/simbench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>

#include "pdrcon/csv.hpp"
#include "pdrcon/lattice.hpp"
#include "pdrcon/rcon.hpp"

namespace pdrcon {

namespace {

double mean_of(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

double sd_of(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean_of(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

std::optional<double> mean_of_defined(
    const std::vector<std::optional<double>>& xs) {
  std::vector<double> defined;
  for (const auto& x : xs) {
    if (x) defined.push_back(*x);
  }
  if (defined.empty()) return std::nullopt;
  return mean_of(defined);
}

std::optional<double> rate_pct(int numerator, int denominator) {
  if (denominator == 0) return std::nullopt;
  return 100.0 * static_cast<double>(numerator) /
         static_cast<double>(denominator);
}

std::string format_rate(const std::optional<double>& r) {
  if (!r) return "NA";
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  os << *r;
  return os.str();
}

std::string format_fixed(double x, int digits) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << x;
  return os.str();
}

}  // namespace

int ScenarioSpec::resolved_edges() const {
  if (edges >= 0) return edges;
  if (density < 0.0 || density > 1.0) {
    throw std::invalid_argument("scenario '" + name +
                                "': either edges or density in [0,1] needed");
  }
  const int total = p * (p - 1) / 2;
  return static_cast<int>(std::lround(density * total));
}

ScenarioSpec scenario_from_json(const nlohmann::json& j) {
  if (!j.is_object()) {
    throw std::invalid_argument("scenario spec must be a JSON object");
  }
  static const std::set<std::string> known{
      "name",         "p",           "n",
      "replicates",   "seed",        "edges",
      "density",      "twin_edges",  "mirrored_pairs",
      "atomic_pairs", "atomic_left", "alpha",
      "max_steps"};
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!known.count(key)) {
      throw std::invalid_argument("scenario spec has unknown field '" + key +
                                  "'");
    }
  }
  ScenarioSpec s;
  auto get_int = [&](const char* field, int fallback) {
    if (!j.contains(field)) return fallback;
    if (!j[field].is_number_integer()) {
      throw std::invalid_argument(std::string("scenario field '") + field +
                                  "' must be an integer");
    }
    return j[field].get<int>();
  };
  s.name = j.value("name", std::string("scenario"));
  s.p = get_int("p", 0);
  s.n = get_int("n", 100);
  s.replicates = get_int("replicates", 0);
  if (j.contains("seed")) s.seed = j["seed"].get<std::uint64_t>();
  s.edges = get_int("edges", -1);
  if (j.contains("density")) s.density = j["density"].get<double>();
  s.twin_edges = get_int("twin_edges", 0);
  s.mirrored_pairs = get_int("mirrored_pairs", 0);
  s.atomic_pairs = get_int("atomic_pairs", 0);
  s.atomic_left = get_int("atomic_left", 0);
  if (j.contains("alpha")) s.alpha = j["alpha"].get<double>();
  s.max_steps = get_int("max_steps", 1000);

  if (s.p < 2 || s.p % 2 != 0) {
    throw std::invalid_argument("scenario field 'p' must be a positive even "
                                "integer");
  }
  if (s.replicates < 0) {
    throw std::invalid_argument("scenario field 'replicates' must be >= 0");
  }
  return s;
}

std::vector<ScenarioSpec> scenarios_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open spec file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("spec file " + path +
                                " is not valid JSON: " + e.what());
  }
  std::vector<ScenarioSpec> out;
  if (j.is_object() && j.contains("scenarios")) {
    for (const auto& item : j["scenarios"]) {
      ScenarioSpec s = scenario_from_json(item);
      if (!item.contains("seed") && j.contains("seed")) {
        s.seed = j["seed"].get<std::uint64_t>();
      }
      out.push_back(std::move(s));
    }
  } else {
    out.push_back(scenario_from_json(j));
  }
  return out;
}

Pdcg random_pdcg(const ScenarioSpec& spec, Rng& rng) {
  const PairedVertexSet vset(spec.p);
  const EdgeSetPartition part = partition_edges(vset);
  const int q = vset.half();
  const int max_pairs = static_cast<int>(part.left.size());
  const int n_edges = spec.resolved_edges();

  if (spec.atomic_left < 0 || spec.atomic_left > q) {
    throw std::invalid_argument("atomic_left must be between 0 and p/2");
  }
  if (spec.twin_edges < 0 || spec.twin_edges > q) {
    throw std::invalid_argument("twin_edges must be between 0 and p/2");
  }
  if (spec.mirrored_pairs < 0 || spec.mirrored_pairs > max_pairs) {
    throw std::invalid_argument("mirrored_pairs must be between 0 and " +
                                std::to_string(max_pairs));
  }
  if (spec.atomic_pairs < 0 || spec.atomic_pairs > spec.mirrored_pairs) {
    throw std::invalid_argument(
        "atomic_pairs must be between 0 and mirrored_pairs");
  }
  const int unpaired = n_edges - 2 * spec.mirrored_pairs - spec.twin_edges;
  if (unpaired < 0 || unpaired > max_pairs - spec.mirrored_pairs) {
    throw std::invalid_argument(
        "edge count is infeasible for the requested pair structure");
  }

  // Draw order is fixed: atomic left vertices, mirrored pairs, twin links,
  // atomic subset of the pairs, then the unpaired fill.
  const VertexSet left_set = vset.left();
  const std::vector<Vertex> left(left_set.begin(), left_set.end());
  const std::vector<Vertex> ll_draw =
      rng.sample(left, static_cast<std::size_t>(spec.atomic_left));

  const std::vector<Edge> left_block(part.left.begin(), part.left.end());
  const std::vector<Edge> pair_draw = rng.sample(
      left_block, static_cast<std::size_t>(spec.mirrored_pairs));

  const std::vector<Edge> links(part.twin_links.begin(),
                                part.twin_links.end());
  const std::vector<Edge> link_draw =
      rng.sample(links, static_cast<std::size_t>(spec.twin_edges));

  const std::vector<Edge> atomic_draw =
      rng.sample(pair_draw, static_cast<std::size_t>(spec.atomic_pairs));

  EdgeSet edges;
  for (const Edge& e : pair_draw) {
    edges.insert(e);
    edges.insert(vset.twin(e));
  }
  for (const Edge& e : link_draw) edges.insert(e);

  // Unpaired fill: candidates are the untouched left/right edges; taking an
  // edge blocks its twin so no new mirrored pair appears.
  std::vector<Edge> candidates;
  for (const Edge& e : part.left) {
    if (!edges.count(e)) candidates.push_back(e);
  }
  for (const Edge& e : part.right) {
    if (!edges.count(e)) candidates.push_back(e);
  }
  rng.shuffle(candidates);
  int placed = 0;
  for (const Edge& e : candidates) {
    if (placed == unpaired) break;
    if (edges.count(vset.twin(e))) continue;
    edges.insert(e);
    ++placed;
  }

  return Pdcg(vset, std::move(edges),
              VertexSet(ll_draw.begin(), ll_draw.end()),
              EdgeSet(atomic_draw.begin(), atomic_draw.end()));
}

Eigen::MatrixXd equicorrelation(int p, double rho) {
  Eigen::MatrixXd s = Eigen::MatrixXd::Constant(p, p, rho);
  s.diagonal().setOnes();
  return s;
}

Eigen::MatrixXd concentration_for(const Pdcg& g) {
  const RconDesign design = design_from_pdcg(g);
  for (double rho : {0.5, 0.45}) {
    try {
      const SampleMoments moments(equicorrelation(g.p(), rho), 100.0);
      const FitResult fit = fit_mle(design, moments);
      if (fit.converged) return fit.theta;
    } catch (const std::exception&) {
      // fall through to the jittered value
    }
  }
  throw std::runtime_error(
      "could not generate a concentration matrix for the graph");
}

Eigen::MatrixXd sample_gaussian(const Eigen::MatrixXd& theta, int n,
                                std::uint64_t seed) {
  const Eigen::Index p = theta.rows();
  Eigen::LLT<Eigen::MatrixXd> llt(theta);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument("concentration matrix is not SPD");
  }
  const Eigen::MatrixXd sigma =
      llt.solve(Eigen::MatrixXd::Identity(p, p));
  Eigen::LLT<Eigen::MatrixXd> sigma_llt(sigma);
  if (sigma_llt.info() != Eigen::Success) {
    throw std::invalid_argument("covariance factorization failed");
  }
  const Eigen::MatrixXd chol = sigma_llt.matrixL();

  Rng rng(seed);
  Eigen::MatrixXd data(n, p);
  Eigen::VectorXd z(p);
  for (int row = 0; row < n; ++row) {
    for (Eigen::Index j = 0; j < p; ++j) z(j) = rng.normal();
    data.row(row) = (chol * z).transpose();
  }
  return data;
}

SelectionScores score_selection(const Pdcg& selected, const Pdcg& truth) {
  if (selected.p() != truth.p()) {
    throw std::invalid_argument("selected and true graphs differ in p");
  }
  const int all_pairs = selected.p() * (selected.p() - 1) / 2;
  const int max_pairs = selected.p() * (selected.p() - 2) / 4;

  SelectionScores s;
  const EdgeSet& sel = selected.edges();
  const EdgeSet& tru = truth.edges();
  for (const Edge& e : sel) {
    if (tru.count(e)) ++s.true_positive_edges;
  }
  s.selected_edges = static_cast<int>(sel.size());
  s.truth_edges = static_cast<int>(tru.size());
  int union_size = static_cast<int>(sel.size() + tru.size()) -
                   s.true_positive_edges;
  s.true_negative_edges = all_pairs - union_size;
  s.truth_missing_edges = all_pairs - s.truth_edges;

  const EdgeSet sel_pairs = selected.merged_pairs();
  const EdgeSet tru_pairs = truth.merged_pairs();
  for (const Edge& e : sel_pairs) {
    if (tru_pairs.count(e)) ++s.true_positive_pairs;
  }
  s.selected_pairs = static_cast<int>(sel_pairs.size());
  s.truth_pairs = static_cast<int>(tru_pairs.size());
  int pair_union = static_cast<int>(sel_pairs.size() + tru_pairs.size()) -
                   s.true_positive_pairs;
  s.true_negative_pairs = max_pairs - pair_union;
  s.truth_missing_pairs = max_pairs - s.truth_pairs;

  s.eppv = rate_pct(s.true_positive_edges, s.selected_edges);
  s.etpr = rate_pct(s.true_positive_edges, s.truth_edges);
  s.etnr = rate_pct(s.true_negative_edges, s.truth_missing_edges);
  s.sppv = rate_pct(s.true_positive_pairs, s.selected_pairs);
  s.stpr = rate_pct(s.true_positive_pairs, s.truth_pairs);
  s.stnr = rate_pct(s.true_negative_pairs, s.truth_missing_pairs);
  return s;
}

BenchmarkReport run_benchmark(const std::vector<ScenarioSpec>& scenarios,
                              const std::vector<std::string>& procedures,
                              int jobs) {
  for (const auto& proc : procedures) {
    if (proc != "coherent" && proc != "naive") {
      throw std::invalid_argument("unknown procedure '" + proc + "'");
    }
  }
  BenchmarkReport report;
  for (const ScenarioSpec& spec : scenarios) {
    ScenarioReport sr;
    sr.spec = spec;
    const Rng master(spec.seed);
    for (int r = 0; r < spec.replicates; ++r) {
      Rng rep_rng = master.fork(static_cast<std::uint64_t>(r));
      try {
        const Pdcg truth = random_pdcg(spec, rep_rng);
        const Eigen::MatrixXd theta = concentration_for(truth);
        const Eigen::MatrixXd data =
            sample_gaussian(theta, spec.n, rep_rng.next_u64());
        const SampleMoments moments(sample_covariance(data),
                                    static_cast<double>(spec.n));

        SearchConfig config;
        config.alpha = spec.alpha;
        config.max_steps = spec.max_steps;
        config.jobs = jobs;
        for (const std::string& proc : procedures) {
          ReplicateResult rr;
          rr.replicate = r;
          rr.procedure = proc;
          const auto t0 = std::chrono::steady_clock::now();
          const SearchResult result =
              proc == "coherent" ? coherent_backward_search(moments, config)
                                 : naive_backward_search(moments, config);
          rr.seconds = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
          rr.fitted_models = result.trace.models_fitted;
          rr.scores = score_selection(result.model, truth);
          sr.replicates.push_back(std::move(rr));
        }
      } catch (const std::exception& e) {
        for (const std::string& proc : procedures) {
          ReplicateResult rr;
          rr.replicate = r;
          rr.procedure = proc;
          rr.failed = true;
          rr.error = e.what();
          sr.replicates.push_back(std::move(rr));
        }
      }
    }

    for (const std::string& proc : procedures) {
      ProcedureSummary sum;
      sum.procedure = proc;
      std::vector<double> edges, pairs, models, seconds;
      std::vector<std::optional<double>> eppv, etpr, etnr, sppv, stpr, stnr;
      for (const auto& rr : sr.replicates) {
        if (rr.procedure != proc || rr.failed) continue;
        ++sum.replicates_ok;
        edges.push_back(rr.scores.selected_edges);
        pairs.push_back(rr.scores.selected_pairs);
        models.push_back(static_cast<double>(rr.fitted_models));
        seconds.push_back(rr.seconds);
        eppv.push_back(rr.scores.eppv);
        etpr.push_back(rr.scores.etpr);
        etnr.push_back(rr.scores.etnr);
        sppv.push_back(rr.scores.sppv);
        stpr.push_back(rr.scores.stpr);
        stnr.push_back(rr.scores.stnr);
      }
      sum.edges_mean = mean_of(edges);
      sum.edges_sd = sd_of(edges);
      sum.pairs_mean = mean_of(pairs);
      sum.pairs_sd = sd_of(pairs);
      sum.models_mean = mean_of(models);
      sum.seconds_mean = mean_of(seconds);
      for (double sec : seconds) sum.seconds_total += sec;
      sum.eppv = mean_of_defined(eppv);
      sum.etpr = mean_of_defined(etpr);
      sum.etnr = mean_of_defined(etnr);
      sum.sppv = mean_of_defined(sppv);
      sum.stpr = mean_of_defined(stpr);
      sum.stnr = mean_of_defined(stnr);
      sr.summaries.push_back(std::move(sum));
    }
    report.scenarios.push_back(std::move(sr));
  }
  return report;
}

std::string benchmark_csv(const BenchmarkReport& report) {
  std::ostringstream os;
  os << "scenario,p,n,replicates,procedure,edges_mean,edges_sd,"
        "eppv_pct,etpr_pct,etnr_pct,sym_mean,sym_sd,"
        "sppv_pct,stpr_pct,stnr_pct,time_s,models\n";
  for (const auto& sr : report.scenarios) {
    for (const auto& sum : sr.summaries) {
      if (sum.replicates_ok == 0) continue;
      os << sr.spec.name << "," << sr.spec.p << "," << sr.spec.n << ","
         << sum.replicates_ok << "," << sum.procedure << ","
         << format_fixed(sum.edges_mean, 2) << ","
         << format_fixed(sum.edges_sd, 2) << "," << format_rate(sum.eppv)
         << "," << format_rate(sum.etpr) << "," << format_rate(sum.etnr)
         << "," << format_fixed(sum.pairs_mean, 2) << ","
         << format_fixed(sum.pairs_sd, 2) << "," << format_rate(sum.sppv)
         << "," << format_rate(sum.stpr) << "," << format_rate(sum.stnr)
         << "," << format_fixed(sum.seconds_mean, 3) << ","
         << format_fixed(sum.models_mean, 1) << "\n";
    }
  }
  return os.str();
}

nlohmann::ordered_json benchmark_json(const BenchmarkReport& report) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& sr : report.scenarios) {
    nlohmann::ordered_json js;
    js["scenario"] = sr.spec.name;
    js["p"] = sr.spec.p;
    js["n"] = sr.spec.n;
    js["replicates"] = sr.spec.replicates;
    js["seed"] = sr.spec.seed;
    auto sums = nlohmann::ordered_json::array();
    for (const auto& sum : sr.summaries) {
      nlohmann::ordered_json j;
      j["procedure"] = sum.procedure;
      j["replicates_ok"] = sum.replicates_ok;
      j["edges_mean"] = sum.edges_mean;
      j["edges_sd"] = sum.edges_sd;
      auto set_rate = [&](const char* key, const std::optional<double>& r) {
        if (r) {
          j[key] = *r;
        } else {
          j[key] = nullptr;
        }
      };
      set_rate("eppv_pct", sum.eppv);
      set_rate("etpr_pct", sum.etpr);
      set_rate("etnr_pct", sum.etnr);
      j["sym_mean"] = sum.pairs_mean;
      j["sym_sd"] = sum.pairs_sd;
      set_rate("sppv_pct", sum.sppv);
      set_rate("stpr_pct", sum.stpr);
      set_rate("stnr_pct", sum.stnr);
      j["time_s_mean"] = sum.seconds_mean;
      j["time_s_total"] = sum.seconds_total;
      j["models_mean"] = sum.models_mean;
      sums.push_back(std::move(j));
    }
    js["procedures"] = std::move(sums);
    auto reps = nlohmann::ordered_json::array();
    for (const auto& rr : sr.replicates) {
      nlohmann::ordered_json j;
      j["replicate"] = rr.replicate;
      j["procedure"] = rr.procedure;
      if (rr.failed) {
        j["failed"] = true;
        j["error"] = rr.error;
      } else {
        j["edges"] = rr.scores.selected_edges;
        j["sym"] = rr.scores.selected_pairs;
        j["fitted_models"] = rr.fitted_models;
        j["seconds"] = rr.seconds;
      }
      reps.push_back(std::move(j));
    }
    js["replicate_detail"] = std::move(reps);
    out.push_back(std::move(js));
  }
  return out;
}

}  // namespace pdrcon
