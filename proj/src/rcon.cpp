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

#include "pdrcon/rcon.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <stdexcept>

namespace pdrcon {

namespace {

// Log-determinant from a successful Cholesky factorization.
double log_det(const Eigen::LLT<Eigen::MatrixXd>& llt) {
  return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

// tr(M T_c) for the 0/1 symmetric generator of a class, using 1-based cells.
double generator_trace(const Eigen::MatrixXd& m,
                       const std::vector<Cell>& cells) {
  double out = 0.0;
  for (const Cell& c : cells) {
    const int i = c.first - 1, j = c.second - 1;
    out += (i == j) ? m(i, i) : 2.0 * m(i, j);
  }
  return out;
}

// tr(W B_a W B_b) where B is the elementary symmetric matrix of a cell.
double cell_cross(const Eigen::MatrixXd& w, const Cell& a, const Cell& b) {
  const int i = a.first - 1, j = a.second - 1;
  const int k = b.first - 1, l = b.second - 1;
  double out = w(j, k) * w(l, i);
  if (k != l) out += w(j, l) * w(k, i);
  if (i != j) {
    out += w(i, k) * w(l, j);
    if (k != l) out += w(i, l) * w(k, j);
  }
  return out;
}

Eigen::MatrixXd assemble_theta(const RconDesign& design,
                               const Eigen::VectorXd& params) {
  Eigen::MatrixXd theta = Eigen::MatrixXd::Zero(design.p, design.p);
  for (std::size_t c = 0; c < design.classes.size(); ++c) {
    for (const Cell& cell : design.classes[c]) {
      const int i = cell.first - 1, j = cell.second - 1;
      theta(i, j) = params(static_cast<Eigen::Index>(c));
      theta(j, i) = params(static_cast<Eigen::Index>(c));
    }
  }
  return theta;
}

}  // namespace

SampleMoments::SampleMoments(Eigen::MatrixXd s_in, double n_in)
    : s(std::move(s_in)), n(n_in) {
  if (s.rows() != s.cols() || s.rows() < 1) {
    throw std::invalid_argument("covariance matrix must be square");
  }
  const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  if ((s - s.transpose()).cwiseAbs().maxCoeff() > 1e-8 * scale) {
    throw std::invalid_argument("covariance matrix must be symmetric");
  }
  s = ((s + s.transpose()) / 2.0).eval();
  Eigen::LLT<Eigen::MatrixXd> llt(s);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument("covariance matrix must be positive definite");
  }
  if (n < 1) {
    throw std::invalid_argument("sample size must be at least 1");
  }
}

RconDesign design_from_pdcg(const Pdcg& g) {
  const ColourClasses cc = to_colour_classes(g);
  RconDesign design;
  design.p = g.p();
  for (const auto& cls : cc.vertex_classes) {
    std::vector<Cell> cells;
    for (Vertex v : cls) cells.push_back({v, v});
    design.classes.push_back(std::move(cells));
  }
  for (const auto& cls : cc.edge_classes) {
    std::vector<Cell> cells;
    for (const Edge& e : cls) cells.push_back({e.first, e.second});
    design.classes.push_back(std::move(cells));
  }
  return design;
}

int saturated_class_count(int p) { return p + p * (p - 1) / 2; }

double log_likelihood(const Eigen::MatrixXd& theta,
                      const SampleMoments& moments) {
  Eigen::LLT<Eigen::MatrixXd> llt(theta);
  if (llt.info() != Eigen::Success) {
    throw std::domain_error(
        "concentration matrix is not positive definite");
  }
  const double trace_s_theta = (moments.s.cwiseProduct(theta)).sum();
  return moments.n / 2.0 * (log_det(llt) - trace_s_theta);
}

FitResult fit_mle(const RconDesign& design, const SampleMoments& moments,
                  const FitOptions& opts) {
  if (design.classes.empty()) {
    throw std::invalid_argument("model design has no parameter classes");
  }
  if (design.p != moments.s.rows()) {
    throw std::invalid_argument("design and covariance dimensions differ");
  }
  const int n_classes = design.parameter_count();
  const double n = moments.n;

  // tr(S T_c) is constant across iterations.
  Eigen::VectorXd s_traces(n_classes);
  for (int c = 0; c < n_classes; ++c) {
    s_traces(c) = generator_trace(moments.s, design.classes[c]);
  }

  // Diagonal-restricted start: 1/s_ii averaged within vertex classes keeps
  // the initial matrix positive definite for any model.
  Eigen::VectorXd params = Eigen::VectorXd::Zero(n_classes);
  for (int c = 0; c < n_classes; ++c) {
    const auto& cells = design.classes[c];
    if (cells.front().first != cells.front().second) continue;
    double sum = 0.0;
    for (const Cell& cell : cells) sum += 1.0 / moments.s(cell.first - 1, cell.first - 1);
    params(c) = sum / static_cast<double>(cells.size());
  }

  Eigen::MatrixXd theta = assemble_theta(design, params);
  Eigen::LLT<Eigen::MatrixXd> llt(theta);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument("initial concentration matrix is not SPD");
  }
  double loglik = n / 2.0 * (log_det(llt) - moments.s.cwiseProduct(theta).sum());

  FitResult result;
  result.converged = false;
  int iter = 0;
  double max_resid = 0.0;
  const Eigen::MatrixXd identity =
      Eigen::MatrixXd::Identity(design.p, design.p);

  while (true) {
    const Eigen::MatrixXd w = llt.solve(identity);

    Eigen::VectorXd residual(n_classes);
    for (int c = 0; c < n_classes; ++c) {
      residual(c) = generator_trace(w, design.classes[c]) - s_traces(c);
    }
    max_resid = residual.cwiseAbs().maxCoeff();
    if (max_resid <= opts.tol) {
      result.converged = true;
      break;
    }
    if (iter >= opts.max_iter) break;
    ++iter;

    // Expected information; for this family it equals the negative Hessian,
    // so the scoring step is a Newton step.
    Eigen::MatrixXd info(n_classes, n_classes);
    for (int c = 0; c < n_classes; ++c) {
      for (int d = c; d < n_classes; ++d) {
        double sum = 0.0;
        for (const Cell& a : design.classes[c])
          for (const Cell& b : design.classes[d]) sum += cell_cross(w, a, b);
        info(c, d) = n / 2.0 * sum;
        info(d, c) = info(c, d);
      }
    }
    const Eigen::VectorXd score = n / 2.0 * residual;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(info);
    if (ldlt.info() != Eigen::Success) break;
    const Eigen::VectorXd delta = ldlt.solve(score);

    // Step halving keeps the iterate positive definite and the
    // log-likelihood non-decreasing.
    double alpha = 1.0;
    bool stepped = false;
    for (int h = 0; h < 60; ++h, alpha /= 2.0) {
      const Eigen::VectorXd trial = params + alpha * delta;
      Eigen::MatrixXd trial_theta = assemble_theta(design, trial);
      Eigen::LLT<Eigen::MatrixXd> trial_llt(trial_theta);
      if (trial_llt.info() != Eigen::Success) continue;
      const double trial_loglik =
          n / 2.0 *
          (log_det(trial_llt) - moments.s.cwiseProduct(trial_theta).sum());
      if (trial_loglik < loglik - 1e-9 * (1.0 + std::abs(loglik))) continue;
      params = trial;
      theta = std::move(trial_theta);
      llt = std::move(trial_llt);
      loglik = trial_loglik;
      stepped = true;
      break;
    }
    if (!stepped) break;  // no acceptable step; report non-convergence

    if ((alpha * delta).cwiseAbs().maxCoeff() <= opts.step_tol) {
      const Eigen::MatrixXd w2 = llt.solve(identity);
      for (int c = 0; c < n_classes; ++c) {
        residual(c) = generator_trace(w2, design.classes[c]) - s_traces(c);
      }
      max_resid = residual.cwiseAbs().maxCoeff();
      result.converged = true;
      break;
    }
  }

  result.theta = theta;
  result.loglik = loglik;
  result.iterations = iter;
  result.max_residual = max_resid;

  Eigen::LLT<Eigen::MatrixXd> s_llt(moments.s);
  const double loglik_sat =
      -n / 2.0 * (log_det(s_llt) + static_cast<double>(design.p));
  result.deviance = std::max(0.0, 2.0 * (loglik_sat - loglik));
  result.df = saturated_class_count(design.p) - n_classes;
  result.p_value =
      result.df == 0 ? 1.0 : chisq_sf(result.deviance, result.df);
  return result;
}

double chisq_sf(double x, int df) {
  if (x < 0.0) {
    throw std::invalid_argument("chi-squared statistic must be nonnegative");
  }
  if (df < 1) {
    throw std::invalid_argument("degrees of freedom must be at least 1");
  }
  return boost::math::gamma_q(df / 2.0, x / 2.0);
}

bool is_accepted(const FitResult& fit, double alpha) {
  return fit.converged && fit.p_value > alpha;
}

}  // namespace pdrcon
