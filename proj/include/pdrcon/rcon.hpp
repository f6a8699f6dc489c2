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

#ifndef PDRCON_RCON_HPP_
#define PDRCON_RCON_HPP_

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "pdrcon/pdcg.hpp"

namespace pdrcon {

/// Sample covariance matrix together with the sample size. The matrix must be
/// symmetric and positive definite (the saturated estimate is its inverse);
/// the constructor throws std::invalid_argument otherwise.
struct SampleMoments {
  SampleMoments(Eigen::MatrixXd s_in, double n_in);

  Eigen::MatrixXd s;
  double n;
};

/// A cell of the concentration matrix, as a 1-based (row, col) pair with
/// row <= col; the symmetric cell is implied.
using Cell = std::pair<int, int>;

/// The colour classes of a model materialized as disjoint groups of
/// concentration cells sharing one parameter: a vertex class contributes one
/// or two diagonal cells, an edge class one or two off-diagonal cells.
struct RconDesign {
  int p = 0;
  std::vector<std::vector<Cell>> classes;

  int parameter_count() const { return static_cast<int>(classes.size()); }
};

/// One parameter per colour class of the graph; diagonal classes first.
RconDesign design_from_pdcg(const Pdcg& g);

/// Parameter count of the saturated (complete, uncoloured) model.
int saturated_class_count(int p);

/// Gaussian profile log-likelihood (n/2)(log det theta - trace(S theta)),
/// additive constant fixed to zero. Throws std::domain_error when theta is
/// not positive definite.
double log_likelihood(const Eigen::MatrixXd& theta,
                      const SampleMoments& moments);

struct FitOptions {
  double tol = 1e-8;        // max absolute likelihood-equation residual
  double step_tol = 1e-10;  // infinity norm of the parameter update
  int max_iter = 200;
};

struct FitResult {
  Eigen::MatrixXd theta;    // fitted concentration matrix
  double loglik = 0.0;
  double deviance = 0.0;    // 2 * (saturated loglik - model loglik)
  int df = 0;               // saturated class count - model class count
  double p_value = 1.0;
  int iterations = 0;
  bool converged = false;
  double max_residual = 0.0;
};

/// Maximum likelihood estimation by Fisher scoring on the class parameters.
///
/// With generators T_c summing the elementary symmetric matrices of the cells
/// of class c, the score is (n/2)(tr(Theta^-1 T_c) - tr(S T_c)) and the
/// expected information (n/2) tr(Theta^-1 T_c Theta^-1 T_d). Steps are halved
/// until the updated matrix is positive definite (checked by Cholesky) and
/// the log-likelihood does not decrease. The fit starts from the diagonal
/// matrix 1/s_ii averaged within vertex classes, with edge parameters zero.
///
/// A fit that exhausts max_iter (or cannot find an acceptable step) is
/// returned with converged == false, never silently as converged.
FitResult fit_mle(const RconDesign& design, const SampleMoments& moments,
                  const FitOptions& opts = {});

/// Survival function of the chi-squared distribution with df >= 1 degrees of
/// freedom, via the regularized incomplete gamma function. Throws
/// std::invalid_argument for negative x or df < 1.
double chisq_sf(double x, int df);

/// Acceptance rule: p-value strictly larger than alpha. A fit that did not
/// converge has no valid p-value and is never accepted.
bool is_accepted(const FitResult& fit, double alpha = 0.05);

}  // namespace pdrcon

#endif  // PDRCON_RCON_HPP_
