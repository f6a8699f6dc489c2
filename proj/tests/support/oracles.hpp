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

// Test-only brute-force oracles. These deliberately avoid the code paths
// they are used to check: model inclusion is evaluated on the expanded
// colour classes, counting walks raw bitmasks, the chi-squared survival
// function is integrated numerically, and the log-likelihood determinant
// uses a hand-rolled LU factorization.

#ifndef PDRCON_TESTS_ORACLES_HPP_
#define PDRCON_TESTS_ORACLES_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <vector>

#include "pdrcon/pdcg.hpp"

namespace pdrcon::test {

/// Model inclusion straight from the definition: edge containment plus
/// "every colour class of h is a union of colour classes of g", evaluated on
/// the expanded class partitions.
bool submodel_leq_classes(const Pdcg& h, const Pdcg& g);

/// The whole model space for small p with order and covering matrices.
/// leq matrices are indexed [smaller][larger].
struct ModelSpace {
  std::vector<Pdcg> graphs;
  std::map<Pdcg, int> index;
  std::vector<std::vector<bool>> leq_s;     // class-based oracle order
  std::vector<std::vector<bool>> leq_t;     // componentwise inclusion
  std::vector<std::vector<bool>> covers_s;  // [h][g]: h covered by g
  std::vector<std::vector<bool>> covers_t;

  static ModelSpace build(int p);

  int find(const Pdcg& g) const;
  /// Indices of the covering submodels of graph index g (model inclusion).
  std::vector<int> covering_set(int g) const;
  /// Unique maximal common lower bound in model inclusion; asserts unique.
  int meet_s(int a, int b) const;
};

/// Counts compatible quadruplets by filtering every raw (E, LL, EE) triple
/// against a first-principles compatibility test. Only feasible for p <= 4.
std::uint64_t count_by_filter(int p);

/// Counts compatible quadruplets by streaming edge-set bitmasks, without
/// materializing graphs. Feasible up to p = 6 in well under a minute.
std::uint64_t count_by_streaming(int p);

/// Chi-squared survival function by adaptive Simpson integration of the
/// density over [x, infinity), truncated far in the tail. x == 0 returns 1.
double chisq_sf_quadrature(double x, int df);

/// Gaussian profile log-likelihood with the determinant from a hand-rolled
/// partially pivoted LU factorization and explicit trace loops.
double log_likelihood_lu(const Eigen::MatrixXd& theta,
                         const Eigen::MatrixXd& s, double n);

}  // namespace pdrcon::test

#endif  // PDRCON_TESTS_ORACLES_HPP_
