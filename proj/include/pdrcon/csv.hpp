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

#ifndef PDRCON_CSV_HPP_
#define PDRCON_CSV_HPP_

#include <Eigen/Dense>
#include <string>

namespace pdrcon {

/// Reads a rectangular numeric CSV (comma or whitespace separated). A first
/// line that does not parse as numbers is treated as a header and skipped.
/// Throws std::invalid_argument on ragged rows or non-numeric fields, naming
/// the offending line.
Eigen::MatrixXd read_matrix_csv(const std::string& path);

void write_matrix_csv(const Eigen::MatrixXd& m, const std::string& path);

/// Sample covariance of an n x p data matrix: columns are centered and the
/// cross products divided by n (maximum-likelihood convention) or n-1.
Eigen::MatrixXd sample_covariance(const Eigen::MatrixXd& data,
                                  bool divisor_n = true);

}  // namespace pdrcon

#endif  // PDRCON_CSV_HPP_
