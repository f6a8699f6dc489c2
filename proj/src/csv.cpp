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

#include "pdrcon/csv.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace pdrcon {

namespace {

bool parse_row(const std::string& line, std::vector<double>& out) {
  out.clear();
  std::string token;
  std::istringstream is(line);
  while (std::getline(is, token, ',')) {
    std::istringstream ts(token);
    double value;
    if (!(ts >> value)) return false;
    // Allow whitespace-separated values inside a comma field as well.
    out.push_back(value);
    while (ts >> value) out.push_back(value);
    std::string rest;
    if (ts.clear(), ts >> rest) return false;
  }
  return !out.empty();
}

}  // namespace

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open CSV file: " + path);

  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    if (line[0] == '#') continue;
    std::vector<double> row;
    if (!parse_row(line, row)) {
      if (rows.empty() && lineno == 1) continue;  // header line
      throw std::invalid_argument(path + ": line " + std::to_string(lineno) +
                                  " is not numeric");
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw std::invalid_argument(path + ": line " + std::to_string(lineno) +
                                  " has " + std::to_string(row.size()) +
                                  " fields, expected " +
                                  std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw std::invalid_argument(path + ": no numeric rows found");
  }
  Eigen::MatrixXd m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.front().size(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rows[i][j];
  return m;
}

void write_matrix_csv(const Eigen::MatrixXd& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write CSV file: " + path);
  out.precision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ",";
      out << m(i, j);
    }
    out << "\n";
  }
}

Eigen::MatrixXd sample_covariance(const Eigen::MatrixXd& data,
                                  bool divisor_n) {
  const double n = static_cast<double>(data.rows());
  if (data.rows() < 2) {
    throw std::invalid_argument("need at least two data rows");
  }
  Eigen::MatrixXd centered = data.rowwise() - data.colwise().mean();
  const double divisor = divisor_n ? n : n - 1.0;
  return (centered.transpose() * centered) / divisor;
}

}  // namespace pdrcon
