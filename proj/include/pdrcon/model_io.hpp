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

#ifndef PDRCON_MODEL_IO_HPP_
#define PDRCON_MODEL_IO_HPP_

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "pdrcon/pdcg.hpp"

namespace pdrcon {

// Model file format (JSON):
//   {"p": int, "edges": [[i,j],...], "LL": [i,...], "EE": [[i,j],...]}
// with 1-based canonical indices. The reader rejects incompatible
// quadruplets; the writer emits a canonical form (sorted arrays, two-space
// indent) so that write(read(f)) is byte-identical.

nlohmann::ordered_json model_to_json(const Pdcg& g);
Pdcg model_from_json(const nlohmann::json& j);

std::string model_to_json_text(const Pdcg& g);
Pdcg read_model_file(const std::string& path);
void write_model_file(const Pdcg& g, const std::string& path);

/// DOT rendering of the coloured graph: members of twin-pairing classes are
/// drawn gray, atomic vertices and edges black. Left-group vertices are
/// clustered on the left, right-group vertices on the right.
std::string model_to_dot(const Pdcg& g);

}  // namespace pdrcon

#endif  // PDRCON_MODEL_IO_HPP_
