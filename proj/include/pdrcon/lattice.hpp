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

#ifndef PDRCON_LATTICE_HPP_
#define PDRCON_LATTICE_HPP_

#include <boost/multiprecision/cpp_int.hpp>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pdrcon/pdcg.hpp"

namespace pdrcon {

/// The seven elementary moves that produce the covering submodels of a graph.
/// Serialized with the tags "i".."vii" in reports and traces.
enum class Rule {
  merge_vertex_class,  // i:   merge an atomic left vertex with its twin
  merge_edge_class,    // ii:  merge an atomic mirrored edge with its twin
  drop_left_of_pair,   // iii: remove the left edge of an atomic mirrored pair
  drop_right_of_pair,  // iv:  remove the right (twin) edge of such a pair
  drop_unpaired_edge,  // v:   remove an edge whose twin is absent
  drop_twin_link,      // vi:  remove an edge joining a vertex to its twin
  drop_merged_pair,    // vii: remove both edges of a twin-pairing class
};

/// Partition of the covering submodels induced by the twin order: the moves
/// iii and iv land strictly below the move ii for the same edge, every other
/// pair of covering submodels is twin-incomparable.
enum class Layer { upper, lower };

Layer layer_of(Rule rule);
std::string rule_tag(Rule rule);    // "i".."vii"
std::string layer_tag(Layer layer); // "upper" / "lower"

/// What a move consumed: a left vertex for rule i, an edge otherwise.
using Provenance = std::variant<Vertex, Edge>;

std::string provenance_str(const Provenance& prov);

struct NeighbourRecord {
  Pdcg graph;
  Rule rule;
  Layer layer;
  Provenance provenance;
};

/// Twin order: componentwise set inclusion of (edges, atomic_left,
/// atomic_pairs). Throws std::invalid_argument when the vertex sets differ.
bool twin_leq(const Pdcg& h, const Pdcg& g);

enum class TwinRelation { less, equal, greater, incomparable };

TwinRelation twin_compare(const Pdcg& a, const Pdcg& b);

/// Componentwise intersection / union; both preserve compatibility.
Pdcg twin_meet(const Pdcg& a, const Pdcg& b);
Pdcg twin_join(const Pdcg& a, const Pdcg& b);

/// Model inclusion order, evaluated directly on the quadruplets: edge and
/// atomic-left containment plus the requirement that every merged edge pair
/// of g is either merged in h as well or entirely absent from h.
bool submodel_leq(const Pdcg& h, const Pdcg& g);

/// All covering submodels of g in the model inclusion order, produced by the
/// seven elementary moves in canonical order (rule i..vii, provenance
/// ascending within each rule). The moves never collide, so the records carry
/// pairwise distinct graphs.
std::vector<NeighbourRecord> neighbour_submodels(const Pdcg& g);

/// Identifies the unique move that turns `parent` into the covering submodel
/// `child`. Throws std::invalid_argument when `child` is not a covering
/// submodel of `parent`.
NeighbourRecord classify_move(const Pdcg& parent, const Pdcg& child);

/// Twin-order relation for every unordered pair of records from one
/// neighbour_submodels call.
struct PairRelation {
  std::size_t first;
  std::size_t second;
  TwinRelation relation;
};

std::vector<PairRelation> classify_pairs(
    const std::vector<NeighbourRecord>& records);

/// Model-inclusion meet of two covering submodels of `parent`, computed via
/// the twin lattice: the twin meet when the two are twin-incomparable, and
/// the twin meet of the two single-edge-removal graphs for the shared edge
/// when one is the edge-merge of the other. Throws std::invalid_argument when
/// either input is not a covering submodel of `parent`.
Pdcg meet_for_search(const Pdcg& h1, const Pdcg& h2, const Pdcg& parent);

/// Number of models on p variables, exactly:
///   2^(p/2) * sum_i C(m, i) * 2^(C(p,2) - 2i)   with m = p(p-2)/4.
boost::multiprecision::cpp_int count_models(int p);

/// Streams every compatible quadruplet on p vertices exactly once. Refuses
/// p > kEnumerationLimit, where the model count already reaches 10^6.
inline constexpr int kEnumerationLimit = 6;
void enumerate_all(int p, const std::function<void(const Pdcg&)>& yield);

/// Collects enumerate_all into a vector (intended for p <= 4).
std::vector<Pdcg> enumerate_all_vector(int p);

/// DOT rendering of a parent and its covering submodels as a two-row diagram:
/// upper-layer records on the first row, lower-layer records on the second,
/// with edges from the parent to the upper layer and from each edge-merge
/// record to the corresponding single-edge-removal records.
std::string hasse_fragment_dot(const Pdcg& parent,
                               const std::vector<NeighbourRecord>& records);

}  // namespace pdrcon

#endif  // PDRCON_LATTICE_HPP_
