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

#ifndef PDRCON_PDCG_HPP_
#define PDRCON_PDCG_HPP_

#include <string>
#include <vector>

#include "pdrcon/paired_data.hpp"

namespace pdrcon {

/// A coloured graph for paired data in quadruplet form: an undirected graph
/// plus the left vertices whose colour class is atomic and the mirrored left
/// edges whose colour class is atomic. Vertices and edges not covered by one
/// of those sets are merged with their twin into a two-element class.
///
/// Instances are immutable and always satisfy the compatibility conditions:
/// atomic_left is a subset of the left group and every member of atomic_pairs
/// lies in the left block with its twin edge also present.
class Pdcg {
 public:
  /// Throws std::invalid_argument when the quadruplet is not compatible; the
  /// message lists every violated condition.
  Pdcg(PairedVertexSet vset, EdgeSet edges, VertexSet atomic_left,
       EdgeSet atomic_pairs);

  /// The complete graph with all colour classes atomic (the saturated model).
  static Pdcg unit(int p);
  /// The empty graph with every vertex merged with its twin.
  static Pdcg zero(int p);

  const PairedVertexSet& vertices() const { return vset_; }
  int p() const { return vset_.p(); }

  const EdgeSet& edges() const { return edges_; }
  const VertexSet& atomic_left() const { return atomic_left_; }
  const EdgeSet& atomic_pairs() const { return atomic_pairs_; }

  /// Left vertices merged with their twin (complement of atomic_left in L).
  VertexSet merged_left() const;

  EdgeSet left_edges() const;       // edges in the left block
  EdgeSet right_edges() const;      // edges in the right block
  EdgeSet twin_link_edges() const;  // edges joining a vertex to its twin

  /// Left-block edges whose twin edge is also present (the candidates for an
  /// edge twin-pairing class), each represented by its left member.
  EdgeSet mirrored_pairs() const;

  /// Left representatives of the edge twin-pairing classes actually merged:
  /// mirrored_pairs() minus atomic_pairs().
  EdgeSet merged_pairs() const;

  bool operator==(const Pdcg& o) const;
  bool operator!=(const Pdcg& o) const { return !(*this == o); }
  /// Lexicographic on (p, edges, atomic_left, atomic_pairs); used for
  /// deterministic ordering in containers and reports.
  bool operator<(const Pdcg& o) const;

 private:
  PairedVertexSet vset_;
  EdgeSet edges_;
  VertexSet atomic_left_;
  EdgeSet atomic_pairs_;
};

/// Diagnostic check of a raw quadruplet against the compatibility conditions.
/// Returns one message per violation; an empty result means the quadruplet
/// defines a valid coloured graph for paired data.
std::vector<std::string> validate_quadruplet(const PairedVertexSet& vset,
                                             const EdgeSet& edges,
                                             const VertexSet& atomic_left,
                                             const EdgeSet& atomic_pairs);

/// Classical colour-class view: partitions of the vertex set and of the edge
/// set in which every class is a singleton or a {member, twin} pair. Classes
/// are kept sorted by their smallest member with members sorted inside.
struct ColourClasses {
  std::vector<std::vector<Vertex>> vertex_classes;
  std::vector<std::vector<Edge>> edge_classes;

  bool operator==(const ColourClasses&) const = default;
};

/// Expands a quadruplet into its colour classes.
ColourClasses to_colour_classes(const Pdcg& g);

/// Rebuilds the quadruplet from a colouring. Throws std::invalid_argument if
/// some class is neither atomic nor a twin pair, or the classes do not form
/// partitions over the given vertex set.
Pdcg from_colour_classes(const ColourClasses& cc, const PairedVertexSet& vset);

}  // namespace pdrcon

#endif  // PDRCON_PDCG_HPP_
