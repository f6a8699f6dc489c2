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

#ifndef PDRCON_PAIRED_DATA_HPP_
#define PDRCON_PAIRED_DATA_HPP_

#include <set>
#include <utility>

namespace pdrcon {

/// Vertices are 1-based and use the canonical numbering: the left group is
/// {1..p/2}, the right group {p/2+1..p}, and the twin of i in the left group
/// is i + p/2. External labels must be mapped to this numbering at ingestion.
using Vertex = int;

/// An unordered vertex pair stored with its endpoints sorted (first < second).
using Edge = std::pair<Vertex, Vertex>;

using VertexSet = std::set<Vertex>;
using EdgeSet = std::set<Edge>;

/// Builds the normalized edge for two distinct vertices.
Edge make_edge(Vertex a, Vertex b);

/// The vertex set of a paired-data problem: an even number of variables split
/// into a left and a right group, with an involution pairing each variable
/// with its homologue ("twin") in the other group.
class PairedVertexSet {
 public:
  /// Edge sets are quadratic in p, so the implementation is capped.
  static constexpr int kMaxVertices = 64;

  /// Throws std::invalid_argument unless p is even and 2 <= p <= kMaxVertices.
  explicit PairedVertexSet(int p);

  int p() const { return p_; }
  int half() const { return p_ / 2; }

  bool contains(Vertex v) const { return v >= 1 && v <= p_; }
  bool in_left(Vertex v) const { return v >= 1 && v <= p_ / 2; }

  VertexSet left() const;
  VertexSet right() const;

  /// Twin images. Out-of-range operands throw std::invalid_argument; edges
  /// are renormalized so that the smaller endpoint comes first, and the
  /// image of an empty set is empty.
  Vertex twin(Vertex v) const;
  Edge twin(const Edge& e) const;
  VertexSet twin(const VertexSet& vs) const;
  EdgeSet twin(const EdgeSet& es) const;

  /// True when the edge joins a vertex to its own twin.
  bool is_twin_link(const Edge& e) const;
  /// True when the edge belongs to the left representative block (its first
  /// endpoint precedes the twin of its second).
  bool in_left_block(const Edge& e) const;

  /// Edge set of the complete graph on {1..p}.
  EdgeSet complete_edges() const;

  friend bool operator==(const PairedVertexSet& a, const PairedVertexSet& b) {
    return a.p_ == b.p_;
  }

 private:
  void check_vertex(Vertex v) const;

  int p_;
};

/// The canonical three-way partition of the complete edge set: the left
/// representative block, its mirror image under the twin function, and the
/// edges linking each vertex to its twin.
struct EdgeSetPartition {
  EdgeSet all;         // every unordered pair
  EdgeSet left;        // pairs (i,j) with i < twin(j)
  EdgeSet right;       // pairs (i,j) with i > twin(j); the twin image of left
  EdgeSet twin_links;  // pairs (i,j) with i == twin(j)
};

EdgeSetPartition partition_edges(const PairedVertexSet& vset);

}  // namespace pdrcon

#endif  // PDRCON_PAIRED_DATA_HPP_
