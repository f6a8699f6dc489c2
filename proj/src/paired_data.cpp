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

#include "pdrcon/paired_data.hpp"

#include <stdexcept>
#include <string>

namespace pdrcon {

Edge make_edge(Vertex a, Vertex b) {
  if (a == b) {
    throw std::invalid_argument("edge endpoints must be distinct: (" +
                                std::to_string(a) + "," + std::to_string(b) +
                                ")");
  }
  return a < b ? Edge{a, b} : Edge{b, a};
}

PairedVertexSet::PairedVertexSet(int p) : p_(p) {
  if (p < 2 || p % 2 != 0) {
    throw std::invalid_argument("p must be a positive even integer, got " +
                                std::to_string(p));
  }
  if (p > kMaxVertices) {
    throw std::invalid_argument("p exceeds the supported maximum of " +
                                std::to_string(kMaxVertices));
  }
}

void PairedVertexSet::check_vertex(Vertex v) const {
  if (!contains(v)) {
    throw std::invalid_argument("vertex " + std::to_string(v) +
                                " is outside 1.." + std::to_string(p_));
  }
}

VertexSet PairedVertexSet::left() const {
  VertexSet out;
  for (Vertex v = 1; v <= p_ / 2; ++v) out.insert(v);
  return out;
}

VertexSet PairedVertexSet::right() const {
  VertexSet out;
  for (Vertex v = p_ / 2 + 1; v <= p_; ++v) out.insert(v);
  return out;
}

Vertex PairedVertexSet::twin(Vertex v) const {
  check_vertex(v);
  return v <= p_ / 2 ? v + p_ / 2 : v - p_ / 2;
}

Edge PairedVertexSet::twin(const Edge& e) const {
  return make_edge(twin(e.first), twin(e.second));
}

VertexSet PairedVertexSet::twin(const VertexSet& vs) const {
  VertexSet out;
  for (Vertex v : vs) out.insert(twin(v));
  return out;
}

EdgeSet PairedVertexSet::twin(const EdgeSet& es) const {
  EdgeSet out;
  for (const Edge& e : es) out.insert(twin(e));
  return out;
}

bool PairedVertexSet::is_twin_link(const Edge& e) const {
  return e.first == twin(e.second);
}

bool PairedVertexSet::in_left_block(const Edge& e) const {
  return e.first < twin(e.second);
}

EdgeSet PairedVertexSet::complete_edges() const {
  EdgeSet out;
  for (Vertex i = 1; i <= p_; ++i)
    for (Vertex j = i + 1; j <= p_; ++j) out.insert({i, j});
  return out;
}

EdgeSetPartition partition_edges(const PairedVertexSet& vset) {
  EdgeSetPartition out;
  out.all = vset.complete_edges();
  for (const Edge& e : out.all) {
    if (vset.is_twin_link(e)) {
      out.twin_links.insert(e);
    } else if (vset.in_left_block(e)) {
      out.left.insert(e);
    } else {
      out.right.insert(e);
    }
  }
  return out;
}

}  // namespace pdrcon
