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

#include "pdrcon/pdcg.hpp"

#include <algorithm>
#include <stdexcept>

namespace pdrcon {

namespace {

std::string edge_str(const Edge& e) {
  return "(" + std::to_string(e.first) + "," + std::to_string(e.second) + ")";
}

}  // namespace

std::vector<std::string> validate_quadruplet(const PairedVertexSet& vset,
                                             const EdgeSet& edges,
                                             const VertexSet& atomic_left,
                                             const EdgeSet& atomic_pairs) {
  std::vector<std::string> out;
  for (const Edge& e : edges) {
    if (!vset.contains(e.first) || !vset.contains(e.second) ||
        e.first >= e.second) {
      out.push_back("edge " + edge_str(e) +
                    " is not a normalized pair of vertices in 1.." +
                    std::to_string(vset.p()));
    }
  }
  for (Vertex v : atomic_left) {
    if (!vset.in_left(v)) {
      out.push_back("atomic vertex " + std::to_string(v) +
                    " is not in the left group");
    }
  }
  for (const Edge& e : atomic_pairs) {
    if (!vset.contains(e.first) || !vset.contains(e.second) ||
        e.first >= e.second) {
      out.push_back("atomic pair " + edge_str(e) + " is not a normalized pair");
      continue;
    }
    if (!edges.count(e) || vset.is_twin_link(e) || !vset.in_left_block(e) ||
        !edges.count(vset.twin(e))) {
      out.push_back("atomic pair " + edge_str(e) +
                    " is not a left-block edge with its twin present");
    }
  }
  return out;
}

Pdcg::Pdcg(PairedVertexSet vset, EdgeSet edges, VertexSet atomic_left,
           EdgeSet atomic_pairs)
    : vset_(vset),
      edges_(std::move(edges)),
      atomic_left_(std::move(atomic_left)),
      atomic_pairs_(std::move(atomic_pairs)) {
  auto violations =
      validate_quadruplet(vset_, edges_, atomic_left_, atomic_pairs_);
  if (!violations.empty()) {
    std::string msg = "incompatible quadruplet:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw std::invalid_argument(msg);
  }
}

Pdcg Pdcg::unit(int p) {
  PairedVertexSet vset(p);
  EdgeSetPartition part = partition_edges(vset);
  return Pdcg(vset, part.all, vset.left(), part.left);
}

Pdcg Pdcg::zero(int p) { return Pdcg(PairedVertexSet(p), {}, {}, {}); }

VertexSet Pdcg::merged_left() const {
  VertexSet out;
  for (Vertex v = 1; v <= vset_.half(); ++v) {
    if (!atomic_left_.count(v)) out.insert(v);
  }
  return out;
}

EdgeSet Pdcg::left_edges() const {
  EdgeSet out;
  for (const Edge& e : edges_) {
    if (!vset_.is_twin_link(e) && vset_.in_left_block(e)) out.insert(e);
  }
  return out;
}

EdgeSet Pdcg::right_edges() const {
  EdgeSet out;
  for (const Edge& e : edges_) {
    if (!vset_.is_twin_link(e) && !vset_.in_left_block(e)) out.insert(e);
  }
  return out;
}

EdgeSet Pdcg::twin_link_edges() const {
  EdgeSet out;
  for (const Edge& e : edges_) {
    if (vset_.is_twin_link(e)) out.insert(e);
  }
  return out;
}

EdgeSet Pdcg::mirrored_pairs() const {
  EdgeSet out;
  for (const Edge& e : edges_) {
    if (!vset_.is_twin_link(e) && vset_.in_left_block(e) &&
        edges_.count(vset_.twin(e))) {
      out.insert(e);
    }
  }
  return out;
}

EdgeSet Pdcg::merged_pairs() const {
  EdgeSet out;
  for (const Edge& e : mirrored_pairs()) {
    if (!atomic_pairs_.count(e)) out.insert(e);
  }
  return out;
}

bool Pdcg::operator==(const Pdcg& o) const {
  return p() == o.p() && edges_ == o.edges_ &&
         atomic_left_ == o.atomic_left_ && atomic_pairs_ == o.atomic_pairs_;
}

bool Pdcg::operator<(const Pdcg& o) const {
  if (p() != o.p()) return p() < o.p();
  if (edges_ != o.edges_) {
    return std::lexicographical_compare(edges_.begin(), edges_.end(),
                                        o.edges_.begin(), o.edges_.end());
  }
  if (atomic_left_ != o.atomic_left_) {
    return std::lexicographical_compare(
        atomic_left_.begin(), atomic_left_.end(), o.atomic_left_.begin(),
        o.atomic_left_.end());
  }
  return std::lexicographical_compare(
      atomic_pairs_.begin(), atomic_pairs_.end(), o.atomic_pairs_.begin(),
      o.atomic_pairs_.end());
}

ColourClasses to_colour_classes(const Pdcg& g) {
  const PairedVertexSet& vset = g.vertices();
  ColourClasses cc;

  VertexSet merged = g.merged_left();
  for (Vertex v = 1; v <= vset.half(); ++v) {
    if (merged.count(v)) {
      cc.vertex_classes.push_back({v, vset.twin(v)});
    } else {
      cc.vertex_classes.push_back({v});
    }
  }
  for (Vertex v = 1; v <= vset.half(); ++v) {
    if (!merged.count(v)) cc.vertex_classes.push_back({vset.twin(v)});
  }
  std::sort(cc.vertex_classes.begin(), cc.vertex_classes.end());

  EdgeSet paired = g.merged_pairs();
  EdgeSet in_pair_class;
  for (const Edge& e : paired) {
    Edge t = vset.twin(e);
    std::vector<Edge> cls{e, t};
    std::sort(cls.begin(), cls.end());
    cc.edge_classes.push_back(cls);
    in_pair_class.insert(e);
    in_pair_class.insert(t);
  }
  for (const Edge& e : g.edges()) {
    if (!in_pair_class.count(e)) cc.edge_classes.push_back({e});
  }
  std::sort(cc.edge_classes.begin(), cc.edge_classes.end());
  return cc;
}

Pdcg from_colour_classes(const ColourClasses& cc,
                         const PairedVertexSet& vset) {
  VertexSet seen_vertices;
  VertexSet atomic_left;
  for (const auto& raw : cc.vertex_classes) {
    std::vector<Vertex> cls = raw;
    std::sort(cls.begin(), cls.end());
    if (cls.empty() || cls.size() > 2) {
      throw std::invalid_argument(
          "vertex colour class is neither atomic nor twin-pairing");
    }
    for (Vertex v : cls) {
      if (!vset.contains(v)) {
        throw std::invalid_argument("vertex " + std::to_string(v) +
                                    " is outside the vertex set");
      }
      if (!seen_vertices.insert(v).second) {
        throw std::invalid_argument("vertex " + std::to_string(v) +
                                    " appears in two colour classes");
      }
    }
    if (cls.size() == 2) {
      if (vset.twin(cls[0]) != cls[1]) {
        throw std::invalid_argument(
            "two-element vertex class is not a twin pair");
      }
    } else if (vset.in_left(cls[0])) {
      atomic_left.insert(cls[0]);
    }
  }
  if (static_cast<int>(seen_vertices.size()) != vset.p()) {
    throw std::invalid_argument(
        "vertex classes do not cover the whole vertex set");
  }
  // A right vertex may be atomic only when its left twin is atomic too;
  // otherwise the left twin sits in some twin-pairing class that would have
  // to contain this vertex, which the uniqueness check above already caught.

  EdgeSet edges;
  EdgeSet atomic_edges;
  for (const auto& raw : cc.edge_classes) {
    std::vector<Edge> cls = raw;
    std::sort(cls.begin(), cls.end());
    if (cls.empty() || cls.size() > 2) {
      throw std::invalid_argument(
          "edge colour class is neither atomic nor twin-pairing");
    }
    for (const Edge& e : cls) {
      if (!vset.contains(e.first) || !vset.contains(e.second) ||
          e.first >= e.second) {
        throw std::invalid_argument("edge " + std::to_string(e.first) + "," +
                                    std::to_string(e.second) +
                                    " is not normalized");
      }
      if (!edges.insert(e).second) {
        throw std::invalid_argument("edge appears in two colour classes");
      }
    }
    if (cls.size() == 2) {
      if (vset.twin(cls[0]) != cls[1] || vset.is_twin_link(cls[0])) {
        throw std::invalid_argument(
            "two-element edge class is not a twin pair of distinct edges");
      }
    } else {
      atomic_edges.insert(cls[0]);
    }
  }

  // An atomic left-block edge whose twin is present always has an atomic
  // twin as well: a twin-pairing class containing the twin would contain the
  // edge itself, contradicting atomicity.
  EdgeSet atomic_pairs;
  for (const Edge& e : atomic_edges) {
    if (!vset.is_twin_link(e) && vset.in_left_block(e) &&
        edges.count(vset.twin(e))) {
      atomic_pairs.insert(e);
    }
  }
  return Pdcg(vset, edges, atomic_left, atomic_pairs);
}

}  // namespace pdrcon
