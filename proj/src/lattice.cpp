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

#include "pdrcon/lattice.hpp"

#include <algorithm>
#include <cassert>
#include <iterator>
#include <sstream>
#include <stdexcept>

namespace pdrcon {

namespace {

using boost::multiprecision::cpp_int;

template <typename T>
bool is_subset(const std::set<T>& small, const std::set<T>& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

template <typename T>
std::set<T> set_intersection(const std::set<T>& a, const std::set<T>& b) {
  std::set<T> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::inserter(out, out.end()));
  return out;
}

template <typename T>
std::set<T> set_union(const std::set<T>& a, const std::set<T>& b) {
  std::set<T> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::inserter(out, out.end()));
  return out;
}

template <typename T>
std::set<T> set_difference(const std::set<T>& a, const std::set<T>& b) {
  std::set<T> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::inserter(out, out.end()));
  return out;
}

void require_same_vertices(const Pdcg& a, const Pdcg& b) {
  if (a.p() != b.p()) {
    throw std::invalid_argument("graphs have different vertex sets (p=" +
                                std::to_string(a.p()) + " vs p=" +
                                std::to_string(b.p()) + ")");
  }
}

}  // namespace

Layer layer_of(Rule rule) {
  switch (rule) {
    case Rule::drop_left_of_pair:
    case Rule::drop_right_of_pair:
      return Layer::lower;
    default:
      return Layer::upper;
  }
}

std::string rule_tag(Rule rule) {
  switch (rule) {
    case Rule::merge_vertex_class:
      return "i";
    case Rule::merge_edge_class:
      return "ii";
    case Rule::drop_left_of_pair:
      return "iii";
    case Rule::drop_right_of_pair:
      return "iv";
    case Rule::drop_unpaired_edge:
      return "v";
    case Rule::drop_twin_link:
      return "vi";
    case Rule::drop_merged_pair:
      return "vii";
  }
  return "?";
}

std::string layer_tag(Layer layer) {
  return layer == Layer::upper ? "upper" : "lower";
}

std::string provenance_str(const Provenance& prov) {
  if (std::holds_alternative<Vertex>(prov)) {
    return std::to_string(std::get<Vertex>(prov));
  }
  const Edge& e = std::get<Edge>(prov);
  return "(" + std::to_string(e.first) + "," + std::to_string(e.second) + ")";
}

bool twin_leq(const Pdcg& h, const Pdcg& g) {
  require_same_vertices(h, g);
  return is_subset(h.edges(), g.edges()) &&
         is_subset(h.atomic_left(), g.atomic_left()) &&
         is_subset(h.atomic_pairs(), g.atomic_pairs());
}

TwinRelation twin_compare(const Pdcg& a, const Pdcg& b) {
  const bool ab = twin_leq(a, b);
  const bool ba = twin_leq(b, a);
  if (ab && ba) return TwinRelation::equal;
  if (ab) return TwinRelation::less;
  if (ba) return TwinRelation::greater;
  return TwinRelation::incomparable;
}

Pdcg twin_meet(const Pdcg& a, const Pdcg& b) {
  require_same_vertices(a, b);
  return Pdcg(a.vertices(), set_intersection(a.edges(), b.edges()),
              set_intersection(a.atomic_left(), b.atomic_left()),
              set_intersection(a.atomic_pairs(), b.atomic_pairs()));
}

Pdcg twin_join(const Pdcg& a, const Pdcg& b) {
  require_same_vertices(a, b);
  return Pdcg(a.vertices(), set_union(a.edges(), b.edges()),
              set_union(a.atomic_left(), b.atomic_left()),
              set_union(a.atomic_pairs(), b.atomic_pairs()));
}

bool submodel_leq(const Pdcg& h, const Pdcg& g) {
  require_same_vertices(h, g);
  if (!is_subset(h.edges(), g.edges())) return false;
  if (!is_subset(h.atomic_left(), g.atomic_left())) return false;
  // Every merged edge pair of g must be a union of classes of h: either both
  // edges are present and merged in h, or both are absent.
  const EdgeSet merged_h = h.merged_pairs();
  for (const Edge& e : g.merged_pairs()) {
    const Edge t = g.vertices().twin(e);
    const bool has_e = h.edges().count(e) > 0;
    const bool has_t = h.edges().count(t) > 0;
    if (has_e && has_t) {
      if (!merged_h.count(e)) return false;
    } else if (has_e || has_t) {
      return false;
    }
  }
  return true;
}

std::vector<NeighbourRecord> neighbour_submodels(const Pdcg& g) {
  const PairedVertexSet& vset = g.vertices();
  std::vector<NeighbourRecord> out;

  auto push = [&](Pdcg h, Rule rule, Provenance prov) {
    out.push_back({std::move(h), rule, layer_of(rule), std::move(prov)});
  };

  for (Vertex v : g.atomic_left()) {
    VertexSet ll = g.atomic_left();
    ll.erase(v);
    push(Pdcg(vset, g.edges(), std::move(ll), g.atomic_pairs()),
         Rule::merge_vertex_class, v);
  }

  for (const Edge& e : g.atomic_pairs()) {
    EdgeSet ee = g.atomic_pairs();
    ee.erase(e);
    push(Pdcg(vset, g.edges(), g.atomic_left(), std::move(ee)),
         Rule::merge_edge_class, e);
  }

  for (const Edge& e : g.atomic_pairs()) {
    EdgeSet edges = g.edges();
    edges.erase(e);
    EdgeSet ee = g.atomic_pairs();
    ee.erase(e);
    push(Pdcg(vset, std::move(edges), g.atomic_left(), std::move(ee)),
         Rule::drop_left_of_pair, e);
  }

  for (const Edge& e : g.atomic_pairs()) {
    EdgeSet edges = g.edges();
    edges.erase(vset.twin(e));
    EdgeSet ee = g.atomic_pairs();
    ee.erase(e);
    push(Pdcg(vset, std::move(edges), g.atomic_left(), std::move(ee)),
         Rule::drop_right_of_pair, e);
  }

  for (const Edge& e : g.edges()) {
    if (vset.is_twin_link(e) || g.edges().count(vset.twin(e))) continue;
    EdgeSet edges = g.edges();
    edges.erase(e);
    push(Pdcg(vset, std::move(edges), g.atomic_left(), g.atomic_pairs()),
         Rule::drop_unpaired_edge, e);
  }

  for (const Edge& e : g.twin_link_edges()) {
    EdgeSet edges = g.edges();
    edges.erase(e);
    push(Pdcg(vset, std::move(edges), g.atomic_left(), g.atomic_pairs()),
         Rule::drop_twin_link, e);
  }

  for (const Edge& e : g.merged_pairs()) {
    EdgeSet edges = g.edges();
    edges.erase(e);
    edges.erase(vset.twin(e));
    push(Pdcg(vset, std::move(edges), g.atomic_left(), g.atomic_pairs()),
         Rule::drop_merged_pair, e);
  }

#ifndef NDEBUG
  // The moves never produce the same graph twice for a fixed parent.
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = i + 1; j < out.size(); ++j)
      assert(!(out[i].graph == out[j].graph));
#endif
  return out;
}

NeighbourRecord classify_move(const Pdcg& parent, const Pdcg& child) {
  require_same_vertices(parent, child);
  const PairedVertexSet& vset = parent.vertices();
  const EdgeSet de = set_difference(parent.edges(), child.edges());
  const VertexSet dl =
      set_difference(parent.atomic_left(), child.atomic_left());
  const EdgeSet dp =
      set_difference(parent.atomic_pairs(), child.atomic_pairs());

  auto fail = [&]() -> NeighbourRecord {
    throw std::invalid_argument(
        "graph is not a covering submodel of the given parent");
  };
  auto record = [&](Rule rule, Provenance prov) {
    return NeighbourRecord{child, rule, layer_of(rule), std::move(prov)};
  };

  // The reverse moves only remove elements; anything gained disqualifies.
  if (!is_subset(child.edges(), parent.edges()) ||
      !is_subset(child.atomic_left(), parent.atomic_left()) ||
      !is_subset(child.atomic_pairs(), parent.atomic_pairs())) {
    return fail();
  }

  if (de.empty() && dp.empty() && dl.size() == 1) {
    return record(Rule::merge_vertex_class, *dl.begin());
  }
  if (!dl.empty()) return fail();

  if (de.empty() && dp.size() == 1) {
    return record(Rule::merge_edge_class, *dp.begin());
  }
  if (de.size() == 1) {
    const Edge f = *de.begin();
    if (dp.empty()) {
      if (vset.is_twin_link(f)) return record(Rule::drop_twin_link, f);
      if (!parent.edges().count(vset.twin(f)))
        return record(Rule::drop_unpaired_edge, f);
      return fail();
    }
    if (dp.size() == 1) {
      const Edge e = *dp.begin();
      if (f == e) return record(Rule::drop_left_of_pair, e);
      if (f == vset.twin(e)) return record(Rule::drop_right_of_pair, e);
    }
    return fail();
  }
  if (de.size() == 2 && dp.empty()) {
    const Edge e = *de.begin();
    if (vset.twin(e) == *std::next(de.begin()) &&
        parent.merged_pairs().count(e)) {
      return record(Rule::drop_merged_pair, e);
    }
  }
  return fail();
}

std::vector<PairRelation> classify_pairs(
    const std::vector<NeighbourRecord>& records) {
  std::vector<PairRelation> out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    for (std::size_t j = i + 1; j < records.size(); ++j) {
      out.push_back(
          {i, j, twin_compare(records[i].graph, records[j].graph)});
    }
  }
  return out;
}

Pdcg meet_for_search(const Pdcg& h1, const Pdcg& h2, const Pdcg& parent) {
  const NeighbourRecord r1 = classify_move(parent, h1);
  const NeighbourRecord r2 = classify_move(parent, h2);

  const TwinRelation rel = twin_compare(h1, h2);
  if (rel == TwinRelation::incomparable || rel == TwinRelation::equal) {
    return twin_meet(h1, h2);
  }
  // One is the edge merge for some mirrored edge e, the other a single-edge
  // removal for the same e; the model-inclusion meet removes both edges.
  const NeighbourRecord& lower = rel == TwinRelation::less ? r1 : r2;
  const Edge e = std::get<Edge>(lower.provenance);
  const PairedVertexSet& vset = parent.vertices();
  EdgeSet edges = parent.edges();
  edges.erase(e);
  edges.erase(vset.twin(e));
  EdgeSet ee = parent.atomic_pairs();
  ee.erase(e);
  return Pdcg(vset, std::move(edges), parent.atomic_left(), std::move(ee));
}

cpp_int count_models(int p) {
  if (p < 2 || p % 2 != 0) {
    throw std::invalid_argument("p must be a positive even integer");
  }
  const int m = p * (p - 2) / 4;
  const int total_pairs = p * (p - 1) / 2;
  cpp_int sum = 0;
  cpp_int binom = 1;  // C(m, i), updated incrementally
  for (int i = 0; i <= m; ++i) {
    sum += binom << (total_pairs - 2 * i);
    binom = binom * (m - i) / (i + 1);
  }
  return sum << (p / 2);
}

void enumerate_all(int p, const std::function<void(const Pdcg&)>& yield) {
  if (p > kEnumerationLimit) {
    throw std::invalid_argument(
        "exhaustive enumeration is limited to p <= " +
        std::to_string(kEnumerationLimit));
  }
  const PairedVertexSet vset(p);
  const EdgeSetPartition part = partition_edges(vset);

  const std::vector<Edge> all_edges(part.all.begin(), part.all.end());
  const int n_edges = static_cast<int>(all_edges.size());
  std::vector<int> twin_index(n_edges);
  std::vector<bool> in_left_block(n_edges);
  for (int i = 0; i < n_edges; ++i) {
    const Edge t = vset.twin(all_edges[i]);
    twin_index[i] = static_cast<int>(
        std::lower_bound(all_edges.begin(), all_edges.end(), t) -
        all_edges.begin());
    in_left_block[i] =
        !vset.is_twin_link(all_edges[i]) && vset.in_left_block(all_edges[i]);
  }

  const int q = p / 2;
  for (std::uint64_t emask = 0; emask < (std::uint64_t{1} << n_edges);
       ++emask) {
    // Left-block edges whose twin is present under this edge mask.
    std::vector<int> mirrored;
    for (int i = 0; i < n_edges; ++i) {
      if ((emask >> i & 1) && in_left_block[i] &&
          (emask >> twin_index[i] & 1)) {
        mirrored.push_back(i);
      }
    }
    EdgeSet edges;
    for (int i = 0; i < n_edges; ++i) {
      if (emask >> i & 1) edges.insert(all_edges[i]);
    }
    for (std::uint64_t lmask = 0; lmask < (std::uint64_t{1} << q); ++lmask) {
      VertexSet ll;
      for (int v = 0; v < q; ++v) {
        if (lmask >> v & 1) ll.insert(v + 1);
      }
      const std::uint64_t w = std::uint64_t{1} << mirrored.size();
      for (std::uint64_t pmask = 0; pmask < w; ++pmask) {
        EdgeSet ee;
        for (std::size_t k = 0; k < mirrored.size(); ++k) {
          if (pmask >> k & 1) ee.insert(all_edges[mirrored[k]]);
        }
        yield(Pdcg(vset, edges, ll, std::move(ee)));
      }
    }
  }
}

std::vector<Pdcg> enumerate_all_vector(int p) {
  std::vector<Pdcg> out;
  enumerate_all(p, [&](const Pdcg& g) { out.push_back(g); });
  return out;
}

std::string hasse_fragment_dot(const Pdcg& parent,
                               const std::vector<NeighbourRecord>& records) {
  std::ostringstream os;
  os << "digraph hasse {\n";
  os << "  rankdir=TB;\n";
  os << "  node [shape=box, fontsize=10];\n";
  os << "  parent [label=\"parent: " << parent.edges().size() << " edges, "
     << parent.atomic_left().size() << " atomic left, "
     << parent.atomic_pairs().size() << " atomic pairs\"];\n";

  std::vector<std::size_t> upper, lower;
  for (std::size_t i = 0; i < records.size(); ++i) {
    (records[i].layer == Layer::upper ? upper : lower).push_back(i);
  }
  auto emit_node = [&](std::size_t i) {
    os << "  n" << i << " [label=\"" << rule_tag(records[i].rule) << " "
       << provenance_str(records[i].provenance) << "\"];\n";
  };
  os << "  { rank=same;";
  for (std::size_t i : upper) os << " n" << i << ";";
  os << " }\n";
  for (std::size_t i : upper) emit_node(i);
  if (!lower.empty()) {
    os << "  { rank=same;";
    for (std::size_t i : lower) os << " n" << i << ";";
    os << " }\n";
    for (std::size_t i : lower) emit_node(i);
  }
  for (std::size_t i : upper) os << "  parent -> n" << i << ";\n";
  // Each single-edge removal sits directly below the edge merge for the same
  // mirrored edge.
  for (std::size_t i : upper) {
    if (records[i].rule != Rule::merge_edge_class) continue;
    for (std::size_t j : lower) {
      if (records[j].provenance == records[i].provenance) {
        os << "  n" << i << " -> n" << j << ";\n";
      }
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace pdrcon
