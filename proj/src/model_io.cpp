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

#include "pdrcon/model_io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>

namespace pdrcon {

namespace {

EdgeSet edges_from_json(const nlohmann::json& arr, const char* field) {
  if (!arr.is_array()) {
    throw std::invalid_argument(std::string("model field '") + field +
                                "' must be an array of [i,j] pairs");
  }
  EdgeSet out;
  for (const auto& item : arr) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number_integer() ||
        !item[1].is_number_integer()) {
      throw std::invalid_argument(std::string("model field '") + field +
                                  "' must contain [i,j] integer pairs");
    }
    out.insert(make_edge(item[0].get<int>(), item[1].get<int>()));
  }
  return out;
}

}  // namespace

nlohmann::ordered_json model_to_json(const Pdcg& g) {
  nlohmann::ordered_json j;
  j["p"] = g.p();
  auto edges = nlohmann::ordered_json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.first, e.second});
  j["edges"] = std::move(edges);
  auto ll = nlohmann::ordered_json::array();
  for (Vertex v : g.atomic_left()) ll.push_back(v);
  j["LL"] = std::move(ll);
  auto ee = nlohmann::ordered_json::array();
  for (const Edge& e : g.atomic_pairs()) ee.push_back({e.first, e.second});
  j["EE"] = std::move(ee);
  return j;
}

Pdcg model_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("p") || !j["p"].is_number_integer()) {
    throw std::invalid_argument("model file must contain an integer field 'p'");
  }
  const PairedVertexSet vset(j["p"].get<int>());
  const EdgeSet edges =
      j.contains("edges") ? edges_from_json(j["edges"], "edges") : EdgeSet{};
  VertexSet ll;
  if (j.contains("LL")) {
    if (!j["LL"].is_array()) {
      throw std::invalid_argument("model field 'LL' must be an array");
    }
    for (const auto& item : j["LL"]) {
      if (!item.is_number_integer()) {
        throw std::invalid_argument("model field 'LL' must contain integers");
      }
      ll.insert(item.get<int>());
    }
  }
  const EdgeSet ee =
      j.contains("EE") ? edges_from_json(j["EE"], "EE") : EdgeSet{};

  auto violations = validate_quadruplet(vset, edges, ll, ee);
  if (!violations.empty()) {
    std::string msg = "model file is not a compatible quadruplet:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw std::invalid_argument(msg);
  }
  return Pdcg(vset, edges, ll, ee);
}

std::string model_to_json_text(const Pdcg& g) {
  return model_to_json(g).dump(2) + "\n";
}

Pdcg read_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("model file " + path +
                                " is not valid JSON: " + e.what());
  }
  return model_from_json(j);
}

void write_model_file(const Pdcg& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write model file: " + path);
  out << model_to_json_text(g);
}

std::string model_to_dot(const Pdcg& g) {
  const PairedVertexSet& vset = g.vertices();
  const VertexSet merged_left = g.merged_left();
  const EdgeSet merged_pairs = g.merged_pairs();

  std::ostringstream os;
  os << "graph pdcg {\n";
  os << "  layout=dot;\n  rankdir=LR;\n";
  os << "  node [shape=circle, fontsize=10];\n";
  auto vertex_color = [&](Vertex v) {
    const Vertex left = vset.in_left(v) ? v : vset.twin(v);
    return merged_left.count(left) ? "gray" : "black";
  };
  os << "  subgraph cluster_left {\n    label=\"L\";\n";
  for (Vertex v = 1; v <= vset.half(); ++v) {
    os << "    " << v << " [color=" << vertex_color(v) << "];\n";
  }
  os << "  }\n";
  os << "  subgraph cluster_right {\n    label=\"R\";\n";
  for (Vertex v = vset.half() + 1; v <= vset.p(); ++v) {
    os << "    " << v << " [color=" << vertex_color(v) << "];\n";
  }
  os << "  }\n";
  for (const Edge& e : g.edges()) {
    const bool in_pair_class =
        !vset.is_twin_link(e) &&
        (merged_pairs.count(vset.in_left_block(e) ? e : vset.twin(e)) > 0);
    os << "  " << e.first << " -- " << e.second;
    if (in_pair_class) os << " [color=gray]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace pdrcon
