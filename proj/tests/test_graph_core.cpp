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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "oracles.hpp"
#include "pdrcon/lattice.hpp"
#include "pdrcon/model_io.hpp"
#include "pdrcon/rng.hpp"

using namespace pdrcon;

namespace {

// The worked 4-variable example: edge set missing only (2,4).
EdgeSet frets_edges() {
  return {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {3, 4}};
}

Pdcg random_graph(int p, Rng& rng) {
  const PairedVertexSet vset(p);
  const EdgeSetPartition part = partition_edges(vset);
  EdgeSet edges;
  for (const Edge& e : part.all) {
    if (rng.uniform() < 0.5) edges.insert(e);
  }
  VertexSet ll;
  for (Vertex v = 1; v <= vset.half(); ++v) {
    if (rng.uniform() < 0.5) ll.insert(v);
  }
  EdgeSet ee;
  for (const Edge& e : edges) {
    if (vset.in_left_block(e) && !vset.is_twin_link(e) &&
        edges.count(vset.twin(e)) && rng.uniform() < 0.5) {
      ee.insert(e);
    }
  }
  return Pdcg(vset, std::move(edges), std::move(ll), std::move(ee));
}

}  // namespace

TEST_CASE("vertex set construction and twins") {
  const PairedVertexSet v6(6);
  CHECK(v6.twin(1) == 4);
  CHECK(v6.twin(2) == 5);
  CHECK(v6.twin(3) == 6);
  CHECK(v6.twin(v6.twin(2)) == 2);

  const PairedVertexSet v2(2);
  CHECK(v2.twin(1) == 2);
  CHECK(v2.twin(2) == 1);

  const PairedVertexSet v4(4);
  CHECK(v4.left() == VertexSet{1, 2});
  CHECK(v4.right() == VertexSet{3, 4});
  CHECK(v4.twin(2) == 4);

  CHECK_THROWS_AS(PairedVertexSet(3), std::invalid_argument);
  CHECK_THROWS_AS(PairedVertexSet(0), std::invalid_argument);
  CHECK_THROWS_AS(PairedVertexSet(-2), std::invalid_argument);
  CHECK_THROWS_AS(PairedVertexSet(66), std::invalid_argument);
  CHECK_NOTHROW(PairedVertexSet(64));
}

TEST_CASE("edge set partition") {
  SUBCASE("p=6 matches the worked listing") {
    const EdgeSetPartition part = partition_edges(PairedVertexSet(6));
    CHECK(part.left ==
          EdgeSet{{1, 2}, {1, 3}, {2, 3}, {1, 5}, {1, 6}, {2, 6}});
    CHECK(part.right ==
          EdgeSet{{4, 5}, {4, 6}, {5, 6}, {2, 4}, {3, 4}, {3, 5}});
    CHECK(part.twin_links == EdgeSet{{1, 4}, {2, 5}, {3, 6}});
  }
  SUBCASE("p=2 has only the twin link") {
    const EdgeSetPartition part = partition_edges(PairedVertexSet(2));
    CHECK(part.left.empty());
    CHECK(part.right.empty());
    CHECK(part.twin_links == EdgeSet{{1, 2}});
  }
  SUBCASE("p=4") {
    const EdgeSetPartition part = partition_edges(PairedVertexSet(4));
    CHECK(part.left == EdgeSet{{1, 2}, {1, 4}});
    CHECK(part.right == EdgeSet{{2, 3}, {3, 4}});
    CHECK(part.twin_links == EdgeSet{{1, 3}, {2, 4}});
  }
  SUBCASE("sizes and twin image for a range of p") {
    for (int p : {2, 4, 6, 8, 10, 16, 64}) {
      const PairedVertexSet vset(p);
      const EdgeSetPartition part = partition_edges(vset);
      CHECK(static_cast<int>(part.left.size()) == p * (p - 2) / 4);
      CHECK(part.right.size() == part.left.size());
      CHECK(static_cast<int>(part.twin_links.size()) == p / 2);
      CHECK(vset.twin(part.left) == part.right);
      CHECK(vset.twin(part.right) == part.left);
      CHECK(vset.twin(part.twin_links) == part.twin_links);
    }
  }
}

TEST_CASE("twin images of edges and sets") {
  const PairedVertexSet v6(6);
  CHECK(v6.twin(Edge{1, 5}) == Edge{2, 4});
  const PairedVertexSet v4(4);
  CHECK(v4.twin(VertexSet{1, 2}) == VertexSet{3, 4});
  CHECK(v4.twin(EdgeSet{}) == EdgeSet{});
  CHECK_THROWS_AS(v4.twin(7), std::invalid_argument);
  CHECK_THROWS_AS(v4.twin(Edge{0, 2}), std::invalid_argument);
}

TEST_CASE("colour class conversion examples") {
  SUBCASE("worked p=6 example") {
    const PairedVertexSet vset(6);
    ColourClasses cc;
    cc.vertex_classes = {{1, 4}, {2, 5}, {3}, {6}};
    cc.edge_classes = {{{1, 2}, {4, 5}}, {{1, 4}}, {{1, 6}},
                       {{2, 3}},         {{3, 4}}, {{3, 5}}};
    const Pdcg g = from_colour_classes(cc, vset);
    CHECK(g.atomic_left() == VertexSet{3});
    CHECK(g.atomic_pairs() == EdgeSet{{1, 6}});
    CHECK(g.edges() ==
          EdgeSet{{1, 2}, {1, 4}, {1, 6}, {2, 3}, {3, 4}, {3, 5}, {4, 5}});
    CHECK(to_colour_classes(g).vertex_classes ==
          std::vector<std::vector<Vertex>>{{1, 4}, {2, 5}, {3}, {6}});
  }
  SUBCASE("p=4 complete uncoloured graph") {
    const Pdcg g = Pdcg::unit(4);
    CHECK(g.atomic_left() == VertexSet{1, 2});
    CHECK(g.atomic_pairs() == EdgeSet{{1, 2}, {1, 4}});
  }
  SUBCASE("fully twin-paired graph has empty atomic sets") {
    const PairedVertexSet vset(4);
    ColourClasses cc;
    cc.vertex_classes = {{1, 3}, {2, 4}};
    cc.edge_classes = {{{1, 2}, {3, 4}}, {{1, 4}, {2, 3}}, {{1, 3}}};
    const Pdcg g = from_colour_classes(cc, vset);
    CHECK(g.atomic_left().empty());
    CHECK(g.atomic_pairs().empty());
    CHECK(g.edges() == frets_edges());
  }
  SUBCASE("quadruplet to classes") {
    const PairedVertexSet vset(4);
    const Pdcg g(vset, frets_edges(), {2}, {{1, 4}});
    const ColourClasses cc = to_colour_classes(g);
    CHECK(cc.vertex_classes ==
          std::vector<std::vector<Vertex>>{{1, 3}, {2}, {4}});
    const std::vector<Edge> paired{{1, 2}, {3, 4}};
    CHECK(std::count(cc.edge_classes.begin(), cc.edge_classes.end(), paired) ==
          1);
  }
  SUBCASE("zero element is fully twin-paired") {
    const ColourClasses cc = to_colour_classes(Pdcg::zero(4));
    CHECK(cc.vertex_classes ==
          std::vector<std::vector<Vertex>>{{1, 3}, {2, 4}});
    CHECK(cc.edge_classes.empty());
  }
  SUBCASE("rejects classes that are neither atomic nor twin-pairing") {
    const PairedVertexSet vset(4);
    ColourClasses bad;
    bad.vertex_classes = {{1, 4}, {2}, {3}};  // {1,4} is not a twin pair
    bad.edge_classes = {};
    CHECK_THROWS_AS(from_colour_classes(bad, vset), std::invalid_argument);

    ColourClasses bad2;
    bad2.vertex_classes = {{1}, {2}, {3}, {4}};
    bad2.edge_classes = {{{1, 3}, {1, 2}}};  // not a twin pair of edges
    CHECK_THROWS_AS(from_colour_classes(bad2, vset), std::invalid_argument);
  }
}

TEST_CASE("round trips between quadruplets and classes") {
  SUBCASE("exhaustive at p=4") {
    int checked = 0;
    enumerate_all(4, [&](const Pdcg& g) {
      const Pdcg back = from_colour_classes(to_colour_classes(g), g.vertices());
      CHECK(back == g);
      ++checked;
    });
    CHECK(checked == 400);
  }
  SUBCASE("random graphs up to p=10") {
    Rng rng(7);
    for (int p : {2, 4, 6, 8, 10}) {
      for (int rep = 0; rep < 50; ++rep) {
        const Pdcg g = random_graph(p, rng);
        CHECK(from_colour_classes(to_colour_classes(g), g.vertices()) == g);
      }
    }
  }
}

TEST_CASE("quadruplet validation") {
  const PairedVertexSet vset(4);
  SUBCASE("atomic vertex outside the left group") {
    const auto violations = validate_quadruplet(vset, {}, {3}, {});
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].find("left group") != std::string::npos);
  }
  SUBCASE("atomic pair without its twin edge") {
    const auto violations =
        validate_quadruplet(vset, {{1, 2}}, {}, {{1, 2}});
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].find("twin") != std::string::npos);
  }
  SUBCASE("valid quadruplet passes") {
    CHECK(validate_quadruplet(vset, frets_edges(), {2}, {{1, 4}}).empty());
  }
  SUBCASE("validate accepts exactly the reconstructible quadruplets") {
    // Raw enumeration over p=4: E over all pair subsets, LL over left
    // subsets, EE over subsets of E. Valid quadruplets must reconstruct
    // themselves through the class expansion; the count must be 400.
    const EdgeSetPartition part = partition_edges(vset);
    const std::vector<Edge> all(part.all.begin(), part.all.end());
    int valid = 0;
    for (std::uint32_t emask = 0; emask < 64; ++emask) {
      EdgeSet edges;
      for (int k = 0; k < 6; ++k) {
        if (emask >> k & 1) edges.insert(all[k]);
      }
      for (std::uint32_t lmask = 0; lmask < 4; ++lmask) {
        VertexSet ll;
        if (lmask & 1) ll.insert(1);
        if (lmask & 2) ll.insert(2);
        for (std::uint32_t pmask = 0; pmask < 64; ++pmask) {
          if ((pmask & emask) != pmask) continue;  // EE must lie inside E
          EdgeSet ee;
          for (int k = 0; k < 6; ++k) {
            if (pmask >> k & 1) ee.insert(all[k]);
          }
          const bool ok = validate_quadruplet(vset, edges, ll, ee).empty();
          if (ok) {
            ++valid;
            const Pdcg g(vset, edges, ll, ee);
            CHECK(from_colour_classes(to_colour_classes(g), vset) == g);
          } else {
            CHECK_THROWS_AS(Pdcg(vset, edges, ll, ee),
                            std::invalid_argument);
          }
        }
      }
    }
    CHECK(valid == 400);
  }
}

TEST_CASE("model JSON round trip and rejection") {
  const PairedVertexSet vset(6);
  Rng rng(99);
  const Pdcg g = random_graph(6, rng);

  const std::string path = "test_model_roundtrip.json";
  write_model_file(g, path);
  const Pdcg back = read_model_file(path);
  CHECK(back == g);

  // Canonical writer: write(read(f)) is byte-identical.
  write_model_file(back, path + ".2");
  std::ifstream a(path), b(path + ".2");
  const std::string sa((std::istreambuf_iterator<char>(a)),
                       std::istreambuf_iterator<char>());
  const std::string sb((std::istreambuf_iterator<char>(b)),
                       std::istreambuf_iterator<char>());
  CHECK(sa == sb);
  std::remove(path.c_str());
  std::remove((path + ".2").c_str());

  SUBCASE("reader rejects incompatible quadruplets") {
    const std::string bad = "test_model_bad.json";
    std::ofstream out(bad);
    out << R"({"p": 4, "edges": [[1,2]], "LL": [3], "EE": []})";
    out.close();
    CHECK_THROWS_AS(read_model_file(bad), std::invalid_argument);
    std::remove(bad.c_str());
  }
  SUBCASE("reader rejects malformed JSON") {
    const std::string bad = "test_model_parse.json";
    std::ofstream out(bad);
    out << "{ not json";
    out.close();
    CHECK_THROWS_AS(read_model_file(bad), std::invalid_argument);
    std::remove(bad.c_str());
  }
}

TEST_CASE("DOT emission marks twin-pairing classes gray") {
  const PairedVertexSet vset(4);
  const Pdcg g(vset, frets_edges(), {2}, {{1, 4}});
  const std::string dot = model_to_dot(g);
  CHECK(dot.find("graph pdcg {") != std::string::npos);
  CHECK(dot.find("1 [color=gray]") != std::string::npos);  // {1,3} merged
  CHECK(dot.find("2 [color=black]") != std::string::npos);
  CHECK(dot.find("1 -- 2 [color=gray]") != std::string::npos);  // paired
  CHECK(dot.find("1 -- 4;") != std::string::npos);  // atomic edge, black
}
