#include <algorithm>

#include "doctest.h"
#include "cwdel/critical.hpp"
#include "cwdel/oracle.hpp"

using namespace cwdel;

namespace {
bool is_cycle(const Graph& g) {
  if (!is_connected(g)) return false;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (g.degree(v) != 2) return false;
  return true;
}
}  // namespace

TEST_CASE("hajos merge") {
  auto c5 = hajos_merge(complete_graph(3), complete_graph(3), {0, 1}, {0, 1});
  CHECK(c5.num_vertices() == 5);
  CHECK(c5.num_edges() == 5);
  CHECK(is_cycle(c5));

  auto k4k4 = hajos_merge(complete_graph(4), complete_graph(4), {0, 1}, {2, 3});
  CHECK(k4k4.num_vertices() == 7);
  CHECK(chromatic_number(k4k4) == 4);

  auto mixed = hajos_merge(petersen_graph(), cycle_graph(5), {0, 1}, {0, 1});
  CHECK(mixed.num_vertices() == 10 + 5 - 1);
  CHECK(mixed.num_edges() == 15 + 5 - 1);

  CHECK_THROWS_AS(hajos_merge(path_graph(3), complete_graph(3), {0, 2}, {0, 1}), graph_error);
  CHECK_THROWS_AS(hajos_merge(complete_graph(3), path_graph(3), {0, 1}, {0, 2}), graph_error);
}

TEST_CASE("critical family examples") {
  auto c5 = build_critical(3, 2);
  CHECK(c5.graph.num_vertices() == 5);
  CHECK(is_cycle(c5.graph));
  auto k4 = build_critical(4, 1);
  CHECK(k4.graph.edges() == complete_graph(4).edges());
  auto h53 = build_critical(5, 3);
  CHECK(h53.graph.num_vertices() == 13);
  CHECK(chromatic_number(h53.graph) == 5);
  for (int v = 0; v < 13; ++v) {
    std::vector<Vertex> keep;
    for (int u = 0; u < 13; ++u)
      if (u != v) keep.push_back(u);
    CHECK(chromatic_number(h53.graph.induced(keep)) == 4);
  }
  auto rep = verify_decomposition(h53.graph, h53.decomposition);
  CHECK(rep.valid);
  CHECK(rep.width == 4);
  CHECK(exact_treewidth(build_critical(4, 2).graph) == 3);
  CHECK(h53.graph.tag(h53.a[3]) == "a[4]");
  CHECK(h53.graph.tag(h53.c[2][1]) == "c[3,2]");
  CHECK(h53.label_order().size() == 13);
}

TEST_CASE("critical family properties") {
  for (int t = 3; t <= 5; ++t)
    for (int gamma = 1; gamma <= 4; ++gamma) {
      auto h = build_critical(t, gamma);
      int n = h.graph.num_vertices();
      REQUIRE(n == (t - 1) * gamma + 1);
      auto order = h.label_order();
      std::sort(order.begin(), order.end());
      CHECK(std::unique(order.begin(), order.end()) == order.end());
      CHECK(static_cast<int>(order.size()) == n);
      auto rep = verify_decomposition(h.graph, h.decomposition);
      REQUIRE(rep.valid);
      CHECK(rep.width == t - 1);
      CHECK(h.decomposition.kind == DecompositionKind::path);
      if (n <= kExactTreewidthCap) CHECK(exact_treewidth(h.graph) == t - 1);
    }
}

TEST_CASE("pick critical") {
  auto c5 = pick_critical(2, 5);
  CHECK(c5.t == 3);
  CHECK(c5.gamma == 2);
  auto h43 = pick_critical(3, 10);
  CHECK(h43.t == 4);
  CHECK(h43.graph.num_vertices() == 10);
  auto k5 = pick_critical(4, 1);
  CHECK(k5.graph.edges() == complete_graph(5).edges());
  for (int r = 2; r <= 4; ++r)
    for (int s = 1; s <= 30; ++s) {
      int n = pick_critical(r, s).graph.num_vertices();
      CHECK(n >= s);
      CHECK(n <= s + r);
    }
}
