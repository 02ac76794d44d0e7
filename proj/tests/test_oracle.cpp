#include <algorithm>
#include <random>

#include "doctest.h"
#include "cwdel/oracle.hpp"
#include "support.hpp"

using namespace cwdel;

TEST_CASE("deletion oracle examples") {
  auto c5 = min_deletions_r_colorable(cycle_graph(5), 2, 3);
  CHECK(c5.within_cap);
  CHECK(c5.cost == 1);
  CHECK(testing::is_proper(cycle_graph(5), c5.witness, 2));
  // Lexicographically first optimal deletion set.
  CHECK(c5.witness.deleted() == std::vector<Vertex>{0});

  CHECK(min_deletions_r_colorable(complete_graph(4), 2, 3).cost == 2);
  auto pet = min_deletions_r_colorable(petersen_graph(), 2, 4);
  CHECK(pet.cost == 3);
  CHECK(testing::is_proper(petersen_graph(), pet.witness, 2));

  auto capped = min_deletions_r_colorable(complete_graph(5), 2, 2);
  CHECK_FALSE(capped.within_cap);
}

TEST_CASE("deletion oracle with boundary conditions") {
  auto k3 = complete_graph(3);
  ColoringQuery q;
  q.allowed = {1, 1, all_colors(2)};
  // Vertices 0 and 1 both need colour 1, so one of them goes.
  auto res = min_deletions_r_colorable(k3, 2, 3, q);
  CHECK(res.cost == 1);
  q.rule = {DeletionRule::forbidden, DeletionRule::forbidden, DeletionRule::optional};
  CHECK_FALSE(min_deletions_r_colorable(k3, 2, 3, q).within_cap);
  q.rule = {DeletionRule::forced, DeletionRule::optional, DeletionRule::optional};
  res = min_deletions_r_colorable(k3, 2, 3, q);
  CHECK(res.cost == 1);
  CHECK(res.witness.color[0] == kDeleted);
  q.rule[0] = DeletionRule::forced_free;
  CHECK(min_deletions_r_colorable(k3, 2, 3, q).cost == 0);
}

TEST_CASE("r = 1 matches vertex cover; monotone in r") {
  std::mt19937_64 rng(5);
  for (int n = 1; n <= 5; ++n)
    for (std::uint64_t m = 0; m < testing::num_graph_masks(n); ++m) {
      auto g = testing::graph_from_mask(n, m);
      int c1 = min_deletions_r_colorable(g, 1, n).cost;
      REQUIRE(c1 == min_vertex_cover(g).value);
    }
  for (int i = 0; i < 150; ++i) {
    auto g = testing::random_graph(6 + i % 3, 0.25 + 0.1 * (i % 6), rng);
    int n = g.num_vertices();
    auto r1 = min_deletions_r_colorable(g, 1, n);
    REQUIRE(r1.cost == min_vertex_cover(g).value);
    int prev = r1.cost;
    int chi = chromatic_number(g);
    for (int r = 2; r <= 4; ++r) {
      auto res = min_deletions_r_colorable(g, r, n);
      REQUIRE(res.within_cap);
      REQUIRE(testing::is_proper(g, res.witness, r));
      REQUIRE(res.witness.cost() == res.cost);
      CHECK(res.cost <= prev);
      if (r >= chi) CHECK(res.cost == 0);
      prev = res.cost;
    }
  }
}

TEST_CASE("chromatic number") {
  CHECK(chromatic_number(complete_graph(5)) == 5);
  CHECK(chromatic_number(cycle_graph(7)) == 3);
  CHECK(chromatic_number(cycle_graph(6)) == 2);
  CHECK(chromatic_number(petersen_graph()) == 3);
  CHECK(chromatic_number(Graph(4)) == 1);
  CHECK(chromatic_number(Graph()) == 0);
  CHECK_THROWS_AS(chromatic_number(Graph(kChromaticCap + 1)), too_large);
}

TEST_CASE("list colouring") {
  auto c4 = cycle_graph(4);
  auto col = list_color(c4, 2, {1, all_colors(2), all_colors(2), all_colors(2)});
  REQUIRE(col);
  CHECK((*col)[0] == 1);
  CHECK((*col)[2] == 1);
  CHECK_FALSE(list_color(c4, 2, {1, 1, all_colors(2), all_colors(2)}));
}

TEST_CASE("solve_exact examples") {
  CHECK(solve_exact({ProblemKind::TotalDominatingSet}, path_graph(3)).value == 2);
  CHECK(solve_exact({ProblemKind::MaxCut}, complete_graph(4)).value == 4);
  HittingSetInstance h{2, {{0, 1}}, 1};
  CHECK(solve_exact({ProblemKind::HittingSet}, h).value == 1);
  CHECK(solve_exact({ProblemKind::VertexCover}, Graph()).value == 0);
  CHECK(solve_exact({ProblemKind::DominatingSet}, Graph()).value == 0);
  CHECK(solve_exact({ProblemKind::HittingSet}, HittingSetInstance{}).value == 0);
  CHECK_FALSE(solve_exact({ProblemKind::TotalDominatingSet}, Graph(2)).feasible);
  CHECK(solve_exact({ProblemKind::KrFreeDeletion, 3}, complete_graph(4)).value == 2);
  CHECK(solve_exact({ProblemKind::DominatingSet}, petersen_graph()).value == 3);
  CHECK(solve_exact({ProblemKind::VertexCover}, petersen_graph()).value == 6);
  CHECK(solve_exact({ProblemKind::MaxCut}, petersen_graph()).value == 12);
  CHECK_THROWS_AS(solve_exact({ProblemKind::KrFreeDeletion, 2}, complete_graph(3)), std::invalid_argument);

  CnfFormula sat{2, {{1, 2}, {-1}, {-2, 1, 2}}};
  auto s = solve_exact({ProblemKind::Sat}, sat);
  CHECK(s.feasible);
  CHECK(sat.satisfied_by(s.witness));
  CnfFormula unsat{1, {{1}, {-1}}};
  CHECK_FALSE(solve_exact({ProblemKind::Sat}, unsat).feasible);
}

TEST_CASE("set-problem oracles against subset enumeration") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 120; ++i) {
    int n = 3 + i % 6;
    auto g = testing::random_graph(n, 0.2 + 0.1 * (i % 5), rng);
    auto adj = [&](int v) {
      std::uint32_t m = 0;
      for (Vertex w : g.neighbors(v)) m |= 1u << w;
      return m;
    };
    int best_vc = n, best_ds = n, best_tds = n + 1, best_cut = 0;
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
      int k = std::popcount(s);
      bool vc = true;
      for (auto [u, v] : g.edges()) vc = vc && ((s >> u & 1) || (s >> v & 1));
      if (vc) best_vc = std::min(best_vc, k);
      std::uint32_t closed = 0, open = 0;
      for (int v = 0; v < n; ++v)
        if (s >> v & 1) closed |= adj(v) | (1u << v), open |= adj(v);
      if (closed == (1u << n) - 1) best_ds = std::min(best_ds, k);
      if (open == (1u << n) - 1) best_tds = std::min(best_tds, k);
      int cut = 0;
      for (auto [u, v] : g.edges()) cut += (s >> u & 1) != (s >> v & 1);
      best_cut = std::max(best_cut, cut);
    }
    REQUIRE(min_vertex_cover(g).value == best_vc);
    REQUIRE(min_dominating_set(g).value == best_ds);
    auto tds = min_total_dominating_set(g);
    if (best_tds > n) {
      CHECK_FALSE(tds.feasible);
    } else {
      REQUIRE(tds.value == best_tds);
    }
    REQUIRE(max_cut(g).value == best_cut);
  }
}
