#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "cwdel/reductions.hpp"
#include "cwdel/verify.hpp"
#include "support.hpp"

using namespace cwdel;

namespace {

CnfFormula formula(int n, std::vector<std::vector<int>> clauses) {
  CnfFormula f;
  f.num_vars = n;
  f.clauses = std::move(clauses);
  return f;
}

std::vector<int> satisfying(const CnfFormula& f) {
  auto res = solve_sat(f);
  REQUIRE(res.feasible);
  return res.witness;
}

// Independent evaluation of the dense inequality in floating point logs.
bool dense_ok(int p, int r, int p0) {
  double two_r = std::ldexp(1.0, r);
  double lhs = p * std::log2(two_r) + std::lgamma(two_r) / std::log(2.0);
  double rhs = p0 + two_r + two_r * std::log2(static_cast<double>(p));
  return lhs >= rhs - 1e-9;
}

}  // namespace

TEST_CASE("choose_p") {
  CHECK(choose_p_dense(1, 2) == 8);
  CHECK(choose_p_sparse(1, 2) == 3);
  CHECK(choose_p_sparse(2, 2) == 3);
  for (int p0 = 1; p0 <= 6; ++p0) {
    int p = choose_p_dense(p0, 2);
    CHECK(p % 4 == 0);
    CHECK(dense_ok(p, 2, p0));
    if (p > 4) CHECK_FALSE(dense_ok(p - 4, 2, p0));
    int s = choose_p_sparse(p0, 3);
    CHECK(s % 4 == 0);
    CHECK(std::pow(4.0, s) / (s + 1) >= std::ldexp(1.0, p0));
    if (s > 4) CHECK(std::pow(4.0, s - 4) / (s - 3) < std::ldexp(1.0, p0));
  }
  CHECK_THROWS_AS(choose_p_dense(0, 2), std::invalid_argument);
}

TEST_CASE("subset ranking") {
  CHECK(subset_ranking(2) == std::vector<ColorMask>{0, 1, 2, 3});
  CHECK(subset_ranking(3) == std::vector<ColorMask>{0, 1, 2, 4, 3, 5, 6, 7});
}

TEST_CASE("sparse Phi for r=2, p=3") {
  auto pr = make_params(Setting::sparse, formula(1, {{1}}), 2, 1);
  CHECK(pr.p == 3);
  CHECK(phi_size(Setting::sparse, 2, 3) == "12");
  PhiTable phi = build_phi_kappa(Setting::sparse, pr, {0});
  REQUIRE(phi.members.size() == 12);
  CHECK(phi.members.front() == PhiMember{0, 1, 1});
  CHECK(std::is_sorted(phi.members.begin(), phi.members.end(), [](const PhiMember& a, const PhiMember& b) {
    auto rank = [](ColorMask m) { return m == 0 ? 0 : std::countr_zero(m) + 1; };
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [&](ColorMask x, ColorMask y) { return rank(x) < rank(y); });
  }));
  for (const auto& m : phi.members) CHECK(std::count(m.begin(), m.end(), 0u) == 1);
  CHECK(phi.kappa == std::vector<int>{0, 1});
}

TEST_CASE("dense Phi for r=2, p=8") {
  auto pr = make_params(Setting::dense, formula(1, {{1}}), 2, 1);
  CHECK(pr.p == 8);
  CHECK(pr.level_count == std::vector<int>{2, 4, 2});
  PhiTable phi = build_phi_kappa(Setting::dense, pr, {0});
  CHECK(phi.members.size() == 6720);
  CHECK(phi_size(Setting::dense, 2, 8) == "6720");
  std::set<PhiMember> distinct(phi.members.begin(), phi.members.end());
  CHECK(distinct.size() == phi.members.size());
  for (const auto& m : phi.members) {
    int deleted = 0;
    std::vector<int> levels(3);
    for (ColorMask c : m) {
      deleted += 2 - std::popcount(c);
      ++levels[2 - std::popcount(c)];
    }
    CHECK(deleted == 8);
    CHECK(levels == pr.level_count);
  }
}

TEST_CASE("Phi is large enough for every tested parameter pair") {
  for (int r : {2, 3})
    for (int p0 = 1; p0 <= 4; ++p0) {
      CHECK(phi_size_at_least(Setting::sparse, r, choose_p_sparse(p0, r), p0));
      CHECK(phi_size_at_least(Setting::dense, r, choose_p_dense(p0, r), p0));
    }
}

TEST_CASE("group assignments and clause satisfaction") {
  PhiTable phi;
  phi.variables = {2, 3};
  CHECK(phi.assignment_index({0, 0, 1, 0}) == 2);
  CHECK(phi.assignment_index({0, 0, 0, 1}) == 1);
  auto f = formula(4, {{3, -4}, {1}});
  CHECK(phi.satisfies(f, 0, 2));
  CHECK(phi.satisfies(f, 0, 0));
  CHECK_FALSE(phi.satisfies(f, 0, 1));
  CHECK_FALSE(phi.satisfies(f, 1, 3));
}

TEST_CASE("sparse reduction, one variable and one clause") {
  auto f = formula(1, {{1}});
  auto inst = build_sparse_reduction(f, 2, 1);
  CHECK(inst.modulator.size() == 1 * 3 + 2);
  CHECK(inst.graph.num_vertices() == predict_vertices(f, inst.params));
  CHECK(inst.budget == inst.packing_cost + 1);
  auto rep = verify_reduction_instance(inst);
  INFO(rep.text());
  CHECK(rep.pass);

  auto tau = satisfying(f);
  Solution s = forward_solution(inst, f, tau);
  CHECK(testing::is_proper(inst.graph, s, 2));
  CHECK(s.cost() == inst.budget);
  CHECK(verify_dtc_solution(inst.graph, s, 2, inst.budget).pass);
  long long on_mod = 0;
  for (Vertex v : inst.modulator_vertices()) on_mod += s.color[v] == kDeleted;
  CHECK(on_mod == 1);

  Solution broken = s;
  broken.color[inst.central_clique[0]] = kDeleted;
  CHECK_FALSE(verify_dtc_solution(inst.graph, broken, 2, inst.budget).pass);

  CHECK_THROWS_AS(forward_solution(inst, f, {0}), std::invalid_argument);
}

TEST_CASE("sparse reduction, two variables and two clauses") {
  auto f = formula(2, {{1, 2}, {-1, 2}});
  auto inst = build_sparse_reduction(f, 2, 1);
  CHECK(inst.params.t == 2);
  CHECK(inst.modulator.size() == 8);
  CHECK(inst.graph.num_vertices() == predict_vertices(f, inst.params));
  // One subset S of size 3 per group, with 1 + t p/(r+1) = 3 copies.
  CHECK(inst.thin.size() == 2 * 3 * 3 + [&] {
    std::size_t z = 0;
    for (const auto& d : inst.decoders) z += d.arrow >= 0;
    return z;
  }());
  std::size_t expected_pieces = inst.thin.size() + inst.decoders.size();
  for (const auto& g : inst.color_sets) expected_pieces += g.C ? 2 : 3;
  CHECK(inst.packing.size() == expected_pieces);
  CHECK(verify_reduction_instance(inst).pass);
  for (const auto& tau : std::vector<std::vector<int>>{{0, 1}, {1, 1}}) {
    Solution s = forward_solution(inst, f, tau);
    CHECK(s.cost() == inst.budget);
    CHECK(verify_dtc_solution(inst.graph, s, 2, inst.budget).pass);
  }
}

TEST_CASE("size guard") {
  auto f = formula(2, {{1, 2}});
  long long predicted = predict_vertices(f, make_params(Setting::sparse, f, 2, 1));
  try {
    build_sparse_reduction(f, 2, 1, 100);
    FAIL("guard did not fire");
  } catch (const size_guard_error& e) {
    CHECK(e.predicted() == predicted);
  }
  CHECK(predict_vertices(f, make_params(Setting::dense, f, 3, 4)) > kDefaultMaxVertices);
}

TEST_CASE("dense reduction, one variable and one clause") {
  auto f = formula(1, {{1}});
  auto inst = build_dense_reduction(f, 2, 1);
  CHECK(inst.modulator.size() == 1 * 8 + 2);
  CHECK(inst.graph.num_vertices() == predict_vertices(f, inst.params));
  CHECK(inst.budget == inst.packing_cost + 8);
  for (const auto& a : inst.thick) CHECK(static_cast<int>(a.internal().size()) <= 8 + 6 + 1);
  auto rep = verify_reduction_instance(inst);
  INFO(rep.text());
  CHECK(rep.pass);
  Solution s = forward_solution(inst, f, {1});
  CHECK(s.cost() == inst.budget);
  CHECK(verify_dtc_solution(inst.graph, s, 2, inst.budget).pass);
  long long on_mod = 0;
  for (Vertex v : inst.modulator_vertices()) on_mod += s.color[v] == kDeleted;
  CHECK(on_mod == 8);
}

TEST_CASE("VC reduction examples") {
  HittingSetInstance h{2, {{0, 1}}, 1};
  auto inst = build_vc_reduction(h);
  CHECK(inst.graph.num_vertices() == 10);
  CHECK(inst.budget == 5);
  CHECK(min_vertex_cover(inst.graph).value == 5);
  CHECK(verify_reduction_instance(inst).pass);
  REQUIRE(inst.witnesses.size() == 1);
  CHECK(inst.witnesses[0].decomposition.width() == 2);
  CHECK(inst.witnesses[0].decomposition.kind == DecompositionKind::path);

  h.budget = 0;
  auto zero = build_vc_reduction(h);
  CHECK(zero.budget == 4);
  CHECK(min_vertex_cover(zero.graph).value > 4);
}

TEST_CASE("VC forward cover and extraction") {
  HittingSetInstance h{4, {{0, 1, 2}, {2, 3}, {1, 3}}, 2};
  auto inst = build_vc_reduction(h);
  std::vector<int> hs{1, 2};
  auto cover = vc_forward_cover(inst, hs);
  CHECK(static_cast<long long>(cover.size()) == inst.budget);
  CHECK(verify_problem_solution({ProblemKind::VertexCover}, inst.graph, cover, inst.budget).pass);
  CHECK(extract_hitting_set(inst, cover) == hs);

  // Drop element 2 and let the path of {2,3} cover itself with 2p+1 vertices,
  // all a_s included, while its W-neighbours stay free.
  const auto& path = inst.paths[1];
  std::vector<char> in(inst.graph.num_vertices(), 0);
  for (Vertex v : cover) in[v] = 1;
  in[inst.hs_central[2]] = 0;
  std::vector<Vertex> pv = path.a;
  pv.insert(pv.end(), path.b.begin(), path.b.end());
  for (Vertex v : pv) in[v] = 0;
  Graph local = inst.graph.induced(pv);
  std::uint64_t best = 0;
  int best_size = 1000;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pv.size()); ++mask) {
    if ((mask & ((std::uint64_t{1} << path.a.size()) - 1)) != (std::uint64_t{1} << path.a.size()) - 1) continue;
    bool ok = true;
    for (auto [x, z] : local.edges()) ok = ok && ((mask >> x & 1) || (mask >> z & 1));
    if (ok && std::popcount(mask) < best_size) {
      best_size = std::popcount(mask);
      best = mask;
    }
  }
  CHECK(best_size == 2 * 2 + 1);
  for (std::size_t x = 0; x < pv.size(); ++x)
    if (best >> x & 1) in[pv[x]] = 1;
  std::vector<Vertex> y;
  for (Vertex v = 0; v < inst.graph.num_vertices(); ++v)
    if (in[v]) y.push_back(v);
  REQUIRE(verify_problem_solution({ProblemKind::VertexCover}, inst.graph, y).pass);
  REQUIRE(static_cast<long long>(y.size()) <= inst.budget);
  auto got = extract_hitting_set(inst, y);
  CHECK(h.hits_all(got));
  CHECK(static_cast<int>(got.size()) <= h.budget);

  std::vector<Vertex> not_cover(cover.begin() + 1, cover.end());
  CHECK_THROWS_AS(extract_hitting_set(inst, not_cover), std::invalid_argument);
}

TEST_CASE("VC equivalence on random small instances") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 60; ++it) {
    HittingSetInstance h;
    h.universe = 1 + static_cast<int>(rng() % 5);
    int m = 1 + static_cast<int>(rng() % 3);
    for (int j = 0; j < m; ++j) {
      std::set<int> s;
      int k = 1 + static_cast<int>(rng() % std::min(3, h.universe));
      while (static_cast<int>(s.size()) < k) s.insert(static_cast<int>(rng() % h.universe));
      h.sets.emplace_back(s.begin(), s.end());
    }
    h.budget = static_cast<int>(rng() % 3);
    auto inst = build_vc_reduction(h);
    auto hs = min_hitting_set(h);
    auto vc = min_vertex_cover(inst.graph);
    CHECK((hs.value <= h.budget) == (vc.value <= inst.budget));
    CHECK(vc.value == hs.value + inst.packing_cost);
  }
}

TEST_CASE("MaxCut reduction") {
  auto k2 = build_maxcut_reduction(complete_graph(2));
  CHECK(k2.graph.num_vertices() == 5);
  CHECK(max_cut(k2.graph).value == 5);
  auto k3 = build_maxcut_reduction(complete_graph(3));
  CHECK(max_cut(k3.graph).value == 13);
  CHECK(k3.target(1) == 13);
  auto with_mod = build_maxcut_reduction(path_graph(3), {1});
  CHECK(with_mod.modulator == std::vector<Vertex>{1, 3});
  for (int n = 1; n <= 4; ++n)
    for (std::uint64_t mask = 0; mask < testing::num_graph_masks(n); ++mask) {
      Graph g = testing::graph_from_mask(n, mask);
      auto inst = build_maxcut_reduction(g);
      CHECK(max_cut(inst.graph).value == inst.target(n - min_vertex_cover(g).value));
    }
}

TEST_CASE("K_r-free reduction") {
  auto k2 = build_krfree_reduction(complete_graph(2), 3);
  CHECK(k2.graph.num_vertices() == 3);
  CHECK(k2.graph.num_edges() == 3);
  CHECK(min_kr_free_deletion(k2.graph, 3).value == 1);
  auto c4 = build_krfree_reduction(cycle_graph(4), 3);
  CHECK(min_kr_free_deletion(c4.graph, 3).value == 2);
  auto c5 = build_krfree_reduction(cycle_graph(5), 4);
  CHECK(min_kr_free_deletion(c5.graph, 4).value == min_vertex_cover(cycle_graph(5)).value);
  CHECK_THROWS_AS(build_krfree_reduction(cycle_graph(4), 2), std::invalid_argument);

  Graph g = cycle_graph(5);
  auto inst = build_krfree_reduction(g, 4);
  TreeDecomposition d = treewidth_decomposition(g);
  TreeDecomposition lifted = lift_krfree_decomposition(g, inst, d);
  auto rep = verify_decomposition(inst.graph, lifted);
  CHECK(rep.valid);
  CHECK(rep.width == std::max(d.width(), 3));

  // Lifting around a modulator vertex.
  auto pinst = build_krfree_reduction(path_graph(3), 3);
  std::vector<Vertex> rest{0, 2, 3, 4};
  TreeDecomposition pd;
  pd.add_bag({0});
  pd.add_bag({2}, 0);
  TreeDecomposition pl = lift_krfree_decomposition(path_graph(3), pinst, pd, {1});
  std::vector<int> pos(5, -1);
  for (std::size_t i = 0; i < rest.size(); ++i) pos[rest[i]] = static_cast<int>(i);
  TreeDecomposition local = pl;
  for (auto& bag : local.bags)
    for (auto& v : bag) v = pos[v];
  CHECK(verify_decomposition(pinst.graph.induced(rest), local).valid);
}

TEST_CASE("DS doubling") {
  Graph p3 = path_graph(3);
  Graph d = build_ds_doubling(p3);
  CHECK(d.num_vertices() == 6);
  CHECK(min_dominating_set(d).value == 2);
  CHECK(min_total_dominating_set(p3).value == 2);
  Graph k2 = build_ds_doubling(complete_graph(2));
  CHECK(k2.num_edges() == 4);
  CHECK(min_dominating_set(k2).value == 2);
  CHECK(doubling_quotient_is_induced(p3, d));
  CHECK(doubling_quotient_is_induced(petersen_graph(), build_ds_doubling(petersen_graph())));
  CHECK_THROWS_AS(build_ds_doubling(Graph(1)), std::invalid_argument);
  CHECK_THROWS_AS(build_ds_doubling(Graph(3, {{0, 1}})), std::invalid_argument);
}

TEST_CASE("TDS reduction, n=2, m=1") {
  auto f = formula(2, {{1, -2}});
  auto inst = build_tds_reduction(f);
  CHECK(inst.pairs == 1);
  CHECK(inst.segments == 4);
  CHECK(inst.budget == 18);
  CHECK(inst.graph.num_vertices() == 4 * 18 + 4 + 4);
  CHECK(inst.blocks[0][0].vertices().size() == 18);
  auto dr = verify_decomposition(inst.graph, inst.decomposition);
  CHECK(dr.valid);
  CHECK(dr.width <= 1 + 21);
  auto x = forward_tds_solution(inst, {1, 0});
  CHECK(static_cast<long long>(x.size()) == inst.budget);
  CHECK(verify_problem_solution({ProblemKind::TotalDominatingSet}, inst.graph, x, inst.budget).pass);
  CHECK(std::binary_search(x.begin(), x.end(), inst.h1));
  CHECK(std::binary_search(x.begin(), x.end(), inst.h1p));
  for (const auto& blk : inst.blocks[0]) {
    int on_p = 0, on_z = 0;
    for (Vertex v : blk.p) on_p += std::binary_search(x.begin(), x.end(), v);
    for (Vertex v : blk.z) on_z += std::binary_search(x.begin(), x.end(), v);
    on_z += std::binary_search(x.begin(), x.end(), blk.y1) + std::binary_search(x.begin(), x.end(), blk.y2);
    CHECK(on_p == 2);
    CHECK(on_z == 2);
  }
  CHECK_THROWS_AS(forward_tds_solution(inst, {0, 1}), std::invalid_argument);
}

TEST_CASE("TDS reduction pads odd variable counts") {
  auto f = formula(3, {{1, 3}, {-2}});
  auto inst = build_tds_reduction(f);
  CHECK(inst.formula.num_vars == 4);
  CHECK(inst.pairs == 2);
  CHECK(inst.segments == 2 * 7);
  auto x = forward_tds_solution(inst, {0, 0, 1});
  CHECK(static_cast<long long>(x.size()) == inst.budget);
  CHECK(verify_problem_solution({ProblemKind::TotalDominatingSet}, inst.graph, x, inst.budget).pass);
  auto dr = verify_decomposition(inst.graph, inst.decomposition);
  CHECK(dr.valid);
  CHECK(dr.width <= 2 + 21);
}

TEST_CASE("TDS local enforcement") {
  CHECK(check_tds_block_structure().pass);
  CHECK(check_tds_state_order().pass);
}
