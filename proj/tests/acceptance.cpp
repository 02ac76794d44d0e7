// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <sys/resource.h>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "cwdel/critical.hpp"
#include "cwdel/cwexpr.hpp"
#include "cwdel/dp_solver.hpp"
#include "cwdel/reductions.hpp"
#include "cwdel/verify.hpp"

using namespace cwdel;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first failure; later ones only bump the counter.
class Tally {
 public:
  void check(bool ok, const std::string& what) {
    if (ok) return;
    if (failures_++ == 0) first_ = what;
  }
  Outcome done(const std::string& summary) const {
    if (failures_ == 0) return {true, summary};
    return {false, std::to_string(failures_) + " failure(s); first: " + first_};
  }

 private:
  int failures_ = 0;
  std::string first_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1fs", s);
  return buf;
}

bool proper(const Graph& g, const Solution& s, int r) { return verify_dtc_solution(g, s, r, g.num_vertices()).pass; }

Graph graph_from_mask(int n, std::uint64_t mask) {
  std::vector<Edge> edges;
  int bit = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v, ++bit)
      if (mask >> bit & 1) edges.push_back({u, v});
  return Graph(n, edges);
}

CnfFormula formula(int n, std::vector<std::vector<int>> clauses) {
  CnfFormula f;
  f.num_vars = n;
  f.clauses = std::move(clauses);
  return f;
}

std::vector<std::vector<int>> satisfying_assignments(const CnfFormula& f) {
  std::vector<std::vector<int>> out;
  for (int m = 0; m < (1 << f.num_vars); ++m) {
    std::vector<int> tau(f.num_vars);
    for (int v = 0; v < f.num_vars; ++v) tau[v] = m >> v & 1;
    if (f.satisfied_by(tau)) out.push_back(tau);
  }
  return out;
}

Outcome dp_oracle_equivalence() {
  auto t0 = std::chrono::steady_clock::now();
  Tally t;
  std::mt19937_64 rng(20240601);
  for (int it = 0; it < 500; ++it) {
    int n = 1 + static_cast<int>(rng() % 10);
    int k = 1 + static_cast<int>(rng() % 3);
    int r = 1 + static_cast<int>(rng() % 3);
    std::uint64_t seed = rng();
    CliqueExpr e = random_expr(n, k, seed);
    Graph g = evaluate_expr(e).graph;
    DpResult res = solve_expression(e, r);
    DtcResult oracle = min_deletions_r_colorable(g, r, g.num_vertices());
    std::string id = "n=" + std::to_string(n) + " k=" + std::to_string(k) + " r=" + std::to_string(r) +
                     " seed=" + std::to_string(seed);
    t.check(oracle.within_cap && static_cast<int>(res.min_cost) == oracle.cost, "cost mismatch at " + id);
    t.check(proper(g, res.witness, r) && res.witness.cost() == static_cast<int>(res.min_cost), "bad witness at " + id);
  }
  double s = seconds_since(t0);
  t.check(s < 120, "runtime " + fmt_seconds(s));
  return t.done("500 expressions agree with the oracle in " + fmt_seconds(s));
}

Outcome recurrence_examples() {
  Tally t;
  auto base = solve_expression(parse_expr("intro(1,a)"), 2);
  t.check(base.root.size() == 4 && base.root[0] == 1 && base.root[1] == 0 && base.root[2] == 0 &&
              base.root[3] == kInf && base.min_cost == 0,
          "intro table");
  auto k3 = solve_expression(
      parse_expr("join(1,2,union(relab(2,1,join(1,2,union(intro(1,a),intro(2,b)))),intro(2,c)))"), 2);
  t.check(k3.min_cost == 1, "triangle cost");
  auto k2 = solve_expression(parse_expr("join(1,2,union(intro(1,a),intro(2,b)))"), 1);
  t.check(k2.root[DpTable::make(1, {0, 0})] == 2 && k2.root[DpTable::make(1, {1, 0})] == 1 &&
              k2.root[DpTable::make(1, {0, 1})] == 1 && k2.root[DpTable::make(1, {1, 1})] == kInf,
          "join table");
  auto rel = solve_expression(parse_expr("relab(1,2,union(intro(1,a),intro(1,b)))"), 2);
  bool label1_empty = true;
  for (LabelState f = 0; f < rel.root.size(); ++f)
    if (rel.root.label_part(f, 1) && rel.root[f] != kInf) label1_empty = false;
  t.check(label1_empty && rel.root[DpTable::make(2, {0, 3})] == 0, "relabel table");
  auto one = solve_expression(parse_expr("relab(1,2,intro(1,a))"), 2);
  t.check(one.root[DpTable::make(2, {0, 3})] == kInf, "|f(i)| above the label class size is finite");
  return t.done("base, join and relabel tables match, oversized f(i) is infinite");
}

Outcome critical_family() {
  auto t0 = std::chrono::steady_clock::now();
  Tally t;
  for (int tt = 3; tt <= 5; ++tt)
    for (int gamma = 1; gamma <= 4; ++gamma) {
      std::string id = "t=" + std::to_string(tt) + " gamma=" + std::to_string(gamma);
      CriticalGraph h = build_critical(tt, gamma);
      int n = h.graph.num_vertices();
      t.check(n == (tt - 1) * gamma + 1, "vertex count at " + id);
      t.check(chromatic_number(h.graph) == tt, "chromatic number at " + id);
      for (Vertex v = 0; v < n; ++v) {
        std::vector<Vertex> rest;
        for (Vertex w = 0; w < n; ++w)
          if (w != v) rest.push_back(w);
        t.check(chromatic_number(h.graph.induced(rest)) == tt - 1, "not critical at " + id);
      }
      auto rep = verify_decomposition(h.graph, h.decomposition);
      t.check(rep.valid && rep.width == tt - 1 && h.decomposition.kind == DecompositionKind::path,
              "decomposition at " + id);
    }
  double s = seconds_since(t0);
  t.check(s < 300, "runtime " + fmt_seconds(s));
  return t.done("12 graphs critical with path decompositions of width t-1 in " + fmt_seconds(s));
}

Outcome gadget_lemmas() {
  Tally t;
  int checks = 0;
  auto take = [&](const VerifyReport& rep, const std::string& id) {
    ++checks;
    std::string first;
    for (const auto& item : rep.items)
      if (!item.pass && first.empty()) first = item.name + " " + item.detail;
    t.check(rep.pass, id + ": " + first);
  };
  for (int r : {2, 3}) {
    std::string rid = "r=" + std::to_string(r);
    take(check_deletion_edge_lemma(r), "deletion edge " + rid);
    take(check_thin_arrow_lemma(r), "thin arrow " + rid);
    take(check_decoding_gadget_lemma(r, 4), "decoding gadget " + rid);
    for (int l = 1; l <= r; ++l) take(check_thick_arrow_lemma(r, l), "thick arrow " + rid + " l=" + std::to_string(l));
    for (ColorMask c = 0; c < all_colors(r); ++c)
      for (int u : std::set<int>{std::max(1, std::popcount(c)), r})
        take(check_color_set_lemma(r, c, u),
             "color set " + rid + " C=" + std::to_string(c) + " |U|=" + std::to_string(u));
  }
  return t.done(std::to_string(checks) + " gadget checks, all boundary conditions confirmed");
}

Outcome vc_equivalence() {
  Tally t;
  std::vector<HittingSetInstance> cases;
  // Corner cases: zero budget, budget covering everything, repeated sets,
  // singletons, disjoint triples, unused elements.
  cases.push_back({1, {{0}}, 0});
  cases.push_back({1, {{0}}, 1});
  cases.push_back({3, {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}}, 1});
  cases.push_back({6, {{0, 1, 2}, {3, 4, 5}}, 1});
  cases.push_back({6, {{0, 1, 2}, {3, 4, 5}}, 2});
  cases.push_back({6, {{0}, {1}, {2}, {3}, {4}}, 4});
  cases.push_back({6, {{0}, {1}, {2}, {3}, {4}}, 5});
  cases.push_back({6, {{0, 5}, {1, 5}, {2, 5}, {3, 5}, {4, 5}}, 1});
  cases.push_back({6, {{0, 1, 2}, {2, 3, 4}, {4, 5, 0}, {1, 3, 5}, {0, 3}}, 2});
  cases.push_back({6, {{0, 1, 2}, {2, 3, 4}, {4, 5, 0}, {1, 3, 5}, {0, 3}}, 6});
  std::mt19937_64 rng(99);
  for (int it = 0; it < 200; ++it) {
    HittingSetInstance h;
    h.universe = 1 + static_cast<int>(rng() % 6);
    int m = 1 + static_cast<int>(rng() % 5);
    for (int j = 0; j < m; ++j) {
      std::set<int> s;
      int k = 1 + static_cast<int>(rng() % std::min(3, h.universe));
      while (static_cast<int>(s.size()) < k) s.insert(static_cast<int>(rng() % h.universe));
      h.sets.emplace_back(s.begin(), s.end());
    }
    h.budget = static_cast<int>(rng() % 4);
    cases.push_back(std::move(h));
  }
  int yes = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& h = cases[i];
    std::string id = "case " + std::to_string(i + 1);
    ReductionInstance inst = build_vc_reduction(h);
    long long sum_p = 0;
    for (const auto& s : h.sets) sum_p += static_cast<long long>(s.size());
    t.check(inst.budget == h.budget + 2 * sum_p, "budget at " + id);
    ExactResult hs = min_hitting_set(h);
    ExactResult vc = min_vertex_cover(inst.graph);
    bool hs_yes = hs.value <= h.budget, vc_yes = vc.value <= inst.budget;
    t.check(hs_yes == vc_yes, "equivalence at " + id);
    yes += hs_yes;
    std::vector<int> chosen = hs.witness;
    auto cover = vc_forward_cover(inst, chosen);
    t.check(verify_problem_solution({ProblemKind::VertexCover}, inst.graph, cover).pass &&
                static_cast<long long>(cover.size()) == hs.value + 2 * sum_p,
            "forward cover at " + id);
    if (hs_yes) {
      std::sort(chosen.begin(), chosen.end());
      t.check(extract_hitting_set(inst, cover) == chosen, "round trip at " + id);
      auto from_oracle = extract_hitting_set(inst, vc.witness);
      t.check(h.hits_all(from_oracle) && static_cast<int>(from_oracle.size()) <= h.budget,
              "extraction from an optimal cover at " + id);
    }
  }
  return t.done(std::to_string(cases.size()) + " instances (" + std::to_string(yes) +
                " yes) equivalent, extraction round-trips");
}

Outcome maxcut_krfree() {
  Tally t;
  int graphs = 0;
  for (int n = 1; n <= 5; ++n)
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n * (n - 1) / 2)); ++mask) {
      Graph g = graph_from_mask(n, mask);
      ++graphs;
      std::string id = "n=" + std::to_string(n) + " mask=" + std::to_string(mask);
      long long vc = min_vertex_cover(g).value;
      MaxCutInstance mc = build_maxcut_reduction(g);
      long long cut = max_cut(mc.graph).value;
      // Best b with a cover of size |V| - b is |V| - vc.
      t.check(cut == mc.target(n - vc), "max cut at " + id);
      for (int r : {3, 4}) {
        KrFreeInstance kr = build_krfree_reduction(g, r);
        t.check(min_kr_free_deletion(kr.graph, r).value == vc, "K" + std::to_string(r) + "-free at " + id);
      }
    }
  return t.done(std::to_string(graphs) + " graphs: cut 4|E|+b iff cover |V|-b, K3/K4-free optimum equals VC");
}

Outcome ds_doubling() {
  Tally t;
  std::mt19937_64 rng(31337);
  int done = 0;
  while (done < 300) {
    int n = 2 + static_cast<int>(rng() % 7);
    std::uint64_t mask = rng() & ((std::uint64_t{1} << (n * (n - 1) / 2)) - 1);
    Graph g = graph_from_mask(n, mask);
    if (!is_connected(g)) continue;
    ++done;
    std::string id = "n=" + std::to_string(n) + " mask=" + std::to_string(mask);
    Graph d = build_ds_doubling(g);
    t.check(min_dominating_set(d).value == min_total_dominating_set(g).value, "DS vs TDS at " + id);
    t.check(doubling_quotient_is_induced(g, d), "quotient at " + id);
  }
  return t.done("300 connected graphs: DS of the doubling equals TDS, quotient induced");
}

long long peak_rss_kb() {
  rusage u{};
  getrusage(RUSAGE_SELF, &u);
  return u.ru_maxrss;
}

Outcome desk_scale_reductions() {
  Tally t;
  std::vector<CnfFormula> sparse_cases = {
      formula(1, {{1}}),          formula(1, {{-1}}),        formula(1, {{1}, {1}}),
      formula(2, {{1, 2}}),       formula(2, {{-1, 2}, {1, -2}}), formula(2, {{1, 2}, {-1, 2}}),
      formula(2, {{-1, -2}, {1}}),
  };
  int forwards = 0;
  auto run = [&](Setting s, const CnfFormula& f, const std::string& id) {
    ReductionInstance inst = s == Setting::dense ? build_dense_reduction(f, 2, 1) : build_sparse_reduction(f, 2, 1);
    t.check(inst.graph.num_vertices() == predict_vertices(f, inst.params), "predicted size at " + id);
    VerifyReport rep = verify_reduction_instance(inst);
    std::string first;
    for (const auto& item : rep.items)
      if (!item.pass && first.empty()) first = item.name + " " + item.detail;
    t.check(rep.pass, "verify at " + id + ": " + first);
    long long expected_x = s == Setting::dense ? 1LL * inst.params.t * inst.params.p * 2 + 2
                                               : 1LL * inst.params.t * inst.params.p + 2;
    t.check(static_cast<long long>(inst.modulator_vertices().size()) == expected_x, "modulator size at " + id);
    for (const auto& tau : satisfying_assignments(f)) {
      Solution sol = forward_solution(inst, f, tau);
      ++forwards;
      t.check(sol.cost() == inst.budget && verify_dtc_solution(inst.graph, sol, 2, inst.budget).pass,
              "forward solution at " + id);
    }
  };
  for (std::size_t i = 0; i < sparse_cases.size(); ++i) run(Setting::sparse, sparse_cases[i], "sparse " + std::to_string(i + 1));
  auto t0 = std::chrono::steady_clock::now();
  run(Setting::dense, formula(1, {{1}}), "dense 1");
  run(Setting::dense, formula(1, {{-1}}), "dense 2");
  double s = seconds_since(t0);
  long long rss = peak_rss_kb();
  t.check(s < 600, "dense runtime " + fmt_seconds(s));
  t.check(rss < 4LL * 1024 * 1024, "peak memory " + std::to_string(rss / 1024) + " MB");
  return t.done(std::to_string(sparse_cases.size()) + " sparse and 2 dense instances verify, " +
                std::to_string(forwards) + " forward solutions at cost b; dense " + fmt_seconds(s) + ", peak " +
                std::to_string(rss / 1024) + " MB");
}

Outcome tds_reduction() {
  Tally t;
  for (const auto& f : {formula(2, {{1, -2}}), formula(2, {{1, 2}, {-1, -2}})}) {
    std::string id = "m=" + std::to_string(f.clauses.size());
    TdsInstance inst = build_tds_reduction(f);
    long long n = 2, m = static_cast<long long>(f.clauses.size());
    t.check(inst.budget == 4 * m * (3 * n / 2 + 1) * (n / 2) + 2, "budget at " + id);
    auto dr = verify_decomposition(inst.graph, inst.decomposition);
    t.check(dr.valid && inst.decomposition.kind == DecompositionKind::path && dr.width <= n / 2 + 21,
            "decomposition at " + id);
    for (const auto& tau : satisfying_assignments(f)) {
      auto x = forward_tds_solution(inst, tau);
      t.check(static_cast<long long>(x.size()) == inst.budget &&
                  verify_problem_solution({ProblemKind::TotalDominatingSet}, inst.graph, x, inst.budget).pass,
              "forward solution at " + id);
    }
  }
  t.check(check_tds_block_structure().pass, "block structure");
  t.check(check_tds_state_order().pass, "state order");
  return t.done("m=1,2 forward solutions at 4m(3n/2+1)(n/2)+2, widths within n/2+21, block enumeration confirmed");
}

Outcome parameter_selection() {
  Tally t;
  t.check(choose_p_dense(1, 2) == 8, "choose_p_dense(1,2)");
  t.check(choose_p_sparse(1, 2) == 3, "choose_p_sparse(1,2)");
  int pairs = 0;
  for (int r : {2, 3})
    for (int p0 = 1; p0 <= 4; ++p0) {
      ++pairs;
      std::string id = "r=" + std::to_string(r) + " p0=" + std::to_string(p0);
      t.check(phi_size_at_least(Setting::sparse, r, choose_p_sparse(p0, r), p0), "sparse |Phi| at " + id);
      t.check(phi_size_at_least(Setting::dense, r, choose_p_dense(p0, r), p0), "dense |Phi| at " + id);
    }
  auto sp = make_params(Setting::sparse, formula(1, {{1}}), 2, 1);
  t.check(build_phi_kappa(Setting::sparse, sp, {0}).members.size() == 12 && phi_size(Setting::sparse, 2, 3) == "12",
          "sparse enumeration");
  auto dp = make_params(Setting::dense, formula(1, {{1}}), 2, 1);
  t.check(build_phi_kappa(Setting::dense, dp, {0}).members.size() == 6720 && phi_size(Setting::dense, 2, 8) == "6720",
          "dense enumeration");
  return t.done("p = 8 dense, 3 sparse; |Phi| >= 2^p0 for " + std::to_string(pairs) +
                " (r,p0) pairs in both settings; enumerations 12 and 6720");
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria = {
      {"dp-oracle-equivalence", dp_oracle_equivalence},
      {"recurrence-examples", recurrence_examples},
      {"critical-family", critical_family},
      {"gadget-lemmas", gadget_lemmas},
      {"vc-reduction-equivalence", vc_equivalence},
      {"maxcut-krfree-corollaries", maxcut_krfree},
      {"ds-doubling", ds_doubling},
      {"desk-scale-reductions", desk_scale_reductions},
      {"tds-reduction", tds_reduction},
      {"parameter-selection", parameter_selection},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << ' ' << i + 1 << ' ' << criteria[i].name << ": " << o.detail << " ["
              << fmt_seconds(seconds_since(t0)) << "]" << std::endl;
  }
  return all ? 0 : 1;
}
