#include "cwdel/verify.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "cwdel/decomposition.hpp"
#include "cwdel/gadgets.hpp"

namespace cwdel {

void VerifyReport::add(std::string name, bool ok, std::string detail) {
  pass = pass && ok;
  items.push_back({std::move(name), ok, std::move(detail)});
}

void VerifyReport::merge(const VerifyReport& other, const std::string& prefix) {
  for (const auto& it : other.items) add(prefix + it.name, it.pass, it.detail);
}

const VerifyItem* VerifyReport::find(const std::string& name) const {
  for (const auto& it : items)
    if (it.name == name) return &it;
  return nullptr;
}

std::string VerifyReport::text() const {
  std::ostringstream out;
  for (const auto& it : items) {
    out << (it.pass ? "PASS " : "FAIL ") << it.name;
    if (!it.detail.empty()) out << ": " << it.detail;
    out << '\n';
  }
  out << (pass ? "verdict: pass" : "verdict: fail") << '\n';
  return out.str();
}

std::string VerifyReport::key_values() const {
  std::ostringstream out;
  for (const auto& it : items) out << it.name << '=' << (it.pass ? "pass" : "fail") << '\n';
  out << "verdict=" << (pass ? "pass" : "fail") << '\n';
  return out.str();
}

namespace {

std::string name_of(const Graph& g, Vertex v) {
  if (v >= 0 && v < g.num_vertices() && !g.tag(v).empty()) return g.tag(v);
  return std::to_string(v + 1);
}

std::string edge_name(const Graph& g, Vertex u, Vertex v) { return "{" + name_of(g, u) + "," + name_of(g, v) + "}"; }

// Induced subgraphs of one large graph with a reusable position map.
class Extractor {
 public:
  explicit Extractor(const Graph& g) : g_(g), pos_(g.num_vertices(), -1) {}

  // vertices must be sorted and duplicate free.
  Graph induced(const std::vector<Vertex>& vertices) {
    for (std::size_t i = 0; i < vertices.size(); ++i) pos_[vertices[i]] = static_cast<int>(i);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < vertices.size(); ++i)
      for (Vertex w : g_.neighbors(vertices[i]))
        if (pos_[w] > static_cast<int>(i)) edges.push_back({static_cast<Vertex>(i), pos_[w]});
    for (Vertex v : vertices) pos_[v] = -1;
    return Graph(static_cast<int>(vertices.size()), edges);
  }

 private:
  const Graph& g_;
  std::vector<int> pos_;
};

}  // namespace

VerifyReport verify_dtc_solution(const Graph& g, const Solution& s, int r, long long b) {
  VerifyReport rep;
  if (static_cast<int>(s.color.size()) != g.num_vertices()) {
    rep.add("shape", false,
            "solution has " + std::to_string(s.color.size()) + " entries for " + std::to_string(g.num_vertices()) +
                " vertices");
    return rep;
  }
  rep.add("shape", true);
  std::string bad;
  for (Vertex v = 0; v < g.num_vertices() && bad.empty(); ++v)
    if (s.color[v] < 0 || s.color[v] > r)
      bad = "vertex " + name_of(g, v) + " has color " + std::to_string(s.color[v]);
  rep.add("color-range", bad.empty(), bad);
  bad.clear();
  for (auto [u, v] : g.edges())
    if (s.color[u] != kDeleted && s.color[u] == s.color[v]) {
      bad = "monochromatic edge " + edge_name(g, u, v);
      break;
    }
  rep.add("proper", bad.empty(), bad);
  long long cost = std::count(s.color.begin(), s.color.end(), kDeleted);
  rep.add("budget", cost <= b, std::to_string(cost) + " deletions, budget " + std::to_string(b));
  return rep;
}

VerifyReport verify_reduction_instance(const ReductionInstance& inst) {
  VerifyReport rep;
  const Graph& g = inst.graph;
  int n = g.num_vertices();
  int r = inst.params.r;

  std::vector<char> in_mod(n, 0);
  std::string bad;
  for (const auto& blk : inst.modulator)
    for (Vertex v : blk) {
      if (v < 0 || v >= n) {
        if (bad.empty()) bad = "vertex id " + std::to_string(v + 1) + " out of range";
        continue;
      }
      if (in_mod[v] && bad.empty()) bad = "vertex " + name_of(g, v) + " in two modulator blocks";
      in_mod[v] = 1;
    }
  rep.add("modulator-blocks", bad.empty(), bad.empty() ? std::to_string(inst.modulator.size()) + " blocks" : bad);
  if (!bad.empty()) return rep;

  for (Vertex f : inst.central_clique)
    if ((f < 0 || f >= n || !in_mod[f]) && bad.empty()) bad = "central vertex outside the modulator";
  rep.add("central-clique-in-modulator", bad.empty(), bad);
  bad.clear();

  if (inst.twinclass_modulator) {
    for (std::size_t i = 0; i < inst.modulator.size() && bad.empty(); ++i) {
      try {
        classify_twinclass(g, inst.modulator[i]);
      } catch (const graph_error& e) {
        bad = "block " + std::to_string(i + 1) + ": " + e.what();
      }
    }
    rep.add("modulator-twinclasses", bad.empty(), bad);
    bad.clear();
  }

  std::vector<int> piece_of(n, -1);
  for (std::size_t i = 0; i < inst.packing.size() && bad.empty(); ++i)
    for (Vertex v : inst.packing[i].vertices) {
      if (v < 0 || v >= n) {
        bad = "piece " + std::to_string(i + 1) + " has an out-of-range vertex";
        break;
      }
      if (piece_of[v] >= 0) {
        bad = "pieces " + std::to_string(piece_of[v] + 1) + " and " + std::to_string(i + 1) + " share vertex " +
              name_of(g, v);
        break;
      }
      piece_of[v] = static_cast<int>(i);
    }
  rep.add("packing-disjoint", bad.empty(), bad.empty() ? std::to_string(inst.packing.size()) + " pieces" : bad);
  bool packing_ok = bad.empty();
  bad.clear();
  for (Vertex v = 0; v < n && packing_ok; ++v)
    if (in_mod[v] && piece_of[v] >= 0) {
      bad = "piece " + std::to_string(piece_of[v] + 1) + " meets the modulator at " + name_of(g, v);
      break;
    }
  rep.add("packing-avoids-modulator", packing_ok && bad.empty(), bad);
  bad.clear();

  Extractor ex(g);
  long long cost = 0, unverified = 0;
  std::map<std::pair<std::vector<Edge>, int>, bool> cache;
  for (std::size_t i = 0; i < inst.packing.size() && packing_ok && bad.empty(); ++i) {
    const auto& piece = inst.packing[i];
    cost += piece.claim;
    if (static_cast<int>(piece.vertices.size()) > kPackingOracleLimit) {
      ++unverified;
      continue;
    }
    std::vector<Vertex> vs = piece.vertices;
    std::sort(vs.begin(), vs.end());
    Graph h = ex.induced(vs);
    auto key = std::make_pair(h.edges(), piece.claim);
    auto it = cache.find(key);
    if (it == cache.end()) {
      bool holds = piece.claim <= 0 || !min_deletions_r_colorable(h, r, piece.claim - 1).within_cap;
      it = cache.emplace(std::move(key), holds).first;
    }
    if (!it->second) bad = "piece " + std::to_string(i + 1) + " can be resolved with fewer than " +
                           std::to_string(piece.claim) + " deletions";
  }
  if (bad.empty() && unverified)
    bad = std::to_string(unverified) + " pieces above " + std::to_string(kPackingOracleLimit) +
          " vertices left unverified";
  rep.add("packing-claims", packing_ok && bad.empty(),
          bad.empty() ? "cost " + std::to_string(cost) + ", " + std::to_string(cache.size()) + " distinct pieces" : bad);
  bad.clear();
  rep.add("budget-covers-packing", inst.budget >= cost,
          "budget " + std::to_string(inst.budget) + ", packing " + std::to_string(cost));

  std::vector<int> comp(n, -1);
  for (std::size_t i = 0; i < inst.witnesses.size() && bad.empty(); ++i)
    for (Vertex v : inst.witnesses[i].vertices) {
      if (v < 0 || v >= n || in_mod[v]) {
        bad = "witness " + std::to_string(i + 1) + " holds a modulator or out-of-range vertex";
        break;
      }
      if (comp[v] >= 0) {
        bad = "vertex " + name_of(g, v) + " in two witnesses";
        break;
      }
      comp[v] = static_cast<int>(i);
    }
  for (Vertex v = 0; v < n && bad.empty(); ++v)
    if (!in_mod[v] && comp[v] < 0) bad = "vertex " + name_of(g, v) + " not covered by any witness";
  rep.add("witness-cover", bad.empty(), bad);
  bool cover_ok = bad.empty();
  bad.clear();
  if (cover_ok)
    for (auto [u, v] : g.edges())
      if (!in_mod[u] && !in_mod[v] && comp[u] != comp[v]) {
        bad = "edge " + edge_name(g, u, v) + " joins two witnesses";
        break;
      }
  rep.add("witness-separation", cover_ok && bad.empty(), bad);
  bad.clear();

  int max_width = -1;
  for (std::size_t i = 0; i < inst.witnesses.size() && cover_ok && bad.empty(); ++i) {
    const auto& w = inst.witnesses[i];
    Graph h = ex.induced(w.vertices);
    TreeDecomposition d;
    d.kind = w.decomposition.kind;
    d.tree_edges = w.decomposition.tree_edges;
    for (const auto& bag : w.decomposition.bags) {
      std::vector<Vertex> lb;
      for (Vertex v : bag) {
        auto pos = std::lower_bound(w.vertices.begin(), w.vertices.end(), v);
        if (pos == w.vertices.end() || *pos != v) {
          bad = "witness " + std::to_string(i + 1) + " bag holds a foreign vertex";
          break;
        }
        lb.push_back(static_cast<Vertex>(pos - w.vertices.begin()));
      }
      d.bags.push_back(std::move(lb));
    }
    if (!bad.empty()) break;
    auto dr = verify_decomposition(h, d);
    if (!dr.valid) {
      bad = "witness " + std::to_string(i + 1) + ": " + dr.message();
      break;
    }
    max_width = std::max(max_width, dr.width);
    if (dr.width > inst.declared_width)
      bad = "witness " + std::to_string(i + 1) + " has width " + std::to_string(dr.width) + " above " +
            std::to_string(inst.declared_width);
  }
  rep.add("witness-decompositions", cover_ok && bad.empty(),
          bad.empty() ? std::to_string(inst.witnesses.size()) + " witnesses, max width " + std::to_string(max_width)
                      : bad);
  return rep;
}

namespace {

bool has_clique(const Graph& g, const std::vector<char>& alive, int k) {
  std::function<bool(std::vector<Vertex>&, int)> grow = [&](std::vector<Vertex>& cand, int need) {
    if (need == 0) return true;
    for (std::size_t i = 0; i < cand.size(); ++i) {
      std::vector<Vertex> next;
      for (std::size_t j = i + 1; j < cand.size(); ++j)
        if (g.has_edge(cand[i], cand[j])) next.push_back(cand[j]);
      if (static_cast<int>(next.size()) + 1 >= need && grow(next, need - 1)) return true;
    }
    return false;
  };
  std::vector<Vertex> all;
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (alive[v]) all.push_back(v);
  return grow(all, k);
}

VerifyReport vertex_set_report(const Graph& g, const std::vector<int>& witness, std::vector<char>& in) {
  VerifyReport rep;
  in.assign(g.num_vertices(), 0);
  std::string bad;
  for (int v : witness) {
    if (v < 0 || v >= g.num_vertices()) {
      bad = "vertex id " + std::to_string(v + 1) + " out of range";
      break;
    }
    in[v] = 1;
  }
  rep.add("shape", bad.empty(), bad);
  return rep;
}

void size_item(VerifyReport& rep, long long size, std::optional<long long> bound) {
  if (bound) rep.add("size", size <= *bound, std::to_string(size) + " <= " + std::to_string(*bound) + " required");
}

}  // namespace

VerifyReport verify_problem_solution(const Problem& p, const ProblemInstance& instance, const std::vector<int>& witness,
                                     std::optional<long long> bound) {
  VerifyReport rep;
  switch (p.kind) {
    case ProblemKind::HittingSet: {
      const auto* h = std::get_if<HittingSetInstance>(&instance);
      if (!h) {
        rep.add("shape", false, "expected a hitting-set instance");
        return rep;
      }
      std::set<int> chosen(witness.begin(), witness.end());
      bool range = std::all_of(witness.begin(), witness.end(), [&](int e) { return e >= 0 && e < h->universe; });
      rep.add("shape", range, range ? "" : "element out of range");
      std::string bad;
      for (std::size_t j = 0; j < h->sets.size() && bad.empty(); ++j)
        if (std::none_of(h->sets[j].begin(), h->sets[j].end(), [&](int e) { return chosen.count(e) > 0; }))
          bad = "set " + std::to_string(j + 1) + " is not hit";
      rep.add("hits-all", bad.empty(), bad);
      size_item(rep, static_cast<long long>(chosen.size()), bound ? bound : std::optional<long long>(h->budget));
      return rep;
    }
    case ProblemKind::Sat: {
      const auto* f = std::get_if<CnfFormula>(&instance);
      if (!f) {
        rep.add("shape", false, "expected a formula");
        return rep;
      }
      bool shape = static_cast<int>(witness.size()) == f->num_vars;
      rep.add("shape", shape, shape ? "" : "assignment length mismatch");
      if (!shape) return rep;
      std::string bad;
      for (std::size_t j = 0; j < f->clauses.size() && bad.empty(); ++j)
        if (!f->clause_satisfied(j, witness)) bad = "clause " + std::to_string(j + 1) + " is falsified";
      rep.add("satisfied", bad.empty(), bad);
      return rep;
    }
    default: break;
  }
  const auto* gp = std::get_if<Graph>(&instance);
  if (!gp) {
    rep.add("shape", false, "expected a graph");
    return rep;
  }
  const Graph& g = *gp;
  std::vector<char> in;
  rep = vertex_set_report(g, witness, in);
  if (!rep.pass) return rep;
  long long size = std::count(in.begin(), in.end(), 1);
  std::string bad;
  switch (p.kind) {
    case ProblemKind::VertexCover:
      for (auto [u, v] : g.edges())
        if (!in[u] && !in[v]) {
          bad = "uncovered edge " + edge_name(g, u, v);
          break;
        }
      rep.add("covers-edges", bad.empty(), bad);
      size_item(rep, size, bound);
      break;
    case ProblemKind::DominatingSet:
    case ProblemKind::TotalDominatingSet: {
      bool total = p.kind == ProblemKind::TotalDominatingSet;
      for (Vertex v = 0; v < g.num_vertices() && bad.empty(); ++v) {
        bool dom = !total && in[v];
        for (Vertex w : g.neighbors(v)) dom = dom || in[w];
        if (!dom) bad = "vertex " + name_of(g, v) + " is not dominated";
      }
      rep.add(total ? "totally-dominates" : "dominates", bad.empty(), bad);
      size_item(rep, size, bound);
      break;
    }
    case ProblemKind::MaxCut: {
      long long cut = 0;
      for (auto [u, v] : g.edges()) cut += in[u] != in[v];
      if (bound)
        rep.add("cut", cut >= *bound, std::to_string(cut) + " >= " + std::to_string(*bound) + " required");
      else
        rep.add("cut", true, std::to_string(cut));
      break;
    }
    case ProblemKind::KrFreeDeletion: {
      std::vector<char> alive(g.num_vertices());
      for (Vertex v = 0; v < g.num_vertices(); ++v) alive[v] = !in[v];
      bool clique = has_clique(g, alive, p.r);
      rep.add("kr-free", !clique, clique ? "a K_" + std::to_string(p.r) + " survives" : "");
      size_item(rep, size, bound);
      break;
    }
    default: rep.add("shape", false, "unsupported problem"); break;
  }
  return rep;
}

int treewidth_with_simplicial_reduction(const Graph& g) {
  int n = g.num_vertices();
  std::vector<char> alive(n, 1);
  int lower = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (Vertex v = 0; v < n; ++v) {
      if (!alive[v]) continue;
      std::vector<Vertex> nb;
      for (Vertex w : g.neighbors(v))
        if (alive[w]) nb.push_back(w);
      bool simplicial = true;
      for (std::size_t i = 0; i < nb.size() && simplicial; ++i)
        for (std::size_t j = i + 1; j < nb.size() && simplicial; ++j) simplicial = g.has_edge(nb[i], nb[j]);
      if (!simplicial) continue;
      lower = std::max(lower, static_cast<int>(nb.size()));
      alive[v] = 0;
      changed = true;
    }
  }
  std::vector<Vertex> rest;
  for (Vertex v = 0; v < n; ++v)
    if (alive[v]) rest.push_back(v);
  if (rest.empty()) return lower;
  return std::max(lower, exact_treewidth(g.induced(rest)));
}

namespace {

// All proper partial colorings of a clique of size k: entry 0 is deletion.
std::vector<std::vector<int>> clique_colorings(int k, int r) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(k);
  std::function<void(int, ColorMask)> rec = [&](int i, ColorMask used) {
    if (i == k) {
      out.push_back(cur);
      return;
    }
    for (int c = 0; c <= r; ++c) {
      if (c > 0 && (used >> (c - 1) & 1)) continue;
      cur[i] = c;
      rec(i + 1, c > 0 ? used | ColorMask{1} << (c - 1) : used);
    }
  };
  rec(0, 0);
  return out;
}

struct Boundary {
  ColoringQuery q;
  explicit Boundary(int n, int r) {
    q.allowed.assign(n, all_colors(r));
    q.rule.assign(n, DeletionRule::optional);
  }
  void fix(Vertex v, int color) {
    if (color == kDeleted) {
      q.rule[v] = DeletionRule::forced_free;
    } else {
      q.allowed[v] = ColorMask{1} << (color - 1);
      q.rule[v] = DeletionRule::forbidden;
    }
  }
};

std::string describe(const std::vector<int>& cols) {
  std::string s = "U=(";
  for (std::size_t i = 0; i < cols.size(); ++i) s += (i ? "," : "") + (cols[i] ? std::to_string(cols[i]) : "del");
  return s + ")";
}

std::vector<Vertex> sorted(std::vector<Vertex> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Shared boundary sweep for the arrow-like gadgets: `expect_deletable`
// decides from U's boundary whether v may be deleted at the claimed cost.
void boundary_sweep(VerifyReport& rep, const Graph& g, int r, const std::vector<Vertex>& U, Vertex v, int claim,
                    const std::function<void(Boundary&)>& extra, const std::function<bool(const std::vector<int>&)>&
                                                                     expect_deletable) {
  std::string ext_kept, ext_del, block;
  int cases = 0;
  for (const auto& cols : clique_colorings(static_cast<int>(U.size()), r)) {
    for (int c = 0; c <= r; ++c) {
      Boundary b(g.num_vertices(), r);
      extra(b);
      for (std::size_t i = 0; i < U.size(); ++i) b.fix(U[i], cols[i]);
      if (c == 0)
        b.q.rule[v] = DeletionRule::forced;
      else
        b.fix(v, c);
      auto res = min_deletions_r_colorable(g, r, claim, b.q);
      ++cases;
      bool at_claim = res.within_cap && res.cost == claim;
      if (c > 0 && !at_claim && ext_kept.empty())
        ext_kept = describe(cols) + ", v colored " + std::to_string(c) + ": no extension at cost " +
                   std::to_string(claim);
      if (c == 0) {
        bool want = expect_deletable(cols);
        if (want && !at_claim && ext_del.empty())
          ext_del = describe(cols) + ", v deleted: no extension at cost " + std::to_string(claim);
        if (!want && res.within_cap && block.empty())
          block = describe(cols) + ", v deleted at cost " + std::to_string(res.cost);
      }
    }
  }
  rep.add("extension-v-kept", ext_kept.empty(), ext_kept.empty() ? std::to_string(cases) + " boundary cases" : ext_kept);
  rep.add("extension-v-deleted", ext_del.empty(), ext_del);
  rep.add("blocking", block.empty(), block);
}

void min_item(VerifyReport& rep, const std::string& name, const Graph& g, int r, int expect) {
  auto res = min_deletions_r_colorable(g, r, expect);
  rep.add(name, res.within_cap && res.cost == expect,
          "minimum " + (res.within_cap ? std::to_string(res.cost) : ">" + std::to_string(expect)) + ", expected " +
              std::to_string(expect));
}

void tw_item(VerifyReport& rep, const Graph& g, int r) {
  int tw = treewidth_with_simplicial_reduction(g);
  rep.add("treewidth", tw <= r, "tw " + std::to_string(tw) + ", bound " + std::to_string(r));
}

}  // namespace

VerifyReport check_deletion_edge_lemma(int r) {
  VerifyReport rep;
  GraphBuilder b;
  Vertex u = b.add_vertex("u"), v = b.add_vertex("v");
  DeletionEdge e = add_deletion_edge(b, u, v, r);
  Graph g = b.build();
  rep.add("vertex-count", g.num_vertices() == r + 1, std::to_string(g.num_vertices()) + " vertices");
  bool clique = g.num_edges() == static_cast<std::size_t>((r + 1) * r / 2);
  rep.add("clique", clique);
  min_item(rep, "minimum", g, r, 1);
  // A deletion of an inner vertex moves onto u.
  Solution s{std::vector<int>(g.num_vertices())};
  for (int k = 0; k < r + 1; ++k) s.color[k] = k == 2 ? kDeleted : (k < 2 ? k + 1 : k);
  Solution t = normalize_deletion_edges(s, {e});
  bool moved = t.color[u] == kDeleted && t.cost() == 1 && verify_dtc_solution(g, t, r, 1).pass;
  rep.add("normalization", moved);
  return rep;
}

VerifyReport check_thin_arrow_lemma(int r) {
  VerifyReport rep;
  GraphBuilder b;
  Vertex u = b.add_vertex("u"), v = b.add_vertex("v");
  ThinArrow a = add_thin_arrow(b, u, v, r);
  Graph g = b.build();
  rep.add("vertex-count", g.num_vertices() - 2 == 1 + 2 * (r - 1), std::to_string(g.num_vertices() - 2) + " added");
  boundary_sweep(rep, g, r, {u}, v, 1, [](Boundary&) {},
                 [](const std::vector<int>& cols) { return cols[0] == kDeleted; });
  Graph piece = g.induced(sorted(a.piece.vertices));
  min_item(rep, "piece-minimum", piece, r, 1);
  std::vector<Vertex> internal{a.w, a.v};
  internal.insert(internal.end(), a.tail.inner.begin(), a.tail.inner.end());
  internal.insert(internal.end(), a.head.inner.begin(), a.head.inner.end());
  tw_item(rep, g.induced(sorted(internal)), r);
  return rep;
}

VerifyReport check_thick_arrow_lemma(int r, int level) {
  VerifyReport rep;
  GraphBuilder b;
  std::vector<Vertex> U;
  for (int k = 0; k < r; ++k) U.push_back(b.add_vertex("u" + std::to_string(k + 1)));
  b.add_clique(U);
  Vertex v = b.add_vertex("v");
  ThickArrow a = add_thick_arrow(b, U, v, level, r);
  Graph g = b.build();
  int size = g.num_vertices() - r - 1;
  rep.add("size-bound", g.num_vertices() <= r * r * r + 3 * r + 1,
          std::to_string(g.num_vertices()) + " vertices with U and v, " + std::to_string(size) + " internal");
  Graph inner = g.induced(sorted(a.piece.vertices));
  min_item(rep, "minimum-A-U", inner, r, level);
  boundary_sweep(rep, g, r, U, v, level, [](Boundary&) {}, [level](const std::vector<int>& cols) {
    return std::count(cols.begin(), cols.end(), kDeleted) >= level;
  });
  tw_item(rep, inner, r);
  return rep;
}

VerifyReport check_color_set_lemma(int r, ColorMask c, int u_size) {
  VerifyReport rep;
  GraphBuilder b;
  std::vector<Vertex> F, U;
  for (int s = 1; s <= r; ++s) F.push_back(b.add_vertex("f" + std::to_string(s)));
  b.add_clique(F);
  for (int k = 0; k < u_size; ++k) U.push_back(b.add_vertex("u" + std::to_string(k + 1)));
  b.add_clique(U);
  Vertex v = b.add_vertex("v");
  ColorSetGadget gad = add_color_set_gadget(b, U, v, c, F, r);
  Graph g = b.build();
  int claim = r - std::popcount(c) + 1;
  Graph inner = g.induced(sorted(gad.piece.vertices));
  min_item(rep, "minimum-B-U", inner, r, claim);
  boundary_sweep(
      rep, g, r, U, v, claim,
      [&](Boundary& bd) {
        for (int s = 0; s < r; ++s) bd.fix(F[s], s + 1);
      },
      [c](const std::vector<int>& cols) {
        ColorMask used = 0;
        for (int x : cols)
          if (x > 0) used |= ColorMask{1} << (x - 1);
        return (used & ~c) == 0;
      });
  tw_item(rep, inner, r);
  return rep;
}

VerifyReport check_decoding_gadget_lemma(int r, int indep_size) {
  VerifyReport rep;
  GraphBuilder b;
  DecodingGadget y = add_decoding_gadget(b, indep_size, r);
  Graph g = b.build();
  rep.add("vertex-count", g.num_vertices() == r + indep_size, std::to_string(g.num_vertices()) + " vertices");
  min_item(rep, "minimum", g, r, 1);
  // Cost is counted on the packing piece only: the rest of the independent set
  // is paid for by its color-set gadgets.
  Boundary all(g.num_vertices(), r);
  all.q.rule[y.hat] = DeletionRule::forced;
  for (std::size_t k = 1; k < y.indep.size(); ++k) all.q.rule[y.indep[k]] = DeletionRule::forced_free;
  auto res = min_deletions_r_colorable(g, r, 1, all.q);
  rep.add("hat-with-set", res.within_cap && res.cost == 1);
  std::string bad;
  for (std::size_t k = 1; k < y.indep.size() && bad.empty(); ++k) {
    Boundary one = all;
    one.q.rule[y.indep[k]] = DeletionRule::forbidden;
    if (min_deletions_r_colorable(g, r, 1, one.q).within_cap)
      bad = "hat deletable at cost 1 while indep vertex " + std::to_string(k + 1) + " survives";
  }
  rep.add("hat-needs-set", bad.empty(), bad);
  return rep;
}

namespace {

struct BlockGraph {
  TdsBlock blk;
  Graph g;
};

bool dominated(const Graph& g, Vertex v, std::uint64_t x) {
  for (Vertex w : g.neighbors(v))
    if (x >> w & 1) return true;
  return false;
}

std::uint64_t mask_of(const Vertex* vs, int k) {
  std::uint64_t m = 0;
  for (int i = 0; i < k; ++i) m |= std::uint64_t{1} << vs[i];
  return m;
}

int state_of(const TdsBlock& blk, std::uint64_t x) {
  for (int s = 0; s < 4; ++s) {
    std::uint64_t want = std::uint64_t{1} << blk.p[kTdsStates[s][0]] | std::uint64_t{1} << blk.p[kTdsStates[s][1]];
    if ((x & mask_of(blk.p, 4)) == want) return s;
  }
  return -1;
}

template <class F>
void for_each_subset(const std::vector<Vertex>& universe, int max_size, F&& f) {
  int n = static_cast<int>(universe.size());
  std::vector<int> idx;
  std::function<void(int)> rec = [&](int start) {
    std::uint64_t m = 0;
    for (int i : idx) m |= std::uint64_t{1} << universe[i];
    f(m, static_cast<int>(idx.size()));
    if (static_cast<int>(idx.size()) == max_size) return;
    for (int i = start; i < n; ++i) {
      idx.push_back(i);
      rec(i + 1);
      idx.pop_back();
    }
  };
  rec(0);
}

// Vertices of one block whose neighbourhood lies inside the block.
std::vector<Vertex> internal_targets(const TdsBlock& blk, bool keep_p1, bool keep_p4) {
  std::vector<Vertex> out(blk.q, blk.q + 4);
  out.insert(out.end(), blk.zhat, blk.zhat + 4);
  out.push_back(blk.y1);
  out.push_back(blk.y2);
  out.push_back(blk.p[1]);
  out.push_back(blk.p[2]);
  if (keep_p1) out.push_back(blk.p[0]);
  if (keep_p4) out.push_back(blk.p[3]);
  return out;
}

}  // namespace

VerifyReport check_tds_block_structure() {
  VerifyReport rep;
  GraphBuilder b;
  b.add_vertices(18, "b");
  TdsBlock blk = tds_block_layout(0);
  add_tds_block_edges(b, blk);
  Graph g = b.build();
  auto targets = internal_targets(blk, false, false);
  std::uint64_t zmask = mask_of(blk.z, 4), pmask = mask_of(blk.p, 4);
  std::uint64_t Zmask = zmask | mask_of(blk.zhat, 4) | std::uint64_t{1} << blk.y1 | std::uint64_t{1} << blk.y2;
  std::string y1_missing, small, bounds, shape;
  std::set<int> states;
  long long valid = 0;
  for_each_subset(blk.vertices(), 4, [&](std::uint64_t x, int k) {
    for (Vertex t : targets)
      if (!dominated(g, t, x)) return;
    ++valid;
    if (!(x >> blk.y1 & 1) && y1_missing.empty()) y1_missing = "pattern without y1";
    if (k < 4 && small.empty()) small = "pattern with " + std::to_string(k) + " vertices";
    if ((std::popcount(x & pmask) < 2 || std::popcount(x & Zmask) < 2) && bounds.empty())
      bounds = "pattern with fewer than two path or Z vertices";
    if (k == 4) {
      int s = state_of(blk, x);
      if (s < 0 || (x & zmask) != std::uint64_t{1} << blk.z[s]) {
        if (shape.empty()) shape = "four-vertex pattern outside the states";
      } else {
        states.insert(s);
      }
    }
  });
  rep.add("y1-forced", y1_missing.empty(), y1_missing.empty() ? std::to_string(valid) + " patterns" : y1_missing);
  rep.add("at-least-four", small.empty(), small);
  rep.add("path-and-z-bounds", bounds.empty(), bounds);
  rep.add("state-forced", shape.empty(), shape);
  rep.add("four-states", states.size() == 4, std::to_string(states.size()) + " states realized");
  return rep;
}

VerifyReport check_tds_state_order() {
  VerifyReport rep;
  GraphBuilder b;
  b.add_vertices(36, "b");
  TdsBlock first = tds_block_layout(0), second = tds_block_layout(18);
  add_tds_block_edges(b, first);
  add_tds_block_edges(b, second);
  b.add_edge(first.p[3], second.p[0]);
  Graph g = b.build();
  // p1 of the first and p4 of the second segment see vertices outside the
  // fragment; the cross pair p4|p1 is checked once both sides are fixed.
  auto local_patterns = [&](const TdsBlock& blk) {
    auto targets = internal_targets(blk, false, false);
    std::vector<std::uint64_t> out;
    for_each_subset(blk.vertices(), 4, [&](std::uint64_t x, int k) {
      if (k != 4) return;
      for (Vertex t : targets)
        if (!dominated(g, t, x)) return;
      out.push_back(x);
    });
    return out;
  };
  auto a = local_patterns(first), c = local_patterns(second);
  std::string bad;
  std::set<std::pair<int, int>> seen;
  for (auto x : a)
    for (auto y : c) {
      std::uint64_t both = x | y;
      if (!dominated(g, first.p[3], both) || !dominated(g, second.p[0], both)) continue;
      int s = state_of(first, x), t = state_of(second, y);
      if (s < 0 || t < 0) {
        if (bad.empty()) bad = "pattern outside the states";
        continue;
      }
      seen.insert({s, t});
      if (t > s && bad.empty()) bad = "state " + std::to_string(s + 1) + " followed by " + std::to_string(t + 1);
    }
  std::string pairs;
  for (auto [s, t] : seen) pairs += (pairs.empty() ? "" : " ") + std::to_string(s + 1) + ">" + std::to_string(t + 1);
  rep.add("state-order", bad.empty(), bad.empty() ? "realized " + pairs : bad);
  bool diagonal = true;
  for (int s = 0; s < 4; ++s) diagonal = diagonal && seen.count({s, s});
  rep.add("repeat-allowed", diagonal);
  return rep;
}

}  // namespace cwdel
