#include <algorithm>
#include <set>
#include <stdexcept>

#include "cwdel/reductions.hpp"

namespace cwdel {

ReductionInstance build_vc_reduction(const HittingSetInstance& h) {
  h.check();
  ReductionInstance inst;
  inst.kind = ReductionKind::vc;
  inst.params.r = 1;
  inst.declared_width = 2;
  GraphBuilder b;
  for (int i = 0; i < h.universe; ++i) {
    inst.hs_central.push_back(b.add_vertex("w" + std::to_string(i + 1)));
    inst.modulator.push_back({inst.hs_central.back()});
  }
  long long sum = 0;
  for (std::size_t j = 0; j < h.sets.size(); ++j) {
    const auto& set = h.sets[j];
    int p = static_cast<int>(set.size());
    sum += p;
    TrianglePath path;
    path.set = static_cast<int>(j);
    std::string tag = "P[" + std::to_string(j + 1) + "]/";
    for (int s = 0; s < p; ++s) path.a.push_back(b.add_vertex(tag + "a" + std::to_string(s + 1)));
    for (int s = 0; s < 2 * p + 2; ++s) path.b.push_back(b.add_vertex(tag + "b" + std::to_string(s + 1)));
    for (int s = 0; s + 1 < 2 * p + 2; ++s) b.add_edge(path.b[s], path.b[s + 1]);
    std::vector<std::vector<Vertex>> bags;
    for (int s = 0; s < p; ++s) {
      // a_s with b_{2s}, b_{2s+1} in 1-based names.
      Vertex x = path.a[s], y = path.b[2 * s + 1], z = path.b[2 * s + 2];
      b.add_clique({x, y, z});
      path.w.push_back(inst.hs_central[set[s]]);
      b.add_edge(x, path.w.back());
      inst.packing.push_back({{x, y, z}, 2});
      bags.push_back({path.b[2 * s], path.b[2 * s + 1]});
      bags.push_back({x, y, z});
    }
    bags.push_back({path.b[2 * p], path.b[2 * p + 1]});
    ComponentWitness w;
    w.vertices = path.a;
    w.vertices.insert(w.vertices.end(), path.b.begin(), path.b.end());
    std::sort(w.vertices.begin(), w.vertices.end());
    w.decomposition = make_path_decomposition(std::move(bags));
    inst.witnesses.push_back(std::move(w));
    inst.paths.push_back(std::move(path));
  }
  inst.graph = b.build();
  for (auto& e : inst.packing) std::sort(e.vertices.begin(), e.vertices.end());
  inst.packing_cost = 2 * sum;
  inst.budget = h.budget + 2 * sum;
  return inst;
}

namespace {

// Y'_P for the path: everything but a_{s*}, b_{2s} up to s*, b_{2s+1} from s*.
std::vector<Vertex> path_cover(const TrianglePath& path, int star) {
  std::vector<Vertex> out;
  int p = static_cast<int>(path.a.size());
  for (int s = 0; s < p; ++s) {
    if (s != star) out.push_back(path.a[s]);
    if (s <= star) out.push_back(path.b[2 * s + 1]);
    if (s >= star) out.push_back(path.b[2 * s + 2]);
  }
  return out;
}

void check_cover(const Graph& g, const std::vector<char>& in) {
  for (auto [u, v] : g.edges())
    if (!in[u] && !in[v])
      throw std::invalid_argument("not a vertex cover: edge " + std::to_string(u + 1) + "-" + std::to_string(v + 1));
}

}  // namespace

std::vector<Vertex> vc_forward_cover(const ReductionInstance& inst, const std::vector<int>& hitting_set) {
  std::vector<char> hit(inst.hs_central.size(), 0);
  std::vector<Vertex> out;
  for (int e : hitting_set) {
    if (hit.at(e)) continue;
    hit[e] = 1;
    out.push_back(inst.hs_central[e]);
  }
  for (const auto& path : inst.paths) {
    int star = -1;
    for (std::size_t s = 0; s < path.a.size() && star < 0; ++s)
      if (hit[path.w[s]]) star = static_cast<int>(s);
    if (star < 0) throw std::invalid_argument("element set does not hit every set");
    auto part = path_cover(path, star);
    out.insert(out.end(), part.begin(), part.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> extract_hitting_set(const ReductionInstance& inst, const std::vector<Vertex>& cover) {
  const Graph& g = inst.graph;
  std::vector<char> in(g.num_vertices(), 0);
  for (Vertex v : cover) in.at(v) = 1;
  check_cover(g, in);
  long long size = std::count(in.begin(), in.end(), 1);
  if (size > inst.budget) throw std::invalid_argument("vertex cover exceeds the budget");

  auto inside = [&](const TrianglePath& path) {
    long long c = 0;
    for (Vertex v : path.a) c += in[v];
    for (Vertex v : path.b) c += in[v];
    return c;
  };
  while (true) {
    const TrianglePath* bad = nullptr;
    for (const auto& path : inst.paths)
      if (inside(path) > 2 * static_cast<long long>(path.a.size())) {
        bad = &path;
        break;
      }
    if (!bad) break;
    int star = -1;
    for (std::size_t s = 0; s < bad->a.size() && star < 0; ++s)
      if (in[bad->w[s]]) star = static_cast<int>(s);
    if (star < 0) {
      in[bad->w[0]] = 1;
      star = 0;
    }
    for (Vertex v : bad->a) in[v] = 0;
    for (Vertex v : bad->b) in[v] = 0;
    for (Vertex v : path_cover(*bad, star)) in[v] = 1;
  }
  check_cover(g, in);
  std::vector<int> h;
  for (std::size_t i = 0; i < inst.hs_central.size(); ++i)
    if (in[inst.hs_central[i]]) h.push_back(static_cast<int>(i));
  if (static_cast<long long>(h.size()) > inst.budget - inst.packing_cost)
    throw std::logic_error("repaired cover yields a hitting set above t");
  return h;
}

MaxCutInstance build_maxcut_reduction(const Graph& g, const std::vector<Vertex>& modulator) {
  MaxCutInstance out;
  GraphBuilder b;
  int n = g.num_vertices();
  for (Vertex v = 0; v < n; ++v) b.add_vertex(g.tag(v));
  out.x = b.add_vertex("x");
  for (Vertex v = 0; v < n; ++v) b.add_edge(out.x, v);
  for (auto [u, v] : g.edges()) {
    std::string tag = "e[" + std::to_string(u + 1) + "," + std::to_string(v + 1) + "]";
    Vertex eu = b.add_vertex(tag + "/u"), ev = b.add_vertex(tag + "/v");
    b.add_edge(out.x, eu);
    b.add_edge(out.x, ev);
    b.add_edge(eu, ev);
    b.add_edge(eu, u);
    b.add_edge(ev, v);
  }
  out.graph = b.build();
  out.modulator = modulator;
  out.modulator.push_back(out.x);
  std::sort(out.modulator.begin(), out.modulator.end());
  out.edges_of_source = static_cast<long long>(g.num_edges());
  return out;
}

KrFreeInstance build_krfree_reduction(const Graph& g, int r) {
  if (r < 3) throw std::invalid_argument("K_r-free reduction needs r >= 3");
  KrFreeInstance out;
  out.r = r;
  GraphBuilder b;
  for (Vertex v = 0; v < g.num_vertices(); ++v) b.add_vertex(g.tag(v));
  for (auto [u, v] : g.edges()) {
    std::vector<Vertex> c{u, v};
    std::string tag = "k[" + std::to_string(u + 1) + "," + std::to_string(v + 1) + "]/";
    for (int k = 0; k < r - 2; ++k) c.push_back(b.add_vertex(tag + std::to_string(k + 1)));
    b.add_clique(c);
    out.edge_cliques.push_back(std::move(c));
  }
  out.graph = b.build();
  return out;
}

TreeDecomposition lift_krfree_decomposition(const Graph& g, const KrFreeInstance& inst, const TreeDecomposition& d,
                                            const std::vector<Vertex>& modulator) {
  std::vector<char> in_mod(g.num_vertices(), 0);
  for (Vertex v : modulator) in_mod.at(v) = 1;
  TreeDecomposition out = d;
  out.kind = DecompositionKind::tree;
  for (const auto& c : inst.edge_cliques) {
    std::vector<Vertex> bag, ends;
    for (std::size_t k = 0; k < c.size(); ++k)
      if (k >= 2 || !in_mod[c[k]]) bag.push_back(c[k]);
    for (std::size_t k = 0; k < 2; ++k)
      if (!in_mod[c[k]]) ends.push_back(c[k]);
    int parent = -1;
    for (std::size_t i = 0; i < out.bags.size() && parent < 0; ++i) {
      bool ok = true;
      for (Vertex v : ends) ok = ok && std::binary_search(out.bags[i].begin(), out.bags[i].end(), v);
      if (ok) parent = static_cast<int>(i);
    }
    if (parent < 0 && !out.bags.empty()) throw std::invalid_argument("decomposition misses an edge of the source");
    out.add_bag(bag, parent);
  }
  return out;
}

Graph build_ds_doubling(const Graph& g) {
  int n = g.num_vertices();
  if (n < 2 || !is_connected(g)) throw std::invalid_argument("doubling needs a connected graph on >= 2 vertices");
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges()) {
    edges.push_back({u, v});
    edges.push_back({u, v + n});
    edges.push_back({u + n, v});
    edges.push_back({u + n, v + n});
  }
  std::vector<std::string> tags(2 * n);
  for (Vertex v = 0; v < n; ++v) {
    tags[v] = g.tag(v).empty() ? std::to_string(v + 1) : g.tag(v);
    tags[v + n] = tags[v] + "'";
  }
  return Graph(2 * n, edges, tags);
}

bool doubling_quotient_is_induced(const Graph& g, const Graph& doubled) {
  Partition p = twinclass_partition(doubled);
  Graph q = quotient(doubled, p);
  std::vector<Vertex> reps;
  for (const auto& blk : p.blocks) {
    if (blk.front() >= g.num_vertices()) return false;
    reps.push_back(blk.front());
  }
  for (std::size_t a = 0; a < reps.size(); ++a)
    for (std::size_t c = a + 1; c < reps.size(); ++c)
      if (q.has_edge(static_cast<Vertex>(a), static_cast<Vertex>(c)) != g.has_edge(reps[a], reps[c])) return false;
  return true;
}

std::vector<Vertex> TdsBlock::vertices() const {
  std::vector<Vertex> out(p, p + 4);
  out.insert(out.end(), q, q + 4);
  out.insert(out.end(), zhat, zhat + 4);
  out.insert(out.end(), z, z + 4);
  out.push_back(y1);
  out.push_back(y2);
  return out;
}

TdsBlock tds_block_layout(Vertex offset) {
  TdsBlock blk;
  Vertex v = offset;
  for (auto& x : blk.p) x = v++;
  for (auto& x : blk.q) x = v++;
  for (auto& x : blk.zhat) x = v++;
  for (auto& x : blk.z) x = v++;
  blk.y1 = v++;
  blk.y2 = v++;
  return blk;
}

void add_tds_block_edges(GraphBuilder& b, const TdsBlock& blk) {
  for (int k = 0; k + 1 < 4; ++k) b.add_edge(blk.p[k], blk.p[k + 1]);
  for (int k = 0; k < 4; ++k)
    for (int x = 0; x < 4; ++x)
      if (x != k) b.add_edge(blk.q[k], blk.p[x]);
  for (int s = 0; s < 4; ++s) {
    for (int x = 0; x < 4; ++x)
      if (x != kTdsStates[s][0] && x != kTdsStates[s][1]) b.add_edge(blk.zhat[s], blk.p[x]);
    b.add_edge(blk.zhat[s], blk.z[s]);
  }
  b.add_clique({blk.z[0], blk.z[1], blk.z[2], blk.z[3], blk.y1});
  b.add_edge(blk.y1, blk.y2);
}

TdsInstance build_tds_reduction(const CnfFormula& f) {
  f.check();
  if (f.num_vars < 1 || f.clauses.empty()) throw std::invalid_argument("formula needs variables and clauses");
  TdsInstance inst;
  inst.formula = f;
  if (f.num_vars % 2) ++inst.formula.num_vars;
  int n = inst.formula.num_vars, m = static_cast<int>(f.clauses.size());
  int regions = 3 * n / 2 + 1;
  inst.pairs = n / 2;
  inst.segments = m * regions;
  int L = inst.segments;

  GraphBuilder b;
  auto named = [&](const std::string& tag) { return b.add_vertex(tag); };
  inst.h1 = named("h1");
  inst.h2 = named("h2");
  inst.h1p = named("h1'");
  inst.h2p = named("h2'");
  b.add_edge(inst.h1, inst.h1p);
  b.add_edge(inst.h1, inst.h2);
  b.add_edge(inst.h1p, inst.h2p);

  static const char* names[] = {"p", "q", "zh", "z"};
  inst.blocks.assign(inst.pairs, std::vector<TdsBlock>(L));
  for (int i = 0; i < inst.pairs; ++i)
    for (int l = 0; l < L; ++l) {
      std::string tag = "B[" + std::to_string(i + 1) + "," + std::to_string(l + 1) + "]/";
      TdsBlock blk = tds_block_layout(b.num_vertices());
      for (int part = 0; part < 4; ++part)
        for (int k = 0; k < 4; ++k) named(tag + names[part] + std::to_string(k + 1));
      named(tag + "y1");
      named(tag + "y2");
      add_tds_block_edges(b, blk);
      if (l > 0) b.add_edge(inst.blocks[i][l - 1].p[3], blk.p[0]);
      inst.blocks[i][l] = blk;
    }
  for (int i = 0; i < inst.pairs; ++i) {
    b.add_edge(inst.h1, inst.blocks[i][0].p[0]);
    b.add_edge(inst.h1p, inst.blocks[i][L - 1].p[3]);
  }

  inst.clause_vertices.assign(m, std::vector<Vertex>(regions));
  std::vector<Vertex> clause_at(L);
  for (int j = 0; j < m; ++j)
    for (int g = 0; g < regions; ++g) {
      Vertex c = named("c[" + std::to_string(j + 1) + "," + std::to_string(g + 1) + "]");
      inst.clause_vertices[j][g] = c;
      int l = g * m + j;
      clause_at[l] = c;
      for (int i = 0; i < inst.pairs; ++i)
        for (int a = 0; a < 4; ++a) {
          std::vector<int> tau(n, 0);
          tau[2 * i] = a >> 1;
          tau[2 * i + 1] = a & 1;
          bool sat = false;
          for (int lit : f.clauses[j]) {
            int var = std::abs(lit) - 1;
            if (var / 2 == i && (tau[var] != 0) == (lit > 0)) sat = true;
          }
          if (sat) b.add_edge(c, inst.blocks[i][l].z[tds_state_of(a >> 1, a & 1)]);
        }
    }
  inst.graph = b.build();
  inst.budget = 4LL * inst.segments * inst.pairs + 2;

  // Sweep segment by segment; rows before i have moved on to segment l+1.
  std::vector<std::vector<Vertex>> bags;
  std::vector<Vertex> first{inst.h1, inst.h2, inst.h1p, inst.h2p};
  for (int i = 0; i < inst.pairs; ++i) first.push_back(inst.blocks[i][0].p[0]);
  bags.push_back(first);
  for (int l = 0; l < L; ++l)
    for (int i = 0; i < inst.pairs; ++i) {
      std::vector<Vertex> base{inst.h1, inst.h1p, clause_at[l]};
      for (int x = 0; x < i; ++x)
        if (l + 1 < L) base.push_back(inst.blocks[x][l + 1].p[0]);
      for (int x = i + 1; x < inst.pairs; ++x) base.push_back(inst.blocks[x][l].p[0]);
      auto bag = base;
      for (Vertex v : inst.blocks[i][l].vertices()) bag.push_back(v);
      bags.push_back(bag);
      if (l + 1 < L) {
        bag = base;
        bag.push_back(inst.blocks[i][l].p[3]);
        bag.push_back(inst.blocks[i][l + 1].p[0]);
        bags.push_back(bag);
      }
    }
  inst.decomposition = make_path_decomposition(std::move(bags));
  return inst;
}

std::vector<Vertex> forward_tds_solution(const TdsInstance& inst, const std::vector<int>& tau) {
  std::vector<int> padded = tau;
  int original = static_cast<int>(tau.size());
  if (original != inst.formula.num_vars) padded.push_back(1);
  CnfFormula f = inst.formula;
  if (static_cast<int>(padded.size()) != f.num_vars || !f.satisfied_by(padded))
    throw std::invalid_argument("assignment does not satisfy the formula");
  std::vector<Vertex> out{inst.h1, inst.h1p};
  for (int i = 0; i < inst.pairs; ++i) {
    int s = tds_state_of(padded[2 * i], padded[2 * i + 1]);
    for (const auto& blk : inst.blocks[i]) {
      out.push_back(blk.p[kTdsStates[s][0]]);
      out.push_back(blk.p[kTdsStates[s][1]]);
      out.push_back(blk.z[s]);
      out.push_back(blk.y1);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cwdel
