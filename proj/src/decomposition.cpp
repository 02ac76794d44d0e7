#include "cwdel/decomposition.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>

namespace cwdel {

int TreeDecomposition::add_bag(std::vector<Vertex> bag, int parent) {
  std::sort(bag.begin(), bag.end());
  bags.push_back(std::move(bag));
  int id = static_cast<int>(bags.size()) - 1;
  if (parent >= 0) tree_edges.emplace_back(parent, id);
  return id;
}

int TreeDecomposition::width() const {
  int w = -1;
  for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
  return w;
}

TreeDecomposition make_path_decomposition(std::vector<std::vector<Vertex>> bags) {
  TreeDecomposition d;
  d.kind = DecompositionKind::path;
  for (auto& b : bags) d.add_bag(std::move(b), d.bags.empty() ? -1 : static_cast<int>(d.bags.size()) - 1);
  return d;
}

const char* to_string(DecompositionFault f) {
  switch (f) {
    case DecompositionFault::none: return "none";
    case DecompositionFault::malformed_skeleton: return "malformed-skeleton";
    case DecompositionFault::vertex_out_of_range: return "vertex-out-of-range";
    case DecompositionFault::uncovered_vertex: return "uncovered-vertex";
    case DecompositionFault::uncovered_edge: return "uncovered-edge";
    case DecompositionFault::disconnected_occurrence: return "disconnected-occurrence";
  }
  return "?";
}

std::string DecompositionReport::message() const {
  if (valid) return "valid, width " + std::to_string(width);
  std::string s = to_string(fault);
  if (!witness.empty()) {
    s += " {";
    for (std::size_t i = 0; i < witness.size(); ++i) s += (i ? "," : "") + std::to_string(witness[i]);
    s += "}";
  }
  return s;
}

DecompositionReport verify_decomposition(const Graph& g, const TreeDecomposition& d) {
  DecompositionReport rep;
  auto fail = [&](DecompositionFault f, std::vector<Vertex> w) {
    rep.valid = false;
    rep.fault = f;
    rep.witness = std::move(w);
    return rep;
  };
  int nb = static_cast<int>(d.bags.size());
  int n = g.num_vertices();
  if (nb == 0) {
    if (n == 0) {
      rep.valid = true;
      return rep;
    }
    return fail(DecompositionFault::uncovered_vertex, {0});
  }
  if (static_cast<int>(d.tree_edges.size()) != nb - 1) return fail(DecompositionFault::malformed_skeleton, {});
  std::vector<std::vector<int>> tadj(nb);
  for (auto [a, b] : d.tree_edges) {
    if (a < 0 || b < 0 || a >= nb || b >= nb || a == b) return fail(DecompositionFault::malformed_skeleton, {});
    tadj[a].push_back(b);
    tadj[b].push_back(a);
  }
  if (d.kind == DecompositionKind::path)
    for (const auto& a : tadj)
      if (a.size() > 2) return fail(DecompositionFault::malformed_skeleton, {});

  // Root the skeleton at bag 0; with nb-1 edges, reaching every bag means it is a tree.
  std::vector<int> parent(nb, -2), order;
  order.reserve(nb);
  parent[0] = -1;
  order.push_back(0);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int c : tadj[order[i]])
      if (parent[c] == -2) {
        parent[c] = order[i];
        order.push_back(c);
      }
  if (static_cast<int>(order.size()) != nb) return fail(DecompositionFault::malformed_skeleton, {});

  std::vector<std::vector<Vertex>> bags = d.bags;
  for (auto& b : bags) {
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    for (Vertex v : b)
      if (v < 0 || v >= n) return fail(DecompositionFault::vertex_out_of_range, {v});
  }

  std::vector<int> occurrences(n, 0), tops(n, 0);
  for (int t = 0; t < nb; ++t)
    for (Vertex v : bags[t]) {
      ++occurrences[v];
      int p = parent[t];
      if (p < 0 || !std::binary_search(bags[p].begin(), bags[p].end(), v)) ++tops[v];
    }
  for (Vertex v = 0; v < n; ++v)
    if (occurrences[v] == 0) return fail(DecompositionFault::uncovered_vertex, {v});

  // Bags containing v, by bag id, to test edge coverage by intersection.
  std::vector<std::vector<int>> where(n);
  for (int t = 0; t < nb; ++t)
    for (Vertex v : bags[t]) where[v].push_back(t);
  for (auto [u, v] : g.edges()) {
    const auto& a = where[u];
    const auto& b = where[v];
    bool found = false;
    for (std::size_t i = 0, j = 0; i < a.size() && j < b.size();) {
      if (a[i] == b[j]) {
        found = true;
        break;
      }
      if (a[i] < b[j]) ++i; else ++j;
    }
    if (!found) return fail(DecompositionFault::uncovered_edge, {u, v});
  }
  for (Vertex v = 0; v < n; ++v)
    if (tops[v] != 1) return fail(DecompositionFault::disconnected_occurrence, {v});

  rep.valid = true;
  rep.width = 0;
  for (const auto& b : bags) rep.width = std::max(rep.width, static_cast<int>(b.size()) - 1);
  return rep;
}

namespace {

using Mask = std::uint32_t;

// |Q(S, v)|: vertices outside S ∪ {v} reachable from v through S.
int q_size(const std::vector<Mask>& adj, Mask s, int v, int n) {
  Mask full = n == 32 ? ~Mask{0} : ((Mask{1} << n) - 1);
  Mask visited = Mask{1} << v, frontier = Mask{1} << v, reach = 0;
  while (frontier) {
    int x = std::countr_zero(frontier);
    frontier &= frontier - 1;
    Mask nb = adj[x] & ~visited;
    visited |= nb;
    reach |= nb & ~s;
    frontier |= nb & s;
  }
  return std::popcount(reach & full & ~(Mask{1} << v));
}

struct EliminationDp {
  std::vector<int> tw;
  std::vector<signed char> choice;
};

EliminationDp run_dp(const Graph& g) {
  int n = g.num_vertices();
  if (n > kExactTreewidthCap)
    throw graph_error("exact_treewidth: " + std::to_string(n) + " vertices exceeds cap " +
                      std::to_string(kExactTreewidthCap));
  std::vector<Mask> adj(n, 0);
  for (auto [u, v] : g.edges()) {
    adj[u] |= Mask{1} << v;
    adj[v] |= Mask{1} << u;
  }
  EliminationDp dp;
  std::size_t states = std::size_t{1} << n;
  dp.tw.assign(states, std::numeric_limits<int>::max());
  dp.choice.assign(states, -1);
  dp.tw[0] = -1;
  for (Mask s = 1; s < states; ++s) {
    for (Mask rest = s; rest; rest &= rest - 1) {
      int v = std::countr_zero(rest);
      Mask prev = s & ~(Mask{1} << v);
      int cand = std::max(dp.tw[prev], q_size(adj, prev, v, n));
      if (cand < dp.tw[s]) {
        dp.tw[s] = cand;
        dp.choice[s] = static_cast<signed char>(v);
      }
    }
  }
  return dp;
}

}  // namespace

int exact_treewidth(const Graph& g) {
  int n = g.num_vertices();
  if (n == 0) return -1;
  auto dp = run_dp(g);
  return std::max(0, dp.tw[(std::size_t{1} << n) - 1]);
}

TreeDecomposition treewidth_decomposition(const Graph& g) {
  int n = g.num_vertices();
  TreeDecomposition d;
  if (n == 0) return d;
  auto dp = run_dp(g);
  // Recover the elimination order; choice[S] is the vertex eliminated last within S.
  std::vector<int> order(n);
  Mask s = static_cast<Mask>((std::size_t{1} << n) - 1);
  for (int i = n - 1; i >= 0; --i) {
    int v = dp.choice[s];
    order[i] = v;
    s &= ~(Mask{1} << v);
  }
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;
  // Fill-in graph along the order.
  std::vector<Mask> fill(n, 0);
  for (auto [u, v] : g.edges()) {
    fill[u] |= Mask{1} << v;
    fill[v] |= Mask{1} << u;
  }
  std::vector<Mask> later(n, 0);
  for (int i = 0; i < n; ++i) {
    int v = order[i];
    Mask hi = 0;
    for (Mask m = fill[v]; m; m &= m - 1) {
      int w = std::countr_zero(m);
      if (pos[w] > i) hi |= Mask{1} << w;
    }
    later[v] = hi;
    for (Mask a = hi; a; a &= a - 1) {
      int x = std::countr_zero(a);
      fill[x] |= hi & ~(Mask{1} << x);
    }
  }
  // Bag of v = v plus its later neighbours; parent = earliest of those. Bags
  // are created in reverse order so parents exist first.
  std::vector<int> bag_of(n, -1);
  std::vector<int> roots;
  for (int i = n - 1; i >= 0; --i) {
    int v = order[i];
    std::vector<Vertex> bag{v};
    int parent_vertex = -1;
    for (Mask m = later[v]; m; m &= m - 1) {
      int w = std::countr_zero(m);
      bag.push_back(w);
      if (parent_vertex == -1 || pos[w] < pos[parent_vertex]) parent_vertex = w;
    }
    int parent_bag = parent_vertex == -1 ? -1 : bag_of[parent_vertex];
    bag_of[v] = d.add_bag(std::move(bag), parent_bag);
    if (parent_bag == -1) roots.push_back(bag_of[v]);
  }
  for (std::size_t i = 1; i < roots.size(); ++i) d.tree_edges.emplace_back(roots[0], roots[i]);
  return d;
}

TreeDecomposition relabel(const TreeDecomposition& d, const std::vector<Vertex>& map) {
  TreeDecomposition out = d;
  for (auto& b : out.bags) {
    for (auto& v : b) v = map[v];
    std::sort(b.begin(), b.end());
  }
  return out;
}

}  // namespace cwdel
