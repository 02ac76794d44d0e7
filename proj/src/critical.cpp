#include "cwdel/critical.hpp"

#include <stdexcept>
#include <string>

namespace cwdel {

Graph hajos_merge(const Graph& g, const Graph& h, Edge edge_g, Edge edge_h, std::vector<Vertex>* h_map) {
  auto [v, w] = edge_g;
  auto [x, y] = edge_h;
  if (v < 0 || w < 0 || v >= g.num_vertices() || w >= g.num_vertices() || !g.has_edge(v, w))
    throw graph_error("hajos_merge: edge missing from the first graph");
  if (x < 0 || y < 0 || x >= h.num_vertices() || y >= h.num_vertices() || !h.has_edge(x, y))
    throw graph_error("hajos_merge: edge missing from the second graph");

  std::vector<Vertex> map(h.num_vertices());
  int n = g.num_vertices();
  std::vector<std::string> tags = g.tags();
  tags.resize(n);
  for (Vertex u = 0; u < h.num_vertices(); ++u) {
    if (u == x) {
      map[u] = v;
      continue;
    }
    map[u] = n++;
    tags.push_back(h.tags().empty() ? std::string() : h.tag(u));
  }

  std::vector<Edge> edges;
  for (auto e : g.edges())
    if (e != Edge(std::minmax(v, w))) edges.push_back(e);
  for (auto e : h.edges())
    if (e != Edge(std::minmax(x, y))) edges.push_back({map[e.first], map[e.second]});
  edges.push_back({w, map[y]});
  if (h_map) *h_map = map;
  return Graph(n, edges, std::move(tags));
}

std::vector<Vertex> CriticalGraph::label_order() const {
  std::vector<Vertex> out = a;
  out.insert(out.end(), b.begin(), b.end());
  for (const auto& block : c) out.insert(out.end(), block.begin(), block.end());
  return out;
}

namespace {

// K_t labelled a, a', b, c_1..c_{t-3} in that vertex order.
Graph labelled_clique(int t, int l) {
  std::vector<std::string> tags;
  std::string idx = std::to_string(l);
  tags.push_back("a[" + idx + "]");
  tags.push_back("a[" + std::to_string(l + 1) + "]");
  tags.push_back("b[" + idx + "]");
  for (int k = 1; k <= t - 3; ++k) tags.push_back("c[" + idx + "," + std::to_string(k) + "]");
  Graph k = complete_graph(t);
  return Graph(t, k.edges(), std::move(tags));
}

}  // namespace

CriticalGraph build_critical(int t, int gamma) {
  if (t < 3) throw std::invalid_argument("build_critical: t must be at least 3");
  if (gamma < 1) throw std::invalid_argument("build_critical: gamma must be at least 1");
  CriticalGraph h;
  h.t = t;
  h.gamma = gamma;
  h.graph = labelled_clique(t, 1);
  h.a = {0, 1};
  h.b = {2};
  h.c.emplace_back();
  for (int k = 0; k < t - 3; ++k) h.c.back().push_back(3 + k);

  for (int l = 2; l <= gamma; ++l) {
    // Edge {b_{l-1}, a'_{l-1}} against {a_l, b_l}; a'_{l-1} and a_l merge.
    std::vector<Vertex> map;
    Graph next = hajos_merge(h.graph, labelled_clique(t, l), {h.a.back(), h.b.back()}, {0, 2}, &map);
    // The merged vertex keeps a'_{l-1}'s tag, which already reads a[l].
    h.graph = std::move(next);
    h.a.push_back(map[1]);
    h.b.push_back(map[2]);
    h.c.emplace_back();
    for (int k = 0; k < t - 3; ++k) h.c.back().push_back(map[3 + k]);
  }

  std::vector<std::vector<Vertex>> bags;
  for (int l = 0; l < gamma; ++l) {
    std::vector<Vertex> bag{h.a[l], h.a[l + 1], h.b[l]};
    bag.insert(bag.end(), h.c[l].begin(), h.c[l].end());
    bags.push_back(bag);
    if (l + 1 < gamma) bags.push_back({h.b[l], h.b[l + 1], h.a[l + 1]});
  }
  h.decomposition = make_path_decomposition(std::move(bags));
  return h;
}

CriticalGraph pick_critical(int r, int min_size) {
  if (r < 2) throw std::invalid_argument("pick_critical: r must be at least 2");
  int gamma = 1;
  while (r * gamma + 1 < min_size) ++gamma;
  return build_critical(r + 1, gamma);
}

}  // namespace cwdel
