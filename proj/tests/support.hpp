#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cwdel/graph.hpp"
#include "cwdel/oracle.hpp"

namespace testing {

// Every labeled graph on n vertices, indexed by the edge bitmask.
inline cwdel::Graph graph_from_mask(int n, std::uint64_t mask) {
  std::vector<cwdel::Edge> edges;
  int bit = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v, ++bit)
      if (mask >> bit & 1) edges.push_back({u, v});
  return cwdel::Graph(n, edges);
}

inline std::uint64_t num_graph_masks(int n) { return std::uint64_t{1} << (n * (n - 1) / 2); }

inline cwdel::Graph random_graph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<cwdel::Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) edges.push_back({u, v});
  return cwdel::Graph(n, edges);
}

inline bool is_proper(const cwdel::Graph& g, const cwdel::Solution& s, int r) {
  if (static_cast<int>(s.color.size()) != g.num_vertices()) return false;
  for (int c : s.color)
    if (c < 0 || c > r) return false;
  for (auto [u, v] : g.edges())
    if (s.color[u] != cwdel::kDeleted && s.color[u] == s.color[v]) return false;
  return true;
}

}  // namespace testing
