#pragma once

#include <vector>

#include "cwdel/decomposition.hpp"
#include "cwdel/graph.hpp"

namespace cwdel {

// Removes {v,w} from g and {x,y} from h, identifies v with x and adds {w,y}.
// Vertices of g keep their ids; h_map (if given) receives the new id of every
// vertex of h, with x mapped to v.
Graph hajos_merge(const Graph& g, const Graph& h, Edge edge_g, Edge edge_h, std::vector<Vertex>* h_map = nullptr);

// H^t_gamma with its a/b/c roles. a has gamma+1 entries, b has gamma, and
// c[l] holds the t-3 vertices c_{l+1,1..t-3}.
struct CriticalGraph {
  Graph graph;
  int t = 0;
  int gamma = 0;
  std::vector<Vertex> a;
  std::vector<Vertex> b;
  std::vector<std::vector<Vertex>> c;
  TreeDecomposition decomposition;  // path decomposition of width t-1

  // a_1..a_{gamma+1}, then b_1..b_gamma, then the c's block by block.
  std::vector<Vertex> label_order() const;
};

CriticalGraph build_critical(int t, int gamma);

// H^{r+1}_gamma for the smallest gamma with r*gamma + 1 >= min_size.
CriticalGraph pick_critical(int r, int min_size);

}  // namespace cwdel
