#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cwdel/graph.hpp"

namespace cwdel {

enum class DecompositionKind { tree, path };

struct TreeDecomposition {
  DecompositionKind kind = DecompositionKind::tree;
  std::vector<std::vector<Vertex>> bags;
  std::vector<std::pair<int, int>> tree_edges;

  int add_bag(std::vector<Vertex> bag, int parent = -1);
  int width() const;
};

// Path of bags in the given order.
TreeDecomposition make_path_decomposition(std::vector<std::vector<Vertex>> bags);

enum class DecompositionFault {
  none,
  malformed_skeleton,  // not a tree, or not a path for kind == path
  vertex_out_of_range,
  uncovered_vertex,
  uncovered_edge,
  disconnected_occurrence,
};

const char* to_string(DecompositionFault f);

struct DecompositionReport {
  bool valid = false;
  int width = -1;
  DecompositionFault fault = DecompositionFault::none;
  std::vector<Vertex> witness;  // the offending vertex or edge
  std::string message() const;
};

DecompositionReport verify_decomposition(const Graph& g, const TreeDecomposition& d);

inline constexpr int kExactTreewidthCap = 16;

// Exact treewidth by the subset DP over elimination orders. Throws above the cap.
int exact_treewidth(const Graph& g);

// An optimal tree decomposition, derived from the optimal elimination order.
TreeDecomposition treewidth_decomposition(const Graph& g);

// Rewrites every bag through `map` (local id -> global id).
TreeDecomposition relabel(const TreeDecomposition& d, const std::vector<Vertex>& map);

}  // namespace cwdel
