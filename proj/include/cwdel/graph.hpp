#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cwdel {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

class graph_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Undirected simple graph on vertices 0..n-1 with sorted adjacency lists and
/// an optional provenance tag per vertex. Immutable once constructed; use
/// GraphBuilder to assemble one incrementally.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  /// Duplicate edges are merged; self-loops and out-of-range ids throw.
  Graph(int n, const std::vector<Edge>& edges, std::vector<std::string> tags = {});

  int num_vertices() const { return static_cast<int>(adj_.size()); }
  std::size_t num_edges() const { return num_edges_; }

  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
  bool has_edge(Vertex u, Vertex v) const;

  /// Edges with u < v in lexicographic order.
  std::vector<Edge> edges() const;

  const std::string& tag(Vertex v) const;
  const std::vector<std::string>& tags() const { return tags_; }

  /// Subgraph induced by `vertices`; vertex i of the result is vertices[i].
  Graph induced(const std::vector<Vertex>& vertices) const;

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::vector<std::string> tags_;
  std::size_t num_edges_ = 0;
};

/// Single-writer incremental construction. Adjacency is unsorted and may hold
/// duplicates until build().
class GraphBuilder {
 public:
  Vertex add_vertex(std::string tag = {});
  /// Returns the id of the first new vertex; ids are consecutive.
  Vertex add_vertices(int count, const std::string& tag_prefix = {});
  void add_edge(Vertex u, Vertex v);
  void add_clique(const std::vector<Vertex>& vertices);
  void add_join(const std::vector<Vertex>& a, const std::vector<Vertex>& b);
  /// Copies `g` into the builder and returns the id offset of its vertex 0.
  Vertex add_graph(const Graph& g, const std::string& tag_prefix = {});

  bool has_edge(Vertex u, Vertex v) const;
  int num_vertices() const { return static_cast<int>(adj_.size()); }
  void set_tag(Vertex v, std::string tag) { tags_[v] = std::move(tag); }

  Graph build() const;

 private:
  void check(Vertex v) const;

  std::vector<std::vector<Vertex>> adj_;
  std::vector<std::string> tags_;
};

struct Partition {
  std::vector<std::vector<Vertex>> blocks;
};

/// Throws graph_error unless the blocks are nonempty, pairwise disjoint and
/// cover exactly 0..n-1.
void check_partition(const Partition& p, int n);

bool are_twins(const Graph& g, Vertex u, Vertex v);

/// Equivalence classes of the twin relation N(u)\{v} = N(v)\{u}. Members are
/// sorted and blocks are ordered by their smallest member.
Partition twinclass_partition(const Graph& g);

/// One vertex per block; blocks are adjacent iff some cross edge exists.
Graph quotient(const Graph& g, const Partition& p);

enum class TwinKind { singleton, true_twins, false_twins };

/// Throws graph_error if `block` is not a twinclass of g.
TwinKind classify_twinclass(const Graph& g, const std::vector<Vertex>& block);

const char* to_string(TwinKind kind);

/// Connected components, each sorted, ordered by smallest member.
std::vector<std::vector<Vertex>> connected_components(const Graph& g);

bool is_connected(const Graph& g);

// Edge-list text format: "p edge <n> <m>" then "e <u> <v>" lines, 1-indexed.
// Lines starting with 'c' are comments.
Graph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& g);
Graph load_graph(const std::string& path, const std::string& tags_path = {});
void save_graph(const std::string& path, const Graph& g);
// Sidecar format: "<vertex-id> <tag>" per line, 1-indexed, untagged vertices omitted.
std::vector<std::string> read_tags(std::istream& in, int n);
void write_tags(std::ostream& out, const Graph& g);

// Small named graphs used throughout the tests and the CLI.
Graph complete_graph(int n);
Graph cycle_graph(int n);
Graph path_graph(int n);
Graph petersen_graph();

}  // namespace cwdel
