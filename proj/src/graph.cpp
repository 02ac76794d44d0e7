#include "cwdel/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

namespace cwdel {

namespace {

void sort_unique(std::vector<Vertex>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

Graph::Graph(int n) : adj_(n), tags_(n) {
  if (n < 0) throw graph_error("negative vertex count");
}

Graph::Graph(int n, const std::vector<Edge>& edges, std::vector<std::string> tags) : Graph(n) {
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw graph_error("edge endpoint out of range");
    if (u == v) throw graph_error("self-loop at vertex " + std::to_string(u));
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& a : adj_) {
    sort_unique(a);
    num_edges_ += a.size();
  }
  num_edges_ /= 2;
  if (!tags.empty()) {
    if (static_cast<int>(tags.size()) != n) throw graph_error("tag count does not match vertex count");
    tags_ = std::move(tags);
  }
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  const auto& a = adj_[u];
  return std::binary_search(a.begin(), a.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges_);
  for (Vertex u = 0; u < num_vertices(); ++u)
    for (Vertex v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

const std::string& Graph::tag(Vertex v) const { return tags_[v]; }

Graph Graph::induced(const std::vector<Vertex>& vertices) const {
  std::vector<int> pos(num_vertices(), -1);
  for (int i = 0; i < static_cast<int>(vertices.size()); ++i) {
    if (pos[vertices[i]] != -1) throw graph_error("duplicate vertex in induced subgraph");
    pos[vertices[i]] = i;
  }
  Graph h(static_cast<int>(vertices.size()));
  for (int i = 0; i < static_cast<int>(vertices.size()); ++i) {
    h.tags_[i] = tags_[vertices[i]];
    for (Vertex w : adj_[vertices[i]])
      if (pos[w] != -1) h.adj_[i].push_back(pos[w]);
    std::sort(h.adj_[i].begin(), h.adj_[i].end());
    h.num_edges_ += h.adj_[i].size();
  }
  h.num_edges_ /= 2;
  return h;
}

Vertex GraphBuilder::add_vertex(std::string tag) {
  adj_.emplace_back();
  tags_.push_back(std::move(tag));
  return num_vertices() - 1;
}

Vertex GraphBuilder::add_vertices(int count, const std::string& tag_prefix) {
  Vertex first = num_vertices();
  for (int i = 0; i < count; ++i)
    add_vertex(tag_prefix.empty() ? std::string() : tag_prefix + std::to_string(i + 1));
  return first;
}

void GraphBuilder::check(Vertex v) const {
  if (v < 0 || v >= num_vertices()) throw graph_error("vertex id out of range: " + std::to_string(v));
}

void GraphBuilder::add_edge(Vertex u, Vertex v) {
  check(u);
  check(v);
  if (u == v) throw graph_error("self-loop at vertex " + std::to_string(u));
  adj_[u].push_back(v);
  adj_[v].push_back(u);
}

void GraphBuilder::add_clique(const std::vector<Vertex>& vertices) {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j) add_edge(vertices[i], vertices[j]);
}

void GraphBuilder::add_join(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  for (Vertex u : a)
    for (Vertex v : b) add_edge(u, v);
}

Vertex GraphBuilder::add_graph(const Graph& g, const std::string& tag_prefix) {
  Vertex off = num_vertices();
  for (Vertex v = 0; v < g.num_vertices(); ++v) add_vertex(tag_prefix + g.tag(v));
  for (auto [u, v] : g.edges()) add_edge(off + u, off + v);
  return off;
}

bool GraphBuilder::has_edge(Vertex u, Vertex v) const {
  check(u);
  check(v);
  const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
  Vertex other = adj_[u].size() <= adj_[v].size() ? v : u;
  return std::find(a.begin(), a.end(), other) != a.end();
}

Graph GraphBuilder::build() const {
  std::vector<Edge> edges;
  std::size_t total = 0;
  for (const auto& a : adj_) total += a.size();
  edges.reserve(total / 2);
  for (Vertex u = 0; u < num_vertices(); ++u)
    for (Vertex v : adj_[u])
      if (u < v) edges.emplace_back(u, v);
  return Graph(num_vertices(), edges, tags_);
}

void check_partition(const Partition& p, int n) {
  std::vector<char> seen(n, 0);
  int covered = 0;
  for (const auto& block : p.blocks) {
    if (block.empty()) throw graph_error("invalid-partition: empty block");
    for (Vertex v : block) {
      if (v < 0 || v >= n) throw graph_error("invalid-partition: vertex out of range");
      if (seen[v]) throw graph_error("invalid-partition: vertex " + std::to_string(v) + " in two blocks");
      seen[v] = 1;
      ++covered;
    }
  }
  if (covered != n) throw graph_error("invalid-partition: blocks do not cover all vertices");
}

bool are_twins(const Graph& g, Vertex u, Vertex v) {
  if (u == v) return true;
  std::vector<Vertex> a, b;
  for (Vertex w : g.neighbors(u))
    if (w != v) a.push_back(w);
  for (Vertex w : g.neighbors(v))
    if (w != u) b.push_back(w);
  return a == b;
}

Partition twinclass_partition(const Graph& g) {
  int n = g.num_vertices();
  DisjointSets ds(n);
  // Twins share either the open or the closed neighbourhood, and both
  // relations are transitive, so grouping by each key and merging suffices.
  std::map<std::vector<Vertex>, Vertex> open_key, closed_key;
  for (Vertex v = 0; v < n; ++v) {
    const auto& nb = g.neighbors(v);
    auto [it, fresh] = open_key.emplace(nb, v);
    if (!fresh) ds.unite(it->second, v);
    std::vector<Vertex> closed = nb;
    closed.insert(std::lower_bound(closed.begin(), closed.end(), v), v);
    auto [jt, fresh2] = closed_key.emplace(std::move(closed), v);
    if (!fresh2) ds.unite(jt->second, v);
  }
  std::vector<int> block_of(n, -1);
  Partition p;
  for (Vertex v = 0; v < n; ++v) {
    int root = ds.find(v);
    if (block_of[root] == -1) {
      block_of[root] = static_cast<int>(p.blocks.size());
      p.blocks.emplace_back();
    }
    p.blocks[block_of[root]].push_back(v);
  }
  return p;
}

Graph quotient(const Graph& g, const Partition& p) {
  check_partition(p, g.num_vertices());
  std::vector<int> block_of(g.num_vertices());
  for (int b = 0; b < static_cast<int>(p.blocks.size()); ++b)
    for (Vertex v : p.blocks[b]) block_of[v] = b;
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges())
    if (block_of[u] != block_of[v]) edges.emplace_back(block_of[u], block_of[v]);
  return Graph(static_cast<int>(p.blocks.size()), edges);
}

TwinKind classify_twinclass(const Graph& g, const std::vector<Vertex>& block) {
  if (block.empty()) throw graph_error("empty block is not a twinclass");
  for (std::size_t i = 1; i < block.size(); ++i)
    if (!are_twins(g, block[0], block[i])) throw graph_error("block is not a set of twins");
  std::vector<char> inside(g.num_vertices(), 0);
  for (Vertex v : block) inside[v] = 1;
  // A true twin of u is a neighbour of u; a false twin shares every neighbour,
  // in particular the first one. Isolated vertices are twins of each other.
  Vertex u = block[0];
  std::vector<Vertex> candidates;
  if (g.degree(u) == 0) {
    for (Vertex w = 0; w < g.num_vertices(); ++w) candidates.push_back(w);
  } else {
    candidates = g.neighbors(u);
    const auto& second = g.neighbors(g.neighbors(u)[0]);
    candidates.insert(candidates.end(), second.begin(), second.end());
  }
  for (Vertex w : candidates)
    if (!inside[w] && g.degree(w) == g.degree(u) && are_twins(g, u, w))
      throw graph_error("block is not maximal: vertex " + std::to_string(w) + " is a twin");
  if (block.size() == 1) return TwinKind::singleton;
  return g.has_edge(block[0], block[1]) ? TwinKind::true_twins : TwinKind::false_twins;
}

const char* to_string(TwinKind kind) {
  switch (kind) {
    case TwinKind::singleton: return "singleton";
    case TwinKind::true_twins: return "true-twins";
    case TwinKind::false_twins: return "false-twins";
  }
  return "?";
}

std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
  int n = g.num_vertices();
  std::vector<char> seen(n, 0);
  std::vector<std::vector<Vertex>> comps;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (seen[s]) continue;
    comps.emplace_back();
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      comps.back().push_back(v);
      for (Vertex w : g.neighbors(v))
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    std::sort(comps.back().begin(), comps.back().end());
  }
  return comps;
}

bool is_connected(const Graph& g) { return g.num_vertices() > 0 && connected_components(g).size() == 1; }

Graph read_edge_list(std::istream& in) {
  std::string line;
  int n = -1;
  long declared = -1;
  std::vector<Edge> edges;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw graph_error("edge list line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind) || kind[0] == 'c') continue;
    if (kind == "p") {
      std::string fmt;
      if (n != -1) fail("duplicate header");
      if (!(ls >> fmt >> n >> declared) || fmt != "edge" || n < 0 || declared < 0) fail("bad header");
    } else if (kind == "e") {
      if (n == -1) fail("edge before header");
      long u, v;
      if (!(ls >> u >> v)) fail("bad edge line");
      if (u < 1 || v < 1 || u > n || v > n) fail("vertex id out of range");
      if (u == v) fail("self-loop");
      edges.emplace_back(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
    } else {
      fail("unknown line type '" + kind + "'");
    }
  }
  if (n == -1) throw graph_error("edge list: missing header");
  if (static_cast<long>(edges.size()) != declared)
    throw graph_error("edge list: header declares " + std::to_string(declared) + " edges, found " +
                      std::to_string(edges.size()));
  return Graph(n, edges);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "p edge " << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (auto [u, v] : g.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
}

std::vector<std::string> read_tags(std::istream& in, int n) {
  std::vector<std::string> tags(n);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    long id;
    std::string tag;
    if (!(ls >> id)) continue;
    if (id < 1 || id > n) throw graph_error("tag file: vertex id out of range");
    std::getline(ls >> std::ws, tag);
    tags[id - 1] = tag;
  }
  return tags;
}

void write_tags(std::ostream& out, const Graph& g) {
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (!g.tag(v).empty()) out << v + 1 << ' ' << g.tag(v) << '\n';
}

Graph load_graph(const std::string& path, const std::string& tags_path) {
  std::ifstream in(path);
  if (!in) throw graph_error("cannot open " + path);
  Graph g = read_edge_list(in);
  if (tags_path.empty()) return g;
  std::ifstream tin(tags_path);
  if (!tin) throw graph_error("cannot open " + tags_path);
  return Graph(g.num_vertices(), g.edges(), read_tags(tin, g.num_vertices()));
}

void save_graph(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw graph_error("cannot write " + path);
  write_edge_list(out, g);
}

Graph complete_graph(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph(n, e);
}

Graph cycle_graph(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph(n, e);
}

Graph path_graph(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, e);
}

Graph petersen_graph() {
  std::vector<Edge> e;
  for (int i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);
    e.emplace_back(i, i + 5);
    e.emplace_back(5 + i, 5 + (i + 2) % 5);
  }
  return Graph(10, e);
}

}  // namespace cwdel
