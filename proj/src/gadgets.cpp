#include "cwdel/gadgets.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace cwdel {

int attach(TreeDecomposition& host, const LocalDecomposition& local) {
  const auto& t = local.tree;
  if (t.bags.empty()) return -1;
  int parent = -1;
  if (!host.bags.empty()) {
    for (int i = static_cast<int>(host.bags.size()) - 1; i >= 0 && parent < 0; --i)
      if (std::binary_search(host.bags[i].begin(), host.bags[i].end(), local.head)) parent = i;
    if (parent < 0) throw std::logic_error("attach: head vertex not present in host decomposition");
  }
  int offset = static_cast<int>(host.bags.size());
  for (const auto& bag : t.bags) host.add_bag(bag);
  for (auto [x, y] : t.tree_edges) host.tree_edges.push_back({x + offset, y + offset});
  if (parent >= 0) {
    host.tree_edges.push_back({parent, offset});
    host.kind = DecompositionKind::tree;
  }
  return offset;
}

std::vector<Vertex> DeletionEdge::clique() const {
  std::vector<Vertex> c{u, v};
  c.insert(c.end(), inner.begin(), inner.end());
  return c;
}

DeletionEdge add_deletion_edge(GraphBuilder& b, Vertex u, Vertex v, int r, const std::string& tag) {
  if (u == v) throw std::invalid_argument("deletion edge needs distinct endpoints");
  if (r < 1) throw std::invalid_argument("deletion edge needs r >= 1");
  DeletionEdge d;
  d.u = u;
  d.v = v;
  for (int k = 1; k < r; ++k) d.inner.push_back(b.add_vertex(tag + "/w" + std::to_string(k)));
  b.add_clique(d.clique());
  return d;
}

namespace {

std::vector<Vertex> with(std::vector<Vertex> a, const std::vector<Vertex>& extra) {
  a.insert(a.end(), extra.begin(), extra.end());
  return a;
}

}  // namespace

ThinArrow add_thin_arrow(GraphBuilder& b, Vertex u, Vertex v, int r, const std::string& tag) {
  if (u == v) throw std::invalid_argument("thin arrow needs distinct endpoints");
  ThinArrow a;
  a.u = u;
  a.v = v;
  a.w = b.add_vertex(tag + "/w");
  a.tail = add_deletion_edge(b, u, a.w, r, tag + "/tail");
  a.head = add_deletion_edge(b, a.w, v, r, tag + "/head");
  a.piece = {a.head.clique(), 1};
  a.local.head = v;
  int root = a.local.tree.add_bag(a.head.clique());
  a.local.tree.add_bag(a.tail.clique(), root);
  return a;
}

std::vector<Vertex> ThickArrow::internal() const {
  std::vector<Vertex> out = with(with(clique, side), indep);
  for (const auto& e : edges) out.insert(out.end(), e.inner.begin(), e.inner.end());
  return out;
}

std::vector<Vertex> ThickArrow::prescribed_deletions(int deleted_in_U) const {
  if (deleted_in_U >= level) return with(indep, {v});
  return clique;
}

ThickArrow add_thick_arrow(GraphBuilder& b, const std::vector<Vertex>& U, Vertex v, int level, int r,
                           const std::string& tag) {
  if (static_cast<int>(U.size()) != r) throw std::invalid_argument("thick arrow: |U| must equal r");
  if (level < 1 || level > r) throw std::invalid_argument("thick arrow: level outside [r]");
  for (std::size_t i = 0; i < U.size(); ++i) {
    if (U[i] == v || b.has_edge(U[i], v)) throw std::invalid_argument("thick arrow: v adjacent to U");
    for (std::size_t j = i + 1; j < U.size(); ++j)
      if (!b.has_edge(U[i], U[j])) throw std::invalid_argument("thick arrow: U is not a clique");
  }
  ThickArrow a;
  a.U = U;
  a.v = v;
  a.level = level;
  for (int k = 0; k < level; ++k) a.clique.push_back(b.add_vertex(tag + "/K" + std::to_string(k + 1)));
  for (int k = 0; k < r - level; ++k) a.side.push_back(b.add_vertex(tag + "/S" + std::to_string(k + 1)));
  for (int k = 0; k < level - 1; ++k) a.indep.push_back(b.add_vertex(tag + "/I" + std::to_string(k + 1)));
  b.add_join(U, a.clique);
  b.add_clique(with(with(a.clique, a.side), {v}));
  for (std::size_t x = 0; x < a.indep.size(); ++x)
    for (std::size_t k = 0; k < a.clique.size(); ++k)
      a.edges.push_back(add_deletion_edge(b, a.clique[k], a.indep[x], r,
                                          tag + "/d" + std::to_string(k + 1) + "," + std::to_string(x + 1)));

  a.piece = {with(a.internal(), {v}), level};
  std::sort(a.piece.vertices.begin(), a.piece.vertices.end());
  a.local.head = v;
  auto& t = a.local.tree;
  int root = t.add_bag(with(with(a.clique, a.side), {v}));
  for (std::size_t x = 0; x < a.indep.size(); ++x) {
    int mid = t.add_bag(with(a.clique, {a.indep[x]}), root);
    for (std::size_t k = 0; k < a.clique.size(); ++k) t.add_bag(a.edges[x * a.clique.size() + k].clique(), mid);
  }
  return a;
}

std::vector<Vertex> ColorSetGadget::internal() const {
  std::vector<Vertex> out = w;
  for (const auto& e : edges) out.insert(out.end(), e.inner.begin(), e.inner.end());
  return out;
}

std::vector<Vertex> ColorSetGadget::prescribed_deletions(ColorMask used_on_U) const {
  std::size_t l = missing.size();
  std::vector<Vertex> out;
  if (active_for(used_on_U)) {
    for (std::size_t i = 0; i < l; ++i) out.push_back(w[2 * i + 1]);
    out.push_back(v);
  } else {
    for (std::size_t i = 0; i < l; ++i) out.push_back(w[2 * i]);
    out.push_back(w[2 * l]);
  }
  return out;
}

ColorSetGadget add_color_set_gadget(GraphBuilder& b, const std::vector<Vertex>& U, Vertex v, ColorMask C,
                                    const std::vector<Vertex>& F, int r, const std::string& tag) {
  if (static_cast<int>(F.size()) != r) throw std::invalid_argument("color-set gadget: F must have r vertices");
  if (C & ~all_colors(r)) throw std::invalid_argument("color-set gadget: colour outside [r]");
  if (C == all_colors(r)) throw std::invalid_argument("color-set gadget: C must be a proper subset of [r]");
  if (std::popcount(C) > static_cast<int>(U.size())) throw std::invalid_argument("color-set gadget: |C| > |U|");
  for (Vertex u : U)
    if (u == v || b.has_edge(u, v)) throw std::invalid_argument("color-set gadget: v adjacent to U");

  ColorSetGadget g;
  g.U = U;
  g.v = v;
  g.C = C;
  for (int c = 1; c <= r; ++c)
    if (!(C >> (c - 1) & 1)) g.missing.push_back(c);
  int l = static_cast<int>(g.missing.size());
  for (int k = 1; k <= 2 * l + 1; ++k) g.w.push_back(b.add_vertex(tag + "/w" + std::to_string(k)));
  Vertex last = g.w[2 * l];

  std::vector<Vertex> f_rest(F.begin() + 1, F.end());
  for (int i = 0; i < l; ++i) {
    Vertex odd = g.w[2 * i], even = g.w[2 * i + 1];
    b.add_join({odd}, U);
    b.add_edge(even, last);
    b.add_join({even}, f_rest);
    std::vector<Vertex> f_odd;
    for (int s = 1; s <= r; ++s)
      if (s != g.missing[i]) f_odd.push_back(F[s - 1]);
    b.add_join({odd}, f_odd);
    g.edges.push_back(add_deletion_edge(b, odd, even, r, tag + "/d" + std::to_string(i + 1)));
  }
  b.add_join({last}, f_rest);
  g.edges.push_back(add_deletion_edge(b, last, v, r, tag + "/dv"));

  g.piece = {with(g.internal(), {v}), l + 1};
  std::sort(g.piece.vertices.begin(), g.piece.vertices.end());
  g.local.head = v;
  auto& t = g.local.tree;
  int root = t.add_bag({v, last});
  t.add_bag(g.edges.back().clique(), root);
  for (int i = 0; i < l; ++i) {
    int mid = t.add_bag({last, g.w[2 * i + 1]}, root);
    t.add_bag(g.edges[i].clique(), mid);
  }
  return g;
}

DecodingGadget add_decoding_gadget(GraphBuilder& b, int indep_size, int r, const std::string& tag) {
  if (indep_size < 1) throw std::invalid_argument("decoding gadget: empty independent set");
  DecodingGadget y;
  for (int k = 0; k < r; ++k) y.clique.push_back(b.add_vertex(tag + "/K" + std::to_string(k + 1)));
  y.indep.push_back(b.add_vertex(tag + "/hat"));
  for (int k = 1; k < indep_size; ++k) y.indep.push_back(b.add_vertex(tag + "/y" + std::to_string(k)));
  y.hat = y.indep[0];
  b.add_clique(y.clique);
  b.add_join(y.clique, y.indep);
  y.piece = {with(y.clique, {y.hat}), 1};
  std::sort(y.piece.vertices.begin(), y.piece.vertices.end());
  y.local.head = y.hat;
  int root = y.local.tree.add_bag(with(y.clique, {y.hat}));
  for (int k = 1; k < indep_size; ++k) y.local.tree.add_bag(with(y.clique, {y.indep[k]}), root);
  return y;
}

Solution normalize_deletion_edges(Solution s, const std::vector<DeletionEdge>& edges) {
  for (const auto& e : edges) {
    if (s.color[e.u] == kDeleted || s.color[e.v] == kDeleted) continue;
    for (Vertex w : e.inner) {
      if (s.color[w] != kDeleted) continue;
      // w only sees the clique, where u's colour is unique.
      s.color[w] = s.color[e.u];
      s.color[e.u] = kDeleted;
      break;
    }
  }
  return s;
}

}  // namespace cwdel
