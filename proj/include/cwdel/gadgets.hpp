#pragma once

#include <string>
#include <vector>

#include "cwdel/decomposition.hpp"
#include "cwdel/graph.hpp"
#include "cwdel/oracle.hpp"

namespace cwdel {

struct PackingEntry {
  std::vector<Vertex> vertices;
  int claim = 0;  // lower bound on deletions inside `vertices`
};

// Bag tree over gadget-internal vertices; bag 0 holds `head`, the vertex the
// tree hangs from when it is attached to a host decomposition.
struct LocalDecomposition {
  Vertex head = -1;
  TreeDecomposition tree;
};

// Adds `local` below some bag of `host` containing local.head (or as the
// first tree when host is empty). Returns the index of the attached root.
int attach(TreeDecomposition& host, const LocalDecomposition& local);

struct DeletionEdge {
  Vertex u = -1;
  Vertex v = -1;
  std::vector<Vertex> inner;  // the r-1 added vertices

  std::vector<Vertex> clique() const;
};

DeletionEdge add_deletion_edge(GraphBuilder& b, Vertex u, Vertex v, int r, const std::string& tag = "del");

struct ThinArrow {
  Vertex u = -1;
  Vertex v = -1;
  Vertex w = -1;
  DeletionEdge tail;  // u-w
  DeletionEdge head;  // w-v
  PackingEntry piece;
  LocalDecomposition local;  // bags contain u but never other outside vertices
};

ThinArrow add_thin_arrow(GraphBuilder& b, Vertex u, Vertex v, int r, const std::string& tag = "thin");

struct ThickArrow {
  std::vector<Vertex> U;
  Vertex v = -1;
  int level = 0;
  std::vector<Vertex> clique;  // K_l
  std::vector<Vertex> side;    // K_{r-l}
  std::vector<Vertex> indep;   // I_{l-1}
  std::vector<DeletionEdge> edges;  // K_l x I_{l-1}
  PackingEntry piece;
  LocalDecomposition local;  // without U

  std::vector<Vertex> internal() const;
  // Deletions inside A - U: the active solution when |U deleted| >= level.
  std::vector<Vertex> prescribed_deletions(int deleted_in_U) const;
};

ThickArrow add_thick_arrow(GraphBuilder& b, const std::vector<Vertex>& U, Vertex v, int level, int r,
                           const std::string& tag = "thick");

// C is a bitmask over colours 1..r; F[s-1] is f_s.
struct ColorSetGadget {
  std::vector<Vertex> U;
  Vertex v = -1;
  ColorMask C = 0;
  std::vector<int> missing;  // colours not in C, ascending
  std::vector<Vertex> w;     // w_1..w_{2l+1}, index 0-based
  std::vector<DeletionEdge> edges;  // w_{2i-1}-w_{2i} for each i, then w_{2l+1}-v
  PackingEntry piece;
  LocalDecomposition local;  // without U and F

  std::vector<Vertex> internal() const;
  bool active_for(ColorMask used_on_U) const { return (used_on_U & ~C) == 0; }
  std::vector<Vertex> prescribed_deletions(ColorMask used_on_U) const;
};

ColorSetGadget add_color_set_gadget(GraphBuilder& b, const std::vector<Vertex>& U, Vertex v, ColorMask C,
                                    const std::vector<Vertex>& F, int r, const std::string& tag = "colorset");

struct DecodingGadget {
  std::vector<Vertex> clique;  // K_r
  std::vector<Vertex> indep;   // hat is indep[0]
  Vertex hat = -1;
  PackingEntry piece;
  LocalDecomposition local;  // head is hat
};

DecodingGadget add_decoding_gadget(GraphBuilder& b, int indep_size, int r, const std::string& tag = "Y");

// Moves every deletion of an inner deletion-edge vertex onto the edge's u when
// u and v both survive. The cost is unchanged and properness is preserved.
Solution normalize_deletion_edges(Solution s, const std::vector<DeletionEdge>& edges);

}  // namespace cwdel
