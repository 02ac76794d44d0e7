#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cwdel/graph.hpp"

namespace cwdel {

enum class Op { intro, union_, relab, join };

struct ExprNode {
  Op op;
  int a = 0;  // intro: label; relab/join: i
  int b = 0;  // relab/join: j
  int left = -1;
  int right = -1;  // union only
  std::string name;  // intro only
};

// Nodes are stored children-before-parents; the root is the last node.
struct CliqueExpr {
  std::vector<ExprNode> nodes;

  int root() const { return static_cast<int>(nodes.size()) - 1; }
  bool empty() const { return nodes.empty(); }
  int num_vertices() const;
  int max_label() const;

  int intro(int label, std::string name);
  int unite(int left, int right);
  int relab(int i, int j, int child);
  int join(int i, int j, int child);
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at offset " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

CliqueExpr parse_expr(const std::string& text);
CliqueExpr load_expr(const std::string& path);
std::string render_expr(const CliqueExpr& e);

struct LabeledGraph {
  Graph graph;
  std::vector<int> label;
  std::vector<std::string> names;
};

// Vertex ids follow the order of the intro leaves in the node array.
LabeledGraph evaluate_expr(const CliqueExpr& e);

struct ExprValidity {
  bool k_valid = false;
  bool linear = false;
};

ExprValidity validate_expr(const CliqueExpr& e, int k);

CliqueExpr random_expr(int n, int k, std::uint64_t seed);

}  // namespace cwdel
