#include "cwdel/cwexpr.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <random>
#include <sstream>
#include <unordered_set>

namespace cwdel {

int CliqueExpr::num_vertices() const {
  return static_cast<int>(std::count_if(nodes.begin(), nodes.end(), [](const ExprNode& x) { return x.op == Op::intro; }));
}

int CliqueExpr::max_label() const {
  int k = 0;
  for (const auto& x : nodes) k = std::max({k, x.a, x.op == Op::intro ? 0 : x.b});
  return k;
}

int CliqueExpr::intro(int label, std::string name) {
  if (label < 1) throw std::invalid_argument("labels must be positive");
  nodes.push_back({Op::intro, label, 0, -1, -1, std::move(name)});
  return root();
}

int CliqueExpr::unite(int left, int right) {
  nodes.push_back({Op::union_, 0, 0, left, right, {}});
  return root();
}

int CliqueExpr::relab(int i, int j, int child) {
  if (i < 1 || j < 1 || i == j) throw std::invalid_argument("relab needs distinct positive labels");
  nodes.push_back({Op::relab, i, j, child, -1, {}});
  return root();
}

int CliqueExpr::join(int i, int j, int child) {
  if (i < 1 || j < 1 || i == j) throw std::invalid_argument("join needs distinct positive labels");
  nodes.push_back({Op::join, i, j, child, -1, {}});
  return root();
}

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  CliqueExpr run() {
    skip();
    parse();
    skip();
    if (pos_ != s_.size()) throw ParseError("trailing input", pos_);
    return std::move(e_);
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != c) throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  std::string word() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (start == pos_) throw ParseError("expected identifier", pos_);
    return s_.substr(start, pos_ - start);
  }

  int number() {
    skip();
    std::size_t start = pos_;
    long value = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      value = value * 10 + (s_[pos_] - '0');
      if (value > 1'000'000) throw ParseError("label too large", start);
      ++pos_;
    }
    if (start == pos_) throw ParseError("expected label", pos_);
    if (value < 1) throw ParseError("labels must be positive", start);
    return static_cast<int>(value);
  }

  int parse() {
    std::size_t at = (skip(), pos_);
    std::string op = word();
    expect('(');
    int id;
    if (op == "intro") {
      int label = number();
      expect(',');
      std::size_t name_at = (skip(), pos_);
      std::string name = word();
      if (!names_.insert(name).second) throw ParseError("duplicate vertex name '" + name + "'", name_at);
      id = e_.intro(label, std::move(name));
    } else if (op == "union") {
      int l = parse();
      expect(',');
      int r = parse();
      id = e_.unite(l, r);
    } else if (op == "relab" || op == "join") {
      int i = number();
      expect(',');
      int j = number();
      expect(',');
      if (i == j) throw ParseError(op + " with equal labels", at);
      int c = parse();
      id = op == "relab" ? e_.relab(i, j, c) : e_.join(i, j, c);
    } else {
      throw ParseError("unknown operation '" + op + "'", at);
    }
    expect(')');
    return id;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  CliqueExpr e_;
  std::unordered_set<std::string> names_;
};

}  // namespace

CliqueExpr parse_expr(const std::string& text) { return Parser(text).run(); }

CliqueExpr load_expr(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_expr(ss.str());
}

std::string render_expr(const CliqueExpr& e) {
  if (e.empty()) return {};
  // Iterative to survive deep linear expressions.
  std::string out;
  std::vector<std::pair<int, int>> stack{{e.root(), 0}};
  while (!stack.empty()) {
    auto& [id, stage] = stack.back();
    const ExprNode& x = e.nodes[id];
    switch (x.op) {
      case Op::intro:
        out += "intro(" + std::to_string(x.a) + "," + x.name + ")";
        stack.pop_back();
        break;
      case Op::union_:
        if (stage == 0) {
          out += "union(";
          stage = 1;
          stack.push_back({x.left, 0});
        } else if (stage == 1) {
          out += ",";
          stage = 2;
          stack.push_back({x.right, 0});
        } else {
          out += ")";
          stack.pop_back();
        }
        break;
      case Op::relab:
      case Op::join:
        if (stage == 0) {
          out += (x.op == Op::relab ? "relab(" : "join(") + std::to_string(x.a) + "," + std::to_string(x.b) + ",";
          stage = 1;
          stack.push_back({x.left, 0});
        } else {
          out += ")";
          stack.pop_back();
        }
        break;
    }
  }
  return out;
}

LabeledGraph evaluate_expr(const CliqueExpr& e) {
  LabeledGraph lg;
  std::vector<int> vertex_of(e.nodes.size(), -1);
  for (std::size_t t = 0; t < e.nodes.size(); ++t)
    if (e.nodes[t].op == Op::intro) {
      vertex_of[t] = static_cast<int>(lg.names.size());
      lg.names.push_back(e.nodes[t].name);
      lg.label.push_back(e.nodes[t].a);
    }
  // Each node owns its vertex list; children are consumed by their parent.
  std::vector<std::vector<Vertex>> members(e.nodes.size());
  std::vector<int> label(lg.label);
  GraphBuilder builder;
  builder.add_vertices(static_cast<int>(lg.names.size()));
  for (std::size_t t = 0; t < e.nodes.size(); ++t) {
    const ExprNode& x = e.nodes[t];
    switch (x.op) {
      case Op::intro:
        members[t] = {vertex_of[t]};
        break;
      case Op::union_: {
        members[t] = std::move(members[x.left]);
        auto& r = members[x.right];
        members[t].insert(members[t].end(), r.begin(), r.end());
        r.clear();
        r.shrink_to_fit();
        break;
      }
      case Op::relab:
        members[t] = std::move(members[x.left]);
        for (Vertex v : members[t])
          if (label[v] == x.a) label[v] = x.b;
        break;
      case Op::join: {
        members[t] = std::move(members[x.left]);
        std::vector<Vertex> li, lj;
        for (Vertex v : members[t]) {
          if (label[v] == x.a) li.push_back(v);
          if (label[v] == x.b) lj.push_back(v);
        }
        builder.add_join(li, lj);
        break;
      }
    }
  }
  if (!e.empty())
    for (Vertex v : members[e.root()]) lg.label[v] = label[v];
  lg.graph = builder.build();
  return lg;
}

ExprValidity validate_expr(const CliqueExpr& e, int k) {
  ExprValidity res;
  res.k_valid = !e.empty() && e.max_label() <= k;
  std::vector<int> count(e.nodes.size(), 0);
  res.linear = true;
  for (std::size_t t = 0; t < e.nodes.size(); ++t) {
    const ExprNode& x = e.nodes[t];
    switch (x.op) {
      case Op::intro: count[t] = 1; break;
      case Op::union_:
        count[t] = count[x.left] + count[x.right];
        if (count[x.right] != 1) res.linear = false;
        break;
      default: count[t] = count[x.left]; break;
    }
  }
  return res;
}

CliqueExpr random_expr(int n, int k, std::uint64_t seed) {
  if (n < 1 || k < 1) throw std::invalid_argument("random_expr needs n >= 1 and k >= 1");
  std::mt19937_64 rng(seed);
  auto below = [&](std::uint64_t m) { return static_cast<int>(rng() % m); };
  auto coin = [&](double p) { return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p; };
  // Per-expression densities so that runs cover sparse and dense graphs.
  double p_join = static_cast<double>(below(1001)) / 1000.0;
  double p_relab = 0.25 + static_cast<double>(below(501)) / 1000.0;
  CliqueExpr e;
  std::vector<int> pool;
  for (int v = 0; v < n; ++v) pool.push_back(e.intro(1 + below(k), "v" + std::to_string(v + 1)));
  auto decorate = [&](int id) {
    if (k == 1) return id;  // a single label admits no join or relabel
    int rounds = 1 + below(2);
    for (int r = 0; r < rounds; ++r) {
      if (coin(p_join)) {
        int i = 1 + below(k), j = 1 + below(k - 1);
        if (j >= i) ++j;
        id = e.join(i, j, id);
      }
      if (coin(p_relab)) {
        int i = 1 + below(k), j = 1 + below(k - 1);
        if (j >= i) ++j;
        id = e.relab(i, j, id);
      }
    }
    return id;
  };
  while (pool.size() > 1) {
    int a = below(pool.size());
    int left = pool[a];
    pool.erase(pool.begin() + a);
    int b = below(pool.size());
    int right = pool[b];
    pool.erase(pool.begin() + b);
    pool.push_back(decorate(e.unite(left, right)));
  }
  return e;
}

}  // namespace cwdel
