#include "cwdel/dp_solver.hpp"

#include <algorithm>
#include <bit>
#include <thread>

namespace cwdel {

DpTable::DpTable(int k_, int r_) : k(k_), r(r_), cost(std::size_t{1} << (k_ * r_), kInf) {}

LabelState DpTable::label_part(LabelState f, int label) const {
  return (f >> ((label - 1) * r)) & static_cast<LabelState>(all_colors(r));
}

LabelState DpTable::make(int r, const std::vector<ColorMask>& per_label) {
  LabelState f = 0;
  for (std::size_t i = 0; i < per_label.size(); ++i) f |= static_cast<LabelState>(per_label[i]) << (i * r);
  return f;
}

namespace {

void check_same_universe(const DpTable& a, const DpTable& b) {
  if (a.k != b.k || a.r != b.r || a.size() != b.size()) throw dp_error("cover product: universe mismatch");
}

DpTable cover_direct(const DpTable& t1, const DpTable& t2, int threads) {
  DpTable out(t1.k, t1.r);
  std::vector<LabelState> f1s, f2s;
  for (LabelState f = 0; f < t1.size(); ++f) {
    if (t1[f] != kInf) f1s.push_back(f);
    if (t2[f] != kInf) f2s.push_back(f);
  }
  auto work = [&](std::size_t begin, std::size_t end, std::vector<std::uint32_t>& dst) {
    for (std::size_t a = begin; a < end; ++a) {
      LabelState f1 = f1s[a];
      std::uint32_t c1 = t1[f1];
      for (LabelState f2 : f2s) {
        std::uint32_t c = sat_add(c1, t2[f2]);
        std::uint32_t& slot = dst[f1 | f2];
        if (c < slot) slot = c;
      }
    }
  };
  threads = std::max(1, threads);
  if (threads == 1 || f1s.size() < 64) {
    work(0, f1s.size(), out.cost);
    return out;
  }
  std::vector<std::vector<std::uint32_t>> parts(threads, std::vector<std::uint32_t>(out.size(), kInf));
  std::vector<std::thread> pool;
  std::size_t chunk = (f1s.size() + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    std::size_t b = std::min(f1s.size(), t * chunk), e = std::min(f1s.size(), b + chunk);
    pool.emplace_back(work, b, e, std::ref(parts[t]));
  }
  for (auto& th : pool) th.join();
  for (const auto& part : parts)
    for (std::size_t f = 0; f < out.size(); ++f) out.cost[f] = std::min(out.cost[f], part[f]);
  return out;
}

// Ranked zeta transform: counts per cost value, multiplied per state, then
// inverted. Counts stay below 4^(kr) <= 2^48 so wrapping arithmetic is exact.
DpTable cover_zeta(const DpTable& t1, const DpTable& t2) {
  DpTable out(t1.k, t1.r);
  std::size_t n = t1.size();
  int bits = t1.bits();
  std::uint32_t m1 = 0, m2 = 0;
  bool any1 = false, any2 = false;
  for (std::size_t f = 0; f < n; ++f) {
    if (t1.cost[f] != kInf) m1 = std::max(m1, t1.cost[f]), any1 = true;
    if (t2.cost[f] != kInf) m2 = std::max(m2, t2.cost[f]), any2 = true;
  }
  if (!any1 || !any2) return out;
  std::size_t d1 = m1 + 1, d2 = m2 + 1, d = m1 + m2 + 1;
  auto zeta = [&](const DpTable& t, std::size_t deg) {
    std::vector<std::uint64_t> z(n * deg, 0);
    for (std::size_t f = 0; f < n; ++f)
      if (t.cost[f] != kInf) z[f * deg + t.cost[f]] = 1;
    for (int b = 0; b < bits; ++b)
      for (std::size_t f = 0; f < n; ++f)
        if (f >> b & 1)
          for (std::size_t x = 0; x < deg; ++x) z[f * deg + x] += z[(f ^ (std::size_t{1} << b)) * deg + x];
    return z;
  };
  auto z1 = zeta(t1, d1), z2 = zeta(t2, d2);
  std::vector<std::uint64_t> prod(n * d, 0);
  for (std::size_t f = 0; f < n; ++f)
    for (std::size_t a = 0; a < d1; ++a) {
      std::uint64_t x = z1[f * d1 + a];
      if (!x) continue;
      for (std::size_t b = 0; b < d2; ++b) prod[f * d + a + b] += x * z2[f * d2 + b];
    }
  z1.clear();
  z2.clear();
  for (int b = 0; b < bits; ++b)
    for (std::size_t f = 0; f < n; ++f)
      if (f >> b & 1)
        for (std::size_t x = 0; x < d; ++x) prod[f * d + x] -= prod[(f ^ (std::size_t{1} << b)) * d + x];
  for (std::size_t f = 0; f < n; ++f)
    for (std::size_t x = 0; x < d; ++x)
      if (prod[f * d + x]) {
        out.cost[f] = static_cast<std::uint32_t>(x);
        break;
      }
  return out;
}

struct NodeInfo {
  std::vector<int> count;  // vertices per label below the node, index label-1
};

std::vector<NodeInfo> label_counts(const CliqueExpr& e, int k) {
  std::vector<NodeInfo> info(e.nodes.size());
  for (std::size_t t = 0; t < e.nodes.size(); ++t) {
    const ExprNode& x = e.nodes[t];
    auto& c = info[t].count;
    switch (x.op) {
      case Op::intro:
        c.assign(k, 0);
        c[x.a - 1] = 1;
        break;
      case Op::union_:
        c = info[x.left].count;
        for (int i = 0; i < k; ++i) c[i] += info[x.right].count[i];
        break;
      case Op::relab:
        c = info[x.left].count;
        c[x.b - 1] += c[x.a - 1];
        c[x.a - 1] = 0;
        break;
      case Op::join:
        c = info[x.left].count;
        break;
    }
  }
  return info;
}

LabelState label_mask(int r, int label) { return static_cast<LabelState>(all_colors(r)) << ((label - 1) * r); }

DpTable intro_table(int k, int r, int label) {
  DpTable t(k, r);
  t[0] = 1;
  for (int c = 0; c < r; ++c) t[LabelState{1} << ((label - 1) * r + c)] = 0;
  return t;
}

// Child state f' -> parent state under relab(i -> j).
LabelState relabel_state(LabelState f, int r, int i, int j) {
  int si = (i - 1) * r, sj = (j - 1) * r;
  LabelState mi = label_mask(r, i);
  LabelState part = (f & mi) >> si;
  return (f & ~mi) | (part << sj);
}

DpTable relab_table(const DpTable& child, int i, int j) {
  DpTable t(child.k, child.r);
  for (LabelState f = 0; f < child.size(); ++f) {
    if (child[f] == kInf) continue;
    LabelState g = relabel_state(f, child.r, i, j);
    t[g] = std::min(t[g], child[f]);
  }
  return t;
}

DpTable join_table(DpTable child, int i, int j) {
  int r = child.r;
  for (LabelState f = 0; f < child.size(); ++f)
    if (child.label_part(f, i) & child.label_part(f, j)) child[f] = kInf;
  (void)r;
  return child;
}

}  // namespace

DpTable cover_product_minplus(const DpTable& t1, const DpTable& t2, CoverMethod method, int threads) {
  check_same_universe(t1, t2);
  return method == CoverMethod::zeta ? cover_zeta(t1, t2) : cover_direct(t1, t2, threads);
}

DpResult solve_expression(const CliqueExpr& e, int r, const DpOptions& options) {
  if (e.empty()) throw dp_error("empty expression");
  if (r < 1) throw dp_error("r must be positive");
  int k = e.max_label();
  if (k * r > options.max_universe)
    throw dp_error("state space 2^" + std::to_string(k * r) + " exceeds cap 2^" + std::to_string(options.max_universe));
  std::size_t per_table = std::size_t{1} << (k * r);
  std::size_t nodes = e.nodes.size();
  if (options.witness && per_table * nodes > options.max_entries)
    throw dp_error("storing " + std::to_string(nodes) + " tables of " + std::to_string(per_table) +
                   " entries exceeds the entry cap; rerun without a witness or raise the cap");
  {
    auto v = validate_expr(e, k);
    if (!v.k_valid) throw dp_error("invalid expression");
  }

  // Child tables are released once consumed unless the witness needs them.
  std::vector<DpTable> tables(nodes);
  for (std::size_t t = 0; t < nodes; ++t) {
    const ExprNode& x = e.nodes[t];
    switch (x.op) {
      case Op::intro: tables[t] = intro_table(k, r, x.a); break;
      case Op::union_:
        tables[t] = cover_product_minplus(tables[x.left], tables[x.right], options.method, options.threads);
        if (!options.witness) {
          tables[x.left] = DpTable();
          tables[x.right] = DpTable();
        }
        break;
      case Op::relab:
        tables[t] = relab_table(tables[x.left], x.a, x.b);
        if (!options.witness) tables[x.left] = DpTable();
        break;
      case Op::join:
        tables[t] = options.witness ? join_table(tables[x.left], x.a, x.b) : join_table(std::move(tables[x.left]), x.a, x.b);
        if (!options.witness) tables[x.left] = DpTable();
        break;
    }
  }

  DpResult res;
  res.k = k;
  res.r = r;
  const DpTable& root = tables[e.root()];
  for (LabelState f = 0; f < root.size(); ++f)
    if (root[f] < res.min_cost) {
      res.min_cost = root[f];
      res.best_state = f;
    }
  if (options.budget) res.decision = static_cast<long long>(res.min_cost) <= *options.budget;
  res.root = root;
  if (options.witness) {
    res.witness = reconstruct_witness(e, tables, res.best_state);
    res.tables = std::move(tables);
  }
  return res;
}

Solution reconstruct_witness(const CliqueExpr& e, const std::vector<DpTable>& tables, LabelState target) {
  if (e.empty()) throw dp_error("empty expression");
  if (tables.size() != e.nodes.size()) throw dp_error("table count does not match expression");
  const DpTable& root = tables[e.root()];
  if (target >= root.size() || root[target] == kInf) throw dp_error("target state has infinite cost");
  int r = root.r;

  std::vector<int> vertex_of(e.nodes.size(), -1);
  int nv = 0;
  for (std::size_t t = 0; t < e.nodes.size(); ++t)
    if (e.nodes[t].op == Op::intro) vertex_of[t] = nv++;
  Solution sol;
  sol.color.assign(nv, kDeleted);

  std::vector<std::pair<int, LabelState>> stack{{e.root(), target}};
  while (!stack.empty()) {
    auto [t, f] = stack.back();
    stack.pop_back();
    const ExprNode& x = e.nodes[t];
    const DpTable& here = tables[t];
    std::uint32_t want = here[f];
    switch (x.op) {
      case Op::intro: {
        LabelState part = here.label_part(f, x.a);
        sol.color[vertex_of[t]] = part ? std::countr_zero(part) + 1 : kDeleted;
        break;
      }
      case Op::join: stack.push_back({x.left, f}); break;
      case Op::relab: {
        // Smallest child state mapping to f with the same cost.
        const DpTable& child = tables[x.left];
        LabelState mi = label_mask(r, x.a), mj = label_mask(r, x.b);
        LabelState fj = (f & mj) >> ((x.b - 1) * r);
        LabelState rest = f & ~mi & ~mj;
        LabelState best = kInf;
        for (LabelState a = fj;; a = (a - 1) & fj) {
          for (LabelState b = fj;; b = (b - 1) & fj) {
            if ((a | b) == fj) {
              LabelState g = rest | (a << ((x.a - 1) * r)) | (b << ((x.b - 1) * r));
              if (child[g] == want && g < best) best = g;
            }
            if (b == 0) break;
          }
          if (a == 0) break;
        }
        if (best == kInf) throw dp_error("witness reconstruction failed at relabel node");
        stack.push_back({x.left, best});
        break;
      }
      case Op::union_: {
        const DpTable& l = tables[x.left];
        const DpTable& rt = tables[x.right];
        LabelState b1 = kInf, b2 = kInf;
        for (LabelState f1 = 0; f1 <= f && b1 == kInf; ++f1) {
          if ((f1 & ~f) || l[f1] == kInf) continue;
          LabelState need = f & ~f1;
          for (LabelState g = 0; g <= f1; ++g) {
            if (g & ~f1) continue;
            LabelState f2 = need | g;
            if (sat_add(l[f1], rt[f2]) == want) {
              b1 = f1;
              b2 = f2;
              break;
            }
          }
        }
        if (b1 == kInf) throw dp_error("witness reconstruction failed at union node");
        stack.push_back({x.left, b1});
        stack.push_back({x.right, b2});
        break;
      }
    }
  }
  return sol;
}

int check_size_invariant(const CliqueExpr& e, const std::vector<DpTable>& tables) {
  if (tables.empty()) return -1;
  int k = tables.front().k, r = tables.front().r;
  auto info = label_counts(e, k);
  for (std::size_t t = 0; t < e.nodes.size(); ++t) {
    const DpTable& tab = tables[t];
    for (LabelState f = 0; f < tab.size(); ++f) {
      if (tab[f] == kInf) continue;
      for (int i = 1; i <= k; ++i)
        if (std::popcount(tab.label_part(f, i)) > info[t].count[i - 1]) return static_cast<int>(t);
    }
  }
  (void)r;
  return -1;
}

}  // namespace cwdel
