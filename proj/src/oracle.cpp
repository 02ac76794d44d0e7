#include "cwdel/oracle.hpp"

#include <algorithm>
#include <bit>
#include <functional>

namespace cwdel {

int Solution::cost() const { return static_cast<int>(std::count(color.begin(), color.end(), kDeleted)); }

std::vector<Vertex> Solution::deleted() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < static_cast<int>(color.size()); ++v)
    if (color[v] == kDeleted) out.push_back(v);
  return out;
}

namespace {

// DSatur-style backtracking list coloring restricted to alive vertices.
class Colorer {
 public:
  Colorer(const Graph& g, int r, const std::vector<ColorMask>& allowed, const std::vector<char>& alive)
      : g_(g), r_(r), allowed_(allowed), alive_(alive), n_(g.num_vertices()) {}

  bool run(std::vector<int>& color) {
    color.assign(n_, kDeleted);
    blocked_.assign(static_cast<std::size_t>(n_) * r_, 0);
    symmetric_ = true;
    todo_ = 0;
    for (Vertex v = 0; v < n_; ++v) {
      if (!alive_[v]) continue;
      ++todo_;
      if (mask(v) != all_colors(r_)) symmetric_ = false;
    }
    color_ = &color;
    used_colors_ = 0;
    return step();
  }

 private:
  ColorMask mask(Vertex v) const { return allowed_.empty() ? all_colors(r_) : (allowed_[v] & all_colors(r_)); }

  ColorMask available(Vertex v) const {
    ColorMask m = mask(v);
    for (int c = 0; c < r_; ++c)
      if (blocked_[static_cast<std::size_t>(v) * r_ + c]) m &= ~(ColorMask{1} << c);
    return m;
  }

  void apply(Vertex v, int c, int delta) {
    for (Vertex w : g_.neighbors(v))
      if (alive_[w]) blocked_[static_cast<std::size_t>(w) * r_ + c] += delta;
  }

  bool step() {
    if (todo_ == 0) return true;
    Vertex best = -1;
    int best_avail = 1 << 30, best_deg = -1;
    ColorMask best_mask = 0;
    for (Vertex v = 0; v < n_; ++v) {
      if (!alive_[v] || (*color_)[v] != kDeleted) continue;
      ColorMask m = available(v);
      int a = std::popcount(m);
      if (a == 0) return false;
      int d = g_.degree(v);
      if (a < best_avail || (a == best_avail && d > best_deg)) {
        best = v;
        best_avail = a;
        best_deg = d;
        best_mask = m;
      }
    }
    --todo_;
    int saved_used = used_colors_;
    bool opened_new = false;
    for (ColorMask m = best_mask; m; m &= m - 1) {
      int c = std::countr_zero(m);
      // Unused colors are interchangeable when every list is full.
      if (symmetric_ && c >= used_colors_) {
        if (opened_new) break;
        opened_new = true;
      }
      (*color_)[best] = c + 1;
      apply(best, c, 1);
      used_colors_ = std::max(saved_used, c + 1);
      if (step()) return true;
      apply(best, c, -1);
      used_colors_ = saved_used;
      (*color_)[best] = kDeleted;
    }
    ++todo_;
    return false;
  }

  const Graph& g_;
  int r_;
  const std::vector<ColorMask>& allowed_;
  const std::vector<char>& alive_;
  int n_;
  std::vector<int> blocked_;
  std::vector<int>* color_ = nullptr;
  bool symmetric_ = true;
  int todo_ = 0;
  int used_colors_ = 0;
};

}  // namespace

std::optional<std::vector<int>> list_color(const Graph& g, int r, const std::vector<ColorMask>& allowed) {
  if (r < 0 || r > 31) throw std::invalid_argument("list_color: r out of range");
  std::vector<char> alive(g.num_vertices(), 1);
  std::vector<int> color;
  if (g.num_vertices() == 0) return color;
  if (r == 0) return std::nullopt;
  Colorer c(g, r, allowed, alive);
  if (!c.run(color)) return std::nullopt;
  return color;
}

DtcResult min_deletions_r_colorable(const Graph& g, int r, int cap, const ColoringQuery& query) {
  if (r < 1 || r > 31) throw std::invalid_argument("min_deletions_r_colorable: r out of range");
  int n = g.num_vertices();
  if (!query.allowed.empty() && static_cast<int>(query.allowed.size()) != n)
    throw std::invalid_argument("query: allowed list size mismatch");
  if (!query.rule.empty() && static_cast<int>(query.rule.size()) != n)
    throw std::invalid_argument("query: rule size mismatch");
  auto rule = [&](Vertex v) { return query.rule.empty() ? DeletionRule::optional : query.rule[v]; };

  std::vector<char> alive(n, 1);
  std::vector<Vertex> optional;
  int forced_cost = 0;
  for (Vertex v = 0; v < n; ++v) {
    DeletionRule ru = rule(v);
    if (ru == DeletionRule::forced || ru == DeletionRule::forced_free) {
      alive[v] = 0;
      if (ru == DeletionRule::forced) ++forced_cost;
    } else if (ru == DeletionRule::optional) {
      optional.push_back(v);
    }
  }
  DtcResult res;
  int m = static_cast<int>(optional.size());
  std::vector<int> color;
  Colorer colorer(g, r, query.allowed, alive);
  for (int k = 0; k <= std::min(m, cap - forced_cost); ++k) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      for (int i = 0; i < k; ++i) alive[optional[idx[i]]] = 0;
      bool ok = colorer.run(color);
      for (int i = 0; i < k; ++i) alive[optional[idx[i]]] = 1;
      if (ok) {
        res.within_cap = true;
        res.cost = k + forced_cost;
        res.witness.color = color;
        return res;
      }
      int i = k - 1;
      while (i >= 0 && idx[i] == m - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return res;
}

int chromatic_number(const Graph& g) {
  int n = g.num_vertices();
  if (n > kChromaticCap)
    throw too_large("chromatic_number: " + std::to_string(n) + " vertices exceeds cap " + std::to_string(kChromaticCap));
  if (n == 0) return 0;
  if (g.num_edges() == 0) return 1;
  for (int k = 2; k <= n; ++k)
    if (list_color(g, k)) return k;
  return n;
}

const char* to_string(ProblemKind k) {
  switch (k) {
    case ProblemKind::VertexCover: return "vertex-cover";
    case ProblemKind::DominatingSet: return "dominating-set";
    case ProblemKind::TotalDominatingSet: return "total-dominating-set";
    case ProblemKind::MaxCut: return "max-cut";
    case ProblemKind::KrFreeDeletion: return "kr-free-deletion";
    case ProblemKind::HittingSet: return "hitting-set";
    case ProblemKind::Sat: return "sat";
  }
  return "?";
}

namespace {

using Mask64 = std::uint64_t;

std::vector<Mask64> adjacency_masks(const Graph& g) {
  std::vector<Mask64> adj(g.num_vertices(), 0);
  for (auto [u, v] : g.edges()) {
    adj[u] |= Mask64{1} << v;
    adj[v] |= Mask64{1} << u;
  }
  return adj;
}

std::vector<int> mask_to_list(Mask64 m) {
  std::vector<int> out;
  for (; m; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

void check_cap(const Graph& g, int cap, const char* what) {
  if (g.num_vertices() > cap)
    throw too_large(std::string(what) + ": " + std::to_string(g.num_vertices()) + " vertices exceeds cap " +
                    std::to_string(cap));
}

class VertexCoverSearch {
 public:
  explicit VertexCoverSearch(const Graph& g) : adj_(adjacency_masks(g)), n_(g.num_vertices()) {}

  ExactResult run() {
    Mask64 all = n_ == 64 ? ~Mask64{0} : ((Mask64{1} << n_) - 1);
    best_ = n_ + 1;
    search(all, 0, 0);
    ExactResult r;
    r.value = best_;
    r.witness = mask_to_list(best_set_);
    return r;
  }

 private:
  int deg(int v, Mask64 alive) const { return std::popcount(adj_[v] & alive); }

  int matching_bound(Mask64 alive) const {
    int m = 0;
    Mask64 free = alive;
    while (free) {
      int v = std::countr_zero(free);
      free &= ~(Mask64{1} << v);
      Mask64 nb = adj_[v] & free;
      if (nb) {
        free &= ~(Mask64{1} << std::countr_zero(nb));
        ++m;
      }
    }
    return m;
  }

  // Exact cover of a graph with maximum degree 2.
  Mask64 cover_paths_cycles(Mask64 alive) const {
    Mask64 cover = 0, left = alive;
    while (left) {
      // Start at a degree <= 1 vertex when the component is a path.
      int start = -1;
      Mask64 comp = 0, frontier = Mask64{1} << std::countr_zero(left);
      while (frontier) {
        int x = std::countr_zero(frontier);
        frontier &= frontier - 1;
        comp |= Mask64{1} << x;
        frontier |= adj_[x] & alive & ~comp;
      }
      for (Mask64 c = comp; c; c &= c - 1) {
        int x = std::countr_zero(c);
        if (deg(x, alive) <= 1) {
          start = x;
          break;
        }
      }
      bool cycle = start == -1;
      if (cycle) start = std::countr_zero(comp);
      std::vector<int> walk{start};
      Mask64 seen = Mask64{1} << start;
      while (true) {
        Mask64 nb = adj_[walk.back()] & comp & ~seen;
        if (!nb) break;
        int x = std::countr_zero(nb);
        seen |= Mask64{1} << x;
        walk.push_back(x);
      }
      for (std::size_t i = 1; i < walk.size(); i += 2) cover |= Mask64{1} << walk[i];
      if (cycle && walk.size() % 2 == 1 && walk.size() > 1) cover |= Mask64{1} << walk[0];
      left &= ~comp;
    }
    return cover;
  }

  void search(Mask64 alive, int count, Mask64 chosen) {
    // Drop isolated vertices and apply the degree-one rule.
    bool changed = true;
    while (changed) {
      changed = false;
      for (Mask64 a = alive; a; a &= a - 1) {
        int v = std::countr_zero(a);
        if (!(alive >> v & 1)) continue;
        int d = deg(v, alive);
        if (d == 0) {
          alive &= ~(Mask64{1} << v);
          changed = true;
        } else if (d == 1) {
          int u = std::countr_zero(adj_[v] & alive);
          chosen |= Mask64{1} << u;
          ++count;
          alive &= ~((Mask64{1} << u) | (Mask64{1} << v));
          changed = true;
        }
      }
    }
    if (count + matching_bound(alive) >= best_) return;
    if (!alive) {
      best_ = count;
      best_set_ = chosen;
      return;
    }
    int v = -1, dv = -1;
    for (Mask64 a = alive; a; a &= a - 1) {
      int x = std::countr_zero(a);
      int d = deg(x, alive);
      if (d > dv) {
        dv = d;
        v = x;
      }
    }
    if (dv <= 2) {
      Mask64 c = cover_paths_cycles(alive);
      int total = count + std::popcount(c);
      if (total < best_) {
        best_ = total;
        best_set_ = chosen | c;
      }
      return;
    }
    search(alive & ~(Mask64{1} << v), count + 1, chosen | (Mask64{1} << v));
    Mask64 nb = adj_[v] & alive;
    search(alive & ~nb & ~(Mask64{1} << v), count + std::popcount(nb), chosen | nb);
  }

  std::vector<Mask64> adj_;
  int n_;
  int best_ = 0;
  Mask64 best_set_ = 0;
};

// Smallest subset X (by size, then lexicographic on the bit pattern) with
// covered(X) == all, where covered ORs the per-vertex masks.
ExactResult min_cover_by_masks(const std::vector<Mask64>& cover_of, int n) {
  ExactResult r;
  Mask64 all = n == 64 ? ~Mask64{0} : ((Mask64{1} << n) - 1);
  if (n == 0) return r;
  for (int k = 1; k <= n; ++k) {
    Mask64 x = (Mask64{1} << k) - 1;
    while (x <= all) {
      Mask64 cov = 0;
      for (Mask64 m = x; m; m &= m - 1) cov |= cover_of[std::countr_zero(m)];
      if (cov == all) {
        r.value = k;
        r.witness = mask_to_list(x);
        return r;
      }
      // Gosper's hack: next subset with the same popcount.
      Mask64 c = x & -x, nx = x + c;
      if (nx == 0) break;
      x = (((nx ^ x) >> 2) / c) | nx;
      if (x > all) break;
    }
  }
  r.feasible = false;
  return r;
}

bool find_clique(const std::vector<Mask64>& adj, Mask64 cand, int need, std::vector<int>& out) {
  if (need == 0) return true;
  while (cand) {
    if (std::popcount(cand) < need) return false;
    int v = std::countr_zero(cand);
    cand &= cand - 1;
    out.push_back(v);
    if (find_clique(adj, cand & adj[v], need - 1, out)) return true;
    out.pop_back();
  }
  return false;
}

bool kr_free_within(const std::vector<Mask64>& adj, Mask64 alive, int r, int budget, Mask64& deleted) {
  std::vector<int> clique;
  if (!find_clique(adj, alive, r, clique)) return true;
  if (budget == 0) return false;
  for (int v : clique) {
    deleted |= Mask64{1} << v;
    if (kr_free_within(adj, alive & ~(Mask64{1} << v), r, budget - 1, deleted)) return true;
    deleted &= ~(Mask64{1} << v);
  }
  return false;
}

bool hitting_within(const HittingSetInstance& h, std::vector<char>& chosen, int budget) {
  const std::vector<int>* unhit = nullptr;
  for (const auto& s : h.sets)
    if (std::none_of(s.begin(), s.end(), [&](int x) { return chosen[x]; })) {
      unhit = &s;
      break;
    }
  if (!unhit) return true;
  if (budget == 0) return false;
  for (int x : *unhit) {
    chosen[x] = 1;
    if (hitting_within(h, chosen, budget - 1)) return true;
    chosen[x] = 0;
  }
  return false;
}

class Dpll {
 public:
  explicit Dpll(const CnfFormula& f) : f_(f), value_(f.num_vars, -1) {}

  bool run(std::vector<int>& out) {
    if (!solve()) return false;
    out.resize(f_.num_vars);
    for (int v = 0; v < f_.num_vars; ++v) out[v] = value_[v] == 1 ? 1 : 0;
    return true;
  }

 private:
  // 1 satisfied, 0 conflict, -1 open with exactly one free literal in *unit.
  int status(const std::vector<int>& c, int* unit, int* free_count) const {
    int free = 0;
    for (int lit : c) {
      int v = value_[std::abs(lit) - 1];
      if (v == -1) {
        ++free;
        *unit = lit;
      } else if ((v == 1) == (lit > 0)) {
        return 1;
      }
    }
    *free_count = free;
    return free == 0 ? 0 : -1;
  }

  bool solve() {
    std::vector<int> trail;
    auto undo = [&] {
      for (int v : trail) value_[v] = -1;
    };
    // Unit propagation to a fixpoint.
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& c : f_.clauses) {
        int unit = 0, free = 0;
        int s = status(c, &unit, &free);
        if (s == 1) continue;
        if (s == 0) {
          undo();
          return false;
        }
        if (free == 1) {
          int v = std::abs(unit) - 1;
          value_[v] = unit > 0 ? 1 : 0;
          trail.push_back(v);
          changed = true;
        }
      }
    }
    int branch = -1;
    for (int v = 0; v < f_.num_vars; ++v)
      if (value_[v] == -1) {
        branch = v;
        break;
      }
    if (branch == -1) return true;
    for (int val : {0, 1}) {
      value_[branch] = val;
      if (solve()) return true;
      value_[branch] = -1;
    }
    undo();
    return false;
  }

  const CnfFormula& f_;
  std::vector<int> value_;
};

}  // namespace

ExactResult min_vertex_cover(const Graph& g) {
  check_cap(g, kVertexCoverCap, "vertex cover oracle");
  if (g.num_vertices() == 0) return {};
  return VertexCoverSearch(g).run();
}

ExactResult min_dominating_set(const Graph& g) {
  check_cap(g, kDominationCap, "dominating set oracle");
  auto adj = adjacency_masks(g);
  for (int v = 0; v < g.num_vertices(); ++v) adj[v] |= Mask64{1} << v;
  return min_cover_by_masks(adj, g.num_vertices());
}

ExactResult min_total_dominating_set(const Graph& g) {
  check_cap(g, kDominationCap, "total dominating set oracle");
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (g.degree(v) == 0) {
      ExactResult r;
      r.feasible = false;
      return r;
    }
  return min_cover_by_masks(adjacency_masks(g), g.num_vertices());
}

ExactResult max_cut(const Graph& g) {
  check_cap(g, kMaxCutCap, "max cut oracle");
  int n = g.num_vertices();
  ExactResult r;
  if (n <= 1) return r;
  auto adj = adjacency_masks(g);
  // Gray-code walk over the sides of vertices 0..n-2; vertex n-1 stays on side 0.
  Mask64 side = 0, best_side = 0;
  long long cut = 0, best = 0;
  std::uint64_t steps = std::uint64_t{1} << (n - 1);
  for (std::uint64_t i = 1; i < steps; ++i) {
    int v = std::countr_zero(i);
    Mask64 same = (side >> v & 1) ? side : ~side;
    int s = std::popcount(adj[v] & same);
    int d = std::popcount(adj[v]);
    cut += 2 * s - d;
    side ^= Mask64{1} << v;
    if (cut > best) {
      best = cut;
      best_side = side;
    }
  }
  r.value = best;
  r.witness = mask_to_list(best_side);
  return r;
}

ExactResult min_kr_free_deletion(const Graph& g, int r) {
  if (r < 3) throw std::invalid_argument("K_r-free deletion needs r >= 3");
  check_cap(g, kVertexCoverCap, "K_r-free deletion oracle");
  int n = g.num_vertices();
  auto adj = adjacency_masks(g);
  Mask64 all = n == 64 ? ~Mask64{0} : ((Mask64{1} << n) - 1);
  ExactResult res;
  for (int k = 0; k <= n; ++k) {
    Mask64 deleted = 0;
    if (kr_free_within(adj, all, r, k, deleted)) {
      res.value = k;
      res.witness = mask_to_list(deleted);
      return res;
    }
  }
  return res;
}

ExactResult min_hitting_set(const HittingSetInstance& h) {
  h.check();
  ExactResult res;
  std::vector<char> chosen(h.universe, 0);
  for (int k = 0; k <= h.universe; ++k) {
    std::fill(chosen.begin(), chosen.end(), 0);
    if (hitting_within(h, chosen, k)) {
      res.value = k;
      for (int x = 0; x < h.universe; ++x)
        if (chosen[x]) res.witness.push_back(x);
      return res;
    }
  }
  res.feasible = false;
  return res;
}

ExactResult solve_sat(const CnfFormula& f) {
  f.check();
  ExactResult res;
  Dpll d(f);
  res.feasible = d.run(res.witness);
  res.value = res.feasible ? 1 : 0;
  return res;
}

ExactResult solve_exact(const Problem& p, const ProblemInstance& instance) {
  auto graph = [&]() -> const Graph& {
    if (!std::holds_alternative<Graph>(instance)) throw std::invalid_argument("problem expects a graph instance");
    return std::get<Graph>(instance);
  };
  switch (p.kind) {
    case ProblemKind::VertexCover: return min_vertex_cover(graph());
    case ProblemKind::DominatingSet: return min_dominating_set(graph());
    case ProblemKind::TotalDominatingSet: return min_total_dominating_set(graph());
    case ProblemKind::MaxCut: return max_cut(graph());
    case ProblemKind::KrFreeDeletion: return min_kr_free_deletion(graph(), p.r);
    case ProblemKind::HittingSet:
      if (!std::holds_alternative<HittingSetInstance>(instance))
        throw std::invalid_argument("problem expects a hitting set instance");
      return min_hitting_set(std::get<HittingSetInstance>(instance));
    case ProblemKind::Sat:
      if (!std::holds_alternative<CnfFormula>(instance)) throw std::invalid_argument("problem expects a formula");
      return solve_sat(std::get<CnfFormula>(instance));
  }
  throw std::invalid_argument("unknown problem kind");
}

}  // namespace cwdel
