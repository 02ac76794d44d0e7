#include "cwdel/reductions.hpp"

#include <algorithm>
#include <bit>
#include <boost/multiprecision/cpp_int.hpp>
#include <functional>
#include <stdexcept>

namespace cwdel {

using boost::multiprecision::cpp_int;

const char* to_string(Setting s) { return s == Setting::dense ? "dense" : "sparse"; }

const char* to_string(ReductionKind k) {
  switch (k) {
    case ReductionKind::dense: return "dense";
    case ReductionKind::sparse: return "sparse";
    case ReductionKind::vc: return "vc";
  }
  return "?";
}

namespace {

cpp_int factorial(int n) {
  cpp_int f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

cpp_int binom_big(int n, int k) {
  if (k < 0 || k > n) return 0;
  cpp_int c = 1;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

long long binom_ll(int n, int k) {
  cpp_int c = binom_big(n, k);
  if (c > cpp_int(std::numeric_limits<long long>::max() / 4)) return std::numeric_limits<long long>::max() / 4;
  return static_cast<long long>(c);
}

void check_pr(int p0, int r) {
  if (p0 < 1) throw std::invalid_argument("p0 must be at least 1");
  if (r < 2 || r > 8) throw std::invalid_argument("r must lie in [2, 8]");
}

std::vector<int> dense_levels(int r, int p) {
  std::vector<int> c(r + 1);
  for (int l = 0; l <= r; ++l) c[l] = static_cast<int>(binom_ll(r, l) * p >> r);
  return c;
}

}  // namespace

int choose_p_dense(int p0, int r) {
  check_pr(p0, r);
  int two_r = 1 << r;
  cpp_int fact = factorial(two_r - 1);
  cpp_int rhs_base = cpp_int(1) << (p0 + two_r);
  for (int p = two_r;; p += two_r) {
    cpp_int lhs = boost::multiprecision::pow(cpp_int(two_r), p) * fact;
    cpp_int rhs = rhs_base * boost::multiprecision::pow(cpp_int(p), two_r);
    if (lhs >= rhs) return p;
  }
}

int choose_p_sparse(int p0, int r) {
  check_pr(p0, r);
  for (int p = r + 1;; p += r + 1)
    if (boost::multiprecision::pow(cpp_int(r + 1), p) >= (cpp_int(p + 1) << p0)) return p;
}

namespace {

cpp_int phi_size_big(Setting s, int r, int p) {
  if (s == Setting::dense) {
    auto c = dense_levels(r, p);
    cpp_int n = factorial(p);
    for (int l = 0; l <= r; ++l) n /= factorial(c[l]);
    for (int l = 0; l <= r; ++l) n *= boost::multiprecision::pow(binom_big(r, l), c[l]);
    return n;
  }
  int bot = p / (r + 1);
  return binom_big(p, bot) * boost::multiprecision::pow(cpp_int(r), p - bot);
}

}  // namespace

std::string phi_size(Setting s, int r, int p) { return phi_size_big(s, r, p).str(); }

bool phi_size_at_least(Setting s, int r, int p, int p0) { return phi_size_big(s, r, p) >= (cpp_int(1) << p0); }

ReductionParams make_params(Setting s, const CnfFormula& f, int r, int p0) {
  f.check();
  if (f.num_vars < 1 || f.clauses.empty()) throw std::invalid_argument("formula needs variables and clauses");
  ReductionParams pr;
  pr.setting = s;
  pr.r = r;
  pr.p0 = p0;
  pr.t = (f.num_vars + p0 - 1) / p0;
  pr.p = s == Setting::dense ? choose_p_dense(p0, r) : choose_p_sparse(p0, r);
  if (s == Setting::dense) pr.level_count = dense_levels(r, pr.p);
  pr.q = f.max_clause_width();
  return pr;
}

std::vector<ColorMask> subset_ranking(int r) {
  std::vector<ColorMask> masks(std::size_t{1} << r);
  for (std::size_t m = 0; m < masks.size(); ++m) masks[m] = static_cast<ColorMask>(m);
  auto elems = [](ColorMask m) {
    std::vector<int> e;
    for (int c = 0; m >> c; ++c)
      if (m >> c & 1) e.push_back(c);
    return e;
  };
  std::sort(masks.begin(), masks.end(), [&](ColorMask a, ColorMask b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb) return pa < pb;
    return elems(a) < elems(b);
  });
  return masks;
}

int PhiTable::assignment_index(const std::vector<int>& tau) const {
  int g = static_cast<int>(variables.size()), a = 0;
  for (int k = 0; k < g; ++k)
    if (tau.at(variables[k])) a |= 1 << (g - 1 - k);
  return a;
}

bool PhiTable::satisfies(const CnfFormula& f, std::size_t clause, int assignment) const {
  int g = static_cast<int>(variables.size());
  for (int lit : f.clauses.at(clause)) {
    int var = std::abs(lit) - 1;
    auto it = std::find(variables.begin(), variables.end(), var);
    if (it == variables.end()) continue;
    int k = static_cast<int>(it - variables.begin());
    bool value = assignment >> (g - 1 - k) & 1;
    if (value == (lit > 0)) return true;
  }
  return false;
}

PhiTable build_phi_kappa(Setting s, const ReductionParams& params, const std::vector<int>& variables,
                         std::size_t max_members) {
  int r = params.r, p = params.p;
  if (variables.empty() || static_cast<int>(variables.size()) > params.p0)
    throw std::invalid_argument("group must hold 1..p0 variables");
  cpp_int count = phi_size_big(s, r, p);
  if (count < (cpp_int(1) << variables.size())) throw std::logic_error("|Phi| < 2^p0: p was chosen too small");
  if (count > cpp_int(max_members))
    throw std::runtime_error("Phi has " + count.str() + " members, above the enumeration cap");

  PhiTable table;
  table.variables = variables;
  auto ranking = subset_ranking(r);
  std::vector<ColorMask> options;
  std::vector<int> remaining;  // indexed by the option's class
  std::function<int(ColorMask)> cls;
  if (s == Setting::dense) {
    options = ranking;
    remaining = params.level_count;
    cls = [r](ColorMask m) { return r - std::popcount(m); };
  } else {
    for (ColorMask m : ranking)
      if (std::popcount(m) <= 1) options.push_back(m);
    remaining = {p - p / (r + 1), p / (r + 1)};
    cls = [](ColorMask m) { return m == 0 ? 1 : 0; };
  }
  table.members.reserve(static_cast<std::size_t>(count));
  PhiMember cur(p);
  std::function<void(int)> rec = [&](int pos) {
    if (pos == p) {
      table.members.push_back(cur);
      return;
    }
    for (ColorMask m : options) {
      int c = cls(m);
      if (remaining[c] == 0) continue;
      --remaining[c];
      cur[pos] = m;
      rec(pos + 1);
      ++remaining[c];
    }
  };
  rec(0);
  table.kappa.resize(std::size_t{1} << variables.size());
  for (std::size_t a = 0; a < table.kappa.size(); ++a) table.kappa[a] = static_cast<int>(a);
  return table;
}

std::vector<Vertex> ReductionInstance::modulator_vertices() const {
  std::vector<Vertex> out;
  for (const auto& b : modulator) out.insert(out.end(), b.begin(), b.end());
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<std::vector<int>> make_groups(const CnfFormula& f, int p0) {
  std::vector<std::vector<int>> groups;
  for (int v = 0; v < f.num_vars; v += p0) {
    groups.emplace_back();
    for (int k = v; k < std::min(f.num_vars, v + p0); ++k) groups.back().push_back(k);
  }
  return groups;
}

int structure_size(const ReductionParams& pr, int l) {
  // |S| for level l (dense) or for the single sparse family (l = 0).
  int r = pr.r, p = pr.p;
  if (pr.setting == Setting::sparse) return r * p / (r + 1) + 1;
  long long at_least = 0;
  for (int j = r - l + 1; j <= r; ++j) at_least += binom_ll(r, j);
  return static_cast<int>((at_least * p >> r) + 1);
}

long long copies(const ReductionParams& pr) {
  return pr.setting == Setting::dense ? 1 + static_cast<long long>(pr.t) * pr.r * pr.p / 2
                                      : 1 + static_cast<long long>(pr.t) * pr.p / (pr.r + 1);
}

int color_set_size(int r, int missing) { return 2 * missing + 1 + (missing + 1) * (r - 1); }

int thick_size(int r, int l) { return r + (l - 1) + l * (l - 1) * (r - 1); }

int critical_size(int r, int min_size) { return pick_critical(r, min_size).graph.num_vertices(); }

long long sat_add_ll(long long a, long long b) {
  constexpr long long cap = std::numeric_limits<long long>::max() / 4;
  return std::min(cap, a + b);
}

long long sat_mul_ll(long long a, long long b) {
  constexpr long long cap = std::numeric_limits<long long>::max() / 4;
  if (a != 0 && b > cap / a) return cap;
  return std::min(cap, a * b);
}

long long member_count_ll(const ReductionParams& pr) {
  cpp_int c = phi_size_big(pr.setting, pr.r, pr.p);
  if (c > cpp_int(std::numeric_limits<long long>::max() / 4)) return std::numeric_limits<long long>::max() / 4;
  return static_cast<long long>(c);
}

long long decoder_size(const ReductionParams& pr) {
  int r = pr.r, p = pr.p;
  if (pr.setting == Setting::dense) {
    const auto& c = pr.level_count;
    long long s = r + (p - c[0]) + 1;
    for (int l = 1; l <= r; ++l) s += static_cast<long long>(c[l]) * color_set_size(r, l);
    return s;
  }
  int bot = p / (r + 1);
  return r + p + 1 + static_cast<long long>(bot) * color_set_size(r, r) +
         static_cast<long long>(p - bot) * color_set_size(r, r - 1);
}

// Number of thin arrows into Z^j.
long long clause_arrows(const CnfFormula& f, const std::vector<std::vector<int>>& groups, std::size_t j) {
  long long n = 0;
  for (const auto& g : groups) {
    PhiTable probe;
    probe.variables = g;
    for (int a = 0; a < (1 << g.size()); ++a) n += probe.satisfies(f, j, a);
  }
  return n;
}

}  // namespace

long long predict_vertices(const CnfFormula& f, const ReductionParams& pr) {
  int r = pr.r, p = pr.p;
  auto groups = make_groups(f, pr.p0);
  long long total = r + sat_mul_ll(pr.t, pr.setting == Setting::dense ? 1LL * p * r : p);
  long long per_group = 0;
  if (pr.setting == Setting::dense) {
    for (int l = 1; l <= r; ++l) {
      int s = structure_size(pr, l);
      long long one = critical_size(r, s) + static_cast<long long>(s) * thick_size(r, l);
      per_group = sat_add_ll(per_group, sat_mul_ll(sat_mul_ll(binom_ll(p, s), copies(pr)), one));
    }
  } else {
    int s = structure_size(pr, 0);
    long long one = critical_size(r, s) + static_cast<long long>(s) * (2 * r - 1);
    per_group = sat_mul_ll(sat_mul_ll(binom_ll(p, s), copies(pr)), one);
  }
  total = sat_add_ll(total, sat_mul_ll(per_group, pr.t));
  long long members = member_count_ll(pr);
  int z = critical_size(r, pr.q << pr.p0);
  for (std::size_t j = 0; j < f.clauses.size(); ++j) {
    total = sat_add_ll(total, z + clause_arrows(f, groups, j) * (2 * r - 1));
    total = sat_add_ll(total, sat_mul_ll(sat_mul_ll(members, pr.t), decoder_size(pr)));
  }
  return total;
}

namespace {

class SatCompiler {
 public:
  SatCompiler(const CnfFormula& f, const ReductionParams& pr) : f_(f), pr_(pr) {}

  ReductionInstance run() {
    auto& inst = inst_;
    inst.kind = pr_.setting == Setting::dense ? ReductionKind::dense : ReductionKind::sparse;
    inst.params = pr_;
    inst.declared_width = pr_.r;
    inst.twinclass_modulator = pr_.setting == Setting::dense;
    build_central();
    for (int i = 0; i < pr_.t; ++i) build_structure(i);
    for (std::size_t j = 0; j < f_.clauses.size(); ++j) build_clause(j);
    inst.graph = b_.build();
    finish_witnesses();
    for (const auto& e : inst.packing) inst.packing_cost += e.claim;
    long long central_budget = pr_.setting == Setting::dense ? 1LL * pr_.t * pr_.r * pr_.p / 2
                                                             : 1LL * pr_.t * pr_.p / (pr_.r + 1);
    inst.budget = inst.packing_cost + central_budget;
    return std::move(inst);
  }

 private:
  std::string group_tag(int i) const { return "[" + std::to_string(i + 1) + "]"; }

  void build_central() {
    int r = pr_.r;
    for (int s = 1; s <= r; ++s) inst_.central_clique.push_back(b_.add_vertex("f" + std::to_string(s)));
    b_.add_clique(inst_.central_clique);
    auto groups = make_groups(f_, pr_.p0);
    for (int i = 0; i < pr_.t; ++i) {
      inst_.groups.push_back(build_phi_kappa(pr_.setting, pr_, groups[i]));
      auto& classes = inst_.central.emplace_back();
      for (int k = 0; k < pr_.p; ++k) {
        std::string tag = "U" + group_tag(i) + "," + std::to_string(k + 1);
        auto& cls = classes.emplace_back();
        if (pr_.setting == Setting::dense) {
          for (int x = 0; x < r; ++x) cls.push_back(b_.add_vertex(tag + "/" + std::to_string(x + 1)));
          b_.add_clique(cls);
        } else {
          cls.push_back(b_.add_vertex(tag));
        }
        inst_.modulator.push_back(cls);
      }
    }
    for (Vertex f : inst_.central_clique) inst_.modulator.push_back({f});
  }

  // Adds a critical graph and returns its decomposition in builder ids and
  // its vertices in private-pick order.
  std::pair<TreeDecomposition, std::vector<Vertex>> add_critical(const CriticalGraph& c, const std::string& tag) {
    Vertex off = b_.add_graph(c.graph, tag + "/");
    std::vector<Vertex> map(c.graph.num_vertices());
    for (std::size_t v = 0; v < map.size(); ++v) map[v] = off + static_cast<Vertex>(v);
    std::vector<Vertex> order;
    for (Vertex v : c.label_order()) order.push_back(off + v);
    return {relabel(c.decomposition, map), order};
  }

  void build_structure(int i) {
    int r = pr_.r, p = pr_.p;
    int lo = pr_.setting == Setting::dense ? 1 : 0, hi = pr_.setting == Setting::dense ? r : 0;
    for (int l = lo; l <= hi; ++l) {
      int s = structure_size(pr_, l);
      CriticalGraph crit = pick_critical(r, s);
      std::vector<int> S(s);
      for (int k = 0; k < s; ++k) S[k] = k;
      int index = 0;
      while (true) {
        ++index;
        for (long long c = 0; c < copies(pr_); ++c) {
          std::string tag = "L" + group_tag(i) + (l ? "," + std::to_string(l) : "") + "," + std::to_string(index) +
                            "," + std::to_string(c + 1);
          auto [tree, priv] = add_critical(crit, tag);
          for (int k = 0; k < s; ++k) {
            const auto& U = inst_.central[i][S[k]];
            std::string atag = tag + "/a" + std::to_string(k + 1);
            if (pr_.setting == Setting::dense) {
              ThickArrow a = add_thick_arrow(b_, U, priv[k], l, r, atag);
              inst_.packing.push_back(a.piece);
              attach(tree, a.local);
              inst_.thick.push_back(std::move(a));
            } else {
              ThinArrow a = add_thin_arrow(b_, U[0], priv[k], r, atag);
              inst_.packing.push_back(a.piece);
              attach(tree, a.local);
              inst_.thin.push_back(std::move(a));
            }
          }
          trees_.push_back(std::move(tree));
        }
        int k = s - 1;
        while (k >= 0 && S[k] == p - s + k) --k;
        if (k < 0) break;
        ++S[k];
        for (int x = k + 1; x < s; ++x) S[x] = S[x - 1] + 1;
      }
    }
  }

  void build_clause(std::size_t j) {
    int r = pr_.r;
    std::string ctag = "[" + std::to_string(j + 1) + "]";
    CriticalGraph crit = pick_critical(r, pr_.q << pr_.p0);
    auto [ztree, priv] = add_critical(crit, "Z" + ctag);
    std::size_t next_private = 0;
    const auto& F = inst_.central_clique;
    for (int i = 0; i < pr_.t; ++i) {
      const PhiTable& phi = inst_.groups[i];
      for (std::size_t mi = 0; mi < phi.members.size(); ++mi) {
        const PhiMember& m = phi.members[mi];
        std::string ytag = "Y" + ctag + group_tag(i) + "," + std::to_string(mi + 1);
        int indep = 1;
        if (pr_.setting == Setting::dense) {
          for (ColorMask c : m) indep += c != all_colors(r);
          if (indep - 1 != pr_.p - pr_.level_count[0])
            throw std::logic_error("decoding gadget: unexpected number of non-full twinclasses");
        } else {
          indep += pr_.p;
        }
        DecoderRecord rec;
        rec.clause = static_cast<int>(j);
        rec.group = i;
        rec.member = static_cast<int>(mi);
        rec.gadget = add_decoding_gadget(b_, indep, r, ytag);
        inst_.packing.push_back(rec.gadget.piece);
        int slot = 1;
        for (int k = 0; k < pr_.p; ++k) {
          if (pr_.setting == Setting::dense && m[k] == all_colors(r)) continue;
          std::vector<Vertex> U = inst_.central[i][k];
          ColorSetGadget g =
              add_color_set_gadget(b_, U, rec.gadget.indep[slot++], m[k], F, r, ytag + "/W" + std::to_string(k + 1));
          if (pr_.setting == Setting::dense) {
            inst_.packing.push_back(g.piece);
          } else {
            for (const auto& e : g.edges) inst_.packing.push_back({e.clique(), 1});
          }
          rec.color_sets.push_back(static_cast<int>(inst_.color_sets.size()));
          inst_.color_sets.push_back(std::move(g));
        }
        bool linked = mi < phi.kappa.size() && phi.satisfies(f_, j, static_cast<int>(mi));
        TreeDecomposition* host = &ztree;
        if (linked) {
          if (next_private >= priv.size()) throw std::logic_error("clause gadget has too few private vertices");
          ThinArrow a = add_thin_arrow(b_, rec.gadget.hat, priv[next_private++], r, ytag + "/z");
          inst_.packing.push_back(a.piece);
          attach(ztree, a.local);
          rec.arrow = static_cast<int>(inst_.thin.size());
          inst_.thin.push_back(std::move(a));
        } else {
          host = &trees_.emplace_back();
        }
        attach(*host, rec.gadget.local);
        for (int idx : rec.color_sets) attach(*host, inst_.color_sets[idx].local);
        inst_.decoders.push_back(std::move(rec));
      }
    }
    trees_.push_back(std::move(ztree));
  }

  void finish_witnesses() {
    std::vector<char> in_mod(inst_.graph.num_vertices(), 0);
    for (const auto& blk : inst_.modulator)
      for (Vertex v : blk) in_mod[v] = 1;
    for (auto& t : trees_) {
      ComponentWitness w;
      for (auto& bag : t.bags) {
        bag.erase(std::remove_if(bag.begin(), bag.end(), [&](Vertex v) { return in_mod[v]; }), bag.end());
        w.vertices.insert(w.vertices.end(), bag.begin(), bag.end());
      }
      std::sort(w.vertices.begin(), w.vertices.end());
      w.vertices.erase(std::unique(w.vertices.begin(), w.vertices.end()), w.vertices.end());
      w.decomposition = std::move(t);
      inst_.witnesses.push_back(std::move(w));
    }
    trees_.clear();
  }

  const CnfFormula& f_;
  ReductionParams pr_;
  GraphBuilder b_;
  ReductionInstance inst_;
  std::vector<TreeDecomposition> trees_;
};

ReductionInstance build_sat_reduction(Setting s, const CnfFormula& f, int r, int p0, long long max_vertices) {
  ReductionParams pr = make_params(s, f, r, p0);
  long long predicted = predict_vertices(f, pr);
  if (predicted > max_vertices) throw size_guard_error(predicted, max_vertices);
  return SatCompiler(f, pr).run();
}

}  // namespace

ReductionInstance build_dense_reduction(const CnfFormula& f, int r, int p0, long long max_vertices) {
  return build_sat_reduction(Setting::dense, f, r, p0, max_vertices);
}

ReductionInstance build_sparse_reduction(const CnfFormula& f, int r, int p0, long long max_vertices) {
  return build_sat_reduction(Setting::sparse, f, r, p0, max_vertices);
}

Solution forward_solution(const ReductionInstance& inst, const CnfFormula& f, const std::vector<int>& tau) {
  if (inst.kind == ReductionKind::vc) throw std::invalid_argument("forward_solution needs a dense or sparse instance");
  if (static_cast<int>(tau.size()) != f.num_vars || !f.satisfied_by(tau))
    throw std::invalid_argument("assignment does not satisfy the formula");
  const Graph& g = inst.graph;
  int r = inst.params.r;
  constexpr int undecided = -1;
  std::vector<int> color(g.num_vertices(), undecided);
  for (int s = 0; s < r; ++s) color[inst.central_clique[s]] = s + 1;

  std::vector<int> chosen(inst.groups.size());
  for (std::size_t i = 0; i < inst.groups.size(); ++i) {
    const PhiTable& phi = inst.groups[i];
    chosen[i] = phi.kappa[phi.assignment_index(tau)];
    const PhiMember& m = phi.members[chosen[i]];
    for (std::size_t k = 0; k < m.size(); ++k) {
      std::vector<Vertex> U = inst.central[i][k];
      std::sort(U.begin(), U.end());
      std::size_t x = 0;
      for (int c = 1; c <= r; ++c)
        if (m[k] >> (c - 1) & 1) color[U[x++]] = c;
      for (; x < U.size(); ++x) color[U[x]] = kDeleted;
    }
  }

  auto del = [&](const std::vector<Vertex>& vs) {
    for (Vertex v : vs) color[v] = kDeleted;
  };
  for (const auto& a : inst.thick) {
    int d = 0;
    for (Vertex u : a.U) d += color[u] == kDeleted;
    del(a.prescribed_deletions(d));
  }
  for (const auto& gad : inst.color_sets) {
    ColorMask used = 0;
    for (Vertex u : gad.U)
      if (color[u] > 0) used |= ColorMask{1} << (color[u] - 1);
    del(gad.prescribed_deletions(used));
  }
  for (const auto& d : inst.decoders) {
    if (d.member == chosen[d.group])
      color[d.gadget.hat] = kDeleted;
    else
      color[d.gadget.clique[0]] = kDeleted;
  }
  // A kept tail may still be uncolored here (the hat of an unchosen decoder).
  for (const auto& a : inst.thin) color[color[a.u] == kDeleted ? a.v : a.w] = kDeleted;

  // The rest is colored component by component against the colors already fixed.
  std::vector<Vertex> comp;
  for (Vertex s = 0; s < g.num_vertices(); ++s) {
    if (color[s] != undecided) continue;
    comp.clear();
    comp.push_back(s);
    color[s] = -2;
    for (std::size_t h = 0; h < comp.size(); ++h)
      for (Vertex w : g.neighbors(comp[h]))
        if (color[w] == undecided) {
          color[w] = -2;
          comp.push_back(w);
        }
    std::sort(comp.begin(), comp.end());
    std::vector<ColorMask> allowed(comp.size(), all_colors(r));
    for (std::size_t x = 0; x < comp.size(); ++x)
      for (Vertex w : g.neighbors(comp[x]))
        if (color[w] > 0) allowed[x] &= ~(ColorMask{1} << (color[w] - 1));
    auto col = list_color(g.induced(comp), r, allowed);
    if (!col) throw std::logic_error("forward solution: a component is not list-colorable");
    for (std::size_t x = 0; x < comp.size(); ++x) color[comp[x]] = (*col)[x];
  }
  return Solution{std::move(color)};
}

}  // namespace cwdel
