#include "cwdel/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "cwdel/critical.hpp"
#include "cwdel/cwexpr.hpp"
#include "cwdel/dp_solver.hpp"
#include "cwdel/instance_io.hpp"
#include "cwdel/reductions.hpp"
#include "cwdel/verify.hpp"

namespace cwdel {

namespace {

class usage_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write " + path);
  return out;
}

std::vector<int> load_ids(const std::string& path) {
  if (path.empty()) return {};
  auto in = open_in(path);
  auto ids = read_id_list(in);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

void check_ids(const std::vector<int>& ids, int n) {
  for (int v : ids)
    if (v >= n) throw io_error("vertex id " + std::to_string(v + 1) + " out of range");
}

std::string base_name(const std::string& prefix) {
  auto slash = prefix.find_last_of('/');
  return slash == std::string::npos ? prefix : prefix.substr(slash + 1);
}

// Runs body and maps exceptions to exit code 2 with a message on err.
template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitError;
}

Problem problem_of(const std::string& name, int r) {
  if (name == "vc") return {ProblemKind::VertexCover};
  if (name == "ds") return {ProblemKind::DominatingSet};
  if (name == "tds") return {ProblemKind::TotalDominatingSet};
  if (name == "maxcut") return {ProblemKind::MaxCut};
  if (name == "krfree") return {ProblemKind::KrFreeDeletion, r};
  if (name == "hs") return {ProblemKind::HittingSet};
  if (name == "sat") return {ProblemKind::Sat};
  throw usage_error("unknown problem '" + name + "'");
}

ProblemInstance load_problem_instance(const Problem& p, const std::string& path) {
  if (p.kind == ProblemKind::HittingSet) return load_hitting_set(path);
  if (p.kind == ProblemKind::Sat) return load_dimacs_cnf(path);
  return load_graph(path);
}

int reduce_sat(const ReduceArgs& a, std::ostream& out) {
  CnfFormula f = load_dimacs_cnf(a.input);
  long long cap = effective_max_vertices(a.max_vertices);
  ReductionInstance inst = a.kind == "dense" ? build_dense_reduction(f, a.r, a.p0, cap)
                                             : build_sparse_reduction(f, a.r, a.p0, cap);
  write_manifest(out, save_reduction_instance(inst, a.out));
  return kExitYes;
}

int reduce_vc(const ReduceArgs& a, std::ostream& out) {
  HittingSetInstance h = load_hitting_set(a.input);
  ReductionInstance inst = build_vc_reduction(h);
  if (inst.graph.num_vertices() > effective_max_vertices(a.max_vertices))
    throw size_guard_error(inst.graph.num_vertices(), effective_max_vertices(a.max_vertices));
  Manifest m = save_reduction_instance(inst, a.out);
  m["hs_t"] = std::to_string(h.budget);
  auto mo = open_out(a.out + ".manifest");
  write_manifest(mo, m);
  write_manifest(out, m);
  return kExitYes;
}

Manifest graph_manifest(const std::string& kind, const Graph& g, const std::string& prefix) {
  save_graph(prefix + ".gr", g);
  auto t = open_out(prefix + ".tags");
  write_tags(t, g);
  Manifest m;
  m["kind"] = kind;
  m["vertices"] = std::to_string(g.num_vertices());
  m["edges"] = std::to_string(g.num_edges());
  m["graph"] = base_name(prefix) + ".gr";
  m["tags"] = base_name(prefix) + ".tags";
  return m;
}

void write_modulator(const std::string& path, const std::vector<Vertex>& x) {
  auto o = open_out(path);
  for (Vertex v : x) o << v + 1 << '\n';
}

int reduce_graph(const ReduceArgs& a, std::ostream& out, std::ostream& err) {
  Graph g = load_graph(a.input);
  std::vector<int> mod = load_ids(a.modulator_file);
  check_ids(mod, g.num_vertices());
  long long cap = effective_max_vertices(a.max_vertices);
  Manifest m;
  if (a.kind == "maxcut") {
    long long predicted = g.num_vertices() + 1 + 2LL * static_cast<long long>(g.num_edges());
    if (predicted > cap) throw size_guard_error(predicted, cap);
    MaxCutInstance inst = build_maxcut_reduction(g, mod);
    m = graph_manifest("maxcut", inst.graph, a.out);
    m["cut_offset"] = std::to_string(4 * inst.edges_of_source);
    m["source_vertices"] = std::to_string(g.num_vertices());
    m["X"] = std::to_string(inst.modulator.size());
    m["modulator"] = base_name(a.out) + ".modulator";
    write_modulator(a.out + ".modulator", inst.modulator);
  } else if (a.kind == "krfree") {
    long long predicted = g.num_vertices() + static_cast<long long>(g.num_edges()) * std::max(0, a.r - 2);
    if (predicted > cap) throw size_guard_error(predicted, cap);
    KrFreeInstance inst = build_krfree_reduction(g, a.r);
    m = graph_manifest("krfree", inst.graph, a.out);
    m["r"] = std::to_string(a.r);
    m["X"] = std::to_string(mod.size());
    m["modulator"] = base_name(a.out) + ".modulator";
    write_modulator(a.out + ".modulator", mod);
    std::vector<char> in_mod(g.num_vertices(), 0);
    for (int v : mod) in_mod[v] = 1;
    std::vector<Vertex> rest;
    for (Vertex v = 0; v < g.num_vertices(); ++v)
      if (!in_mod[v]) rest.push_back(v);
    if (static_cast<int>(rest.size()) <= kExactTreewidthCap) {
      TreeDecomposition d = relabel(treewidth_decomposition(g.induced(rest)), rest);
      TreeDecomposition lifted = lift_krfree_decomposition(g, inst, d, mod);
      auto w = open_out(a.out + ".witness");
      write_decomposition(w, lifted);
      m["witness"] = base_name(a.out) + ".witness";
      m["witness_width"] = std::to_string(lifted.width());
    } else {
      err << "note: source graph minus the modulator exceeds " << kExactTreewidthCap
          << " vertices; no decomposition written\n";
    }
  } else {
    if (2LL * g.num_vertices() > cap) throw size_guard_error(2LL * g.num_vertices(), cap);
    m = graph_manifest("ds", build_ds_doubling(g), a.out);
    m["source_vertices"] = std::to_string(g.num_vertices());
  }
  auto mo = open_out(a.out + ".manifest");
  write_manifest(mo, m);
  write_manifest(out, m);
  return kExitYes;
}

int reduce_tds(const ReduceArgs& a, std::ostream& out) {
  CnfFormula f = load_dimacs_cnf(a.input);
  TdsInstance inst = build_tds_reduction(f);
  long long cap = effective_max_vertices(a.max_vertices);
  if (inst.graph.num_vertices() > cap) throw size_guard_error(inst.graph.num_vertices(), cap);
  Manifest m = graph_manifest("tds", inst.graph, a.out);
  m["b"] = std::to_string(inst.budget);
  m["n"] = std::to_string(inst.formula.num_vars);
  m["m"] = std::to_string(inst.formula.clauses.size());
  m["pairs"] = std::to_string(inst.pairs);
  m["segments"] = std::to_string(inst.segments);
  m["witness"] = base_name(a.out) + ".witness";
  m["witness_width"] = std::to_string(inst.decomposition.width());
  auto w = open_out(a.out + ".witness");
  write_decomposition(w, inst.decomposition);
  auto mo = open_out(a.out + ".manifest");
  write_manifest(mo, m);
  write_manifest(out, m);
  return kExitYes;
}

VerifyReport verify_tds_manifest(const Manifest& m, const std::string& path) {
  auto get = [&](const std::string& k) {
    auto it = m.find(k);
    if (it == m.end()) throw io_error("manifest lacks key '" + k + "'");
    return it->second;
  };
  Graph g = load_graph(resolve_beside(path, get("graph")));
  auto in = open_in(resolve_beside(path, get("witness")));
  TreeDecomposition d = read_decomposition(in);
  VerifyReport rep;
  auto dr = verify_decomposition(g, d);
  rep.add("decomposition", dr.valid, dr.valid ? "width " + std::to_string(dr.width) : dr.message());
  rep.add("decomposition-is-path", d.kind == DecompositionKind::path);
  long long n = std::stoll(get("n"));
  rep.add("width-bound", dr.valid && dr.width <= n / 2 + 21,
          "width " + std::to_string(dr.width) + ", bound " + std::to_string(n / 2 + 21));
  long long m_clauses = std::stoll(get("m"));
  long long expected = 4 * m_clauses * (3 * n / 2 + 1) * (n / 2) + 2;
  rep.add("budget", std::stoll(get("b")) == expected,
          "b " + get("b") + ", expected " + std::to_string(expected));
  return rep;
}

}  // namespace

long long effective_max_vertices(std::optional<long long> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("CWDEL_MAX_VERTICES")) {
    std::string s(env);
    std::size_t used = 0;
    long long v = -1;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || v < 0) throw usage_error("CWDEL_MAX_VERTICES must be a nonnegative integer");
    return v;
  }
  return kDefaultMaxVertices;
}

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (a.r < 1) throw usage_error("--r must be at least 1");
    CliqueExpr e = load_expr(a.expr_file);
    DpOptions opt;
    opt.budget = a.budget;
    opt.threads = a.threads;
    opt.witness = !a.witness_out.empty();
    if (a.method == "zeta")
      opt.method = CoverMethod::zeta;
    else if (a.method != "direct")
      throw usage_error("--method must be direct or zeta");
    DpResult res = solve_expression(e, a.r, opt);
    out << "min-deletions " << res.min_cost << '\n';
    if (!a.witness_out.empty()) {
      auto w = open_out(a.witness_out);
      write_solution(w, res.witness);
    }
    if (a.budget) {
      bool yes = res.decision.value_or(res.min_cost <= *a.budget);
      out << "decision " << (yes ? "yes" : "no") << '\n';
      return yes ? kExitYes : kExitNo;
    }
    return kExitYes;
  });
}

int cmd_reduce(const ReduceArgs& a, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (a.out.empty()) throw usage_error("--out is required");
    if (a.kind == "dense" || a.kind == "sparse") return reduce_sat(a, out);
    if (a.kind == "vc") return reduce_vc(a, out);
    if (a.kind == "maxcut" || a.kind == "krfree" || a.kind == "ds") return reduce_graph(a, out, err);
    if (a.kind == "tds") return reduce_tds(a, out);
    throw usage_error("unknown reduction kind '" + a.kind + "'");
  });
}

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    VerifyReport rep;
    if (!a.instance.empty()) {
      Manifest m = load_manifest(a.instance);
      auto kind = m.count("kind") ? m.at("kind") : std::string{};
      if (kind == "tds")
        rep = verify_tds_manifest(m, a.instance);
      else if (kind == "dense" || kind == "sparse" || kind == "vc")
        rep = verify_reduction_instance(load_reduction_instance(a.instance));
      else
        throw usage_error("no instance checks for kind '" + kind + "'");
    } else if (!a.solution.empty()) {
      if (a.graph.empty()) throw usage_error("--solution needs --graph");
      Graph g = load_graph(a.graph);
      auto in = open_in(a.solution);
      Solution s = read_solution(in, g.num_vertices());
      rep = verify_dtc_solution(g, s, a.r, a.budget.value_or(g.num_vertices()));
    } else if (!a.problem.empty()) {
      Problem p = problem_of(a.problem, a.r);
      std::string input = a.input.empty() ? a.graph : a.input;
      if (input.empty()) throw usage_error("--problem needs --input");
      ProblemInstance inst = load_problem_instance(p, input);
      std::vector<int> w = load_ids(a.witness);
      if (p.kind == ProblemKind::Sat) {
        // The witness file lists the true variables.
        const auto& f = std::get<CnfFormula>(inst);
        std::vector<int> tau(f.num_vars, 0);
        for (int v : w) {
          if (v >= f.num_vars) throw io_error("variable " + std::to_string(v + 1) + " out of range");
          tau[v] = 1;
        }
        w = tau;
      }
      rep = verify_problem_solution(p, inst, w, a.budget);
    } else {
      throw usage_error("give --instance, --solution or --problem");
    }
    out << (a.key_values ? rep.key_values() : rep.text());
    return rep.pass ? kExitYes : kExitNo;
  });
}

int cmd_oracle(const OracleArgs& a, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (a.problem == "dtc") {
      if (a.r < 1 || a.cap < 0) throw usage_error("--r must be positive and --cap nonnegative");
      Graph g = load_graph(a.input);
      DtcResult res = min_deletions_r_colorable(g, a.r, a.cap);
      if (!res.within_cap) {
        out << "cost >" << a.cap << '\n';
        return kExitNo;
      }
      out << "cost " << res.cost << '\n';
      if (!a.witness_out.empty()) {
        auto w = open_out(a.witness_out);
        write_solution(w, res.witness);
      }
      return kExitYes;
    }
    if (a.problem == "chromatic") {
      out << "chromatic " << chromatic_number(load_graph(a.input)) << '\n';
      return kExitYes;
    }
    if (a.problem == "treewidth") {
      out << "treewidth " << exact_treewidth(load_graph(a.input)) << '\n';
      return kExitYes;
    }
    Problem p = problem_of(a.problem, a.r);
    ExactResult res = solve_exact(p, load_problem_instance(p, a.input));
    if (!res.feasible) {
      out << "infeasible\n";
      return kExitNo;
    }
    out << "value " << res.value << '\n';
    if (!a.witness_out.empty()) {
      auto w = open_out(a.witness_out);
      std::vector<int> ids;
      if (p.kind == ProblemKind::Sat) {
        for (std::size_t v = 0; v < res.witness.size(); ++v)
          if (res.witness[v]) ids.push_back(static_cast<int>(v));
      } else {
        ids = res.witness;
      }
      write_id_list(w, ids);
    }
    return p.kind == ProblemKind::Sat && res.value == 0 ? kExitNo : kExitYes;
  });
}

int cmd_gen_critical(const GenCriticalArgs& a, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    CriticalGraph c = build_critical(a.t, a.gamma);
    if (a.out.empty()) {
      write_edge_list(out, c.graph);
      write_decomposition(out, c.decomposition);
      return kExitYes;
    }
    save_graph(a.out + ".gr", c.graph);
    {
      auto t = open_out(a.out + ".tags");
      write_tags(t, c.graph);
    }
    {
      auto d = open_out(a.out + ".td");
      write_decomposition(d, c.decomposition);
    }
    out << "vertices " << c.graph.num_vertices() << '\n';
    out << "edges " << c.graph.num_edges() << '\n';
    out << "width " << c.decomposition.width() << '\n';
    return kExitYes;
  });
}

int cmd_twinclass(const TwinclassArgs& a, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Graph g = load_graph(a.input);
    Partition p = twinclass_partition(g);
    out << "blocks " << p.blocks.size() << '\n';
    for (const auto& blk : p.blocks) {
      out << to_string(classify_twinclass(g, blk));
      for (Vertex v : blk) out << ' ' << v + 1;
      out << '\n';
    }
    return kExitYes;
  });
}

}  // namespace cwdel
