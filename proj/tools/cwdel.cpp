#include <CLI11.hpp>

#include <iostream>

#include "cwdel/cli.hpp"

using namespace cwdel;

int main(int argc, char** argv) {
  CLI::App app{"Deletion to r-colorable: exact solver, reductions and verifiers"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Min deletions to r-colorable over a clique-width expression");
  s->add_option("--expr-file", solve.expr_file, "Expression file")->required();
  s->add_option("--r", solve.r, "Number of colors");
  s->add_option("--budget", solve.budget, "Decide cost <= budget");
  s->add_option("--witness", solve.witness_out, "Write an optimal solution here");
  s->add_option("--method", solve.method, "Cover product: direct or zeta");
  s->add_option("--threads", solve.threads, "Worker threads for the cover product");

  ReduceArgs reduce;
  auto* r = app.add_subcommand("reduce", "Generate a reduction instance");
  r->add_option("--kind", reduce.kind, "dense, sparse, vc, maxcut, krfree, ds or tds")->required();
  r->add_option("input", reduce.input, "CNF, hitting-set or edge-list input")->required();
  r->add_option("--out", reduce.out, "Output prefix")->required();
  r->add_option("--r", reduce.r, "Number of colors, or clique size for krfree");
  r->add_option("--p0", reduce.p0, "Variables per group");
  r->add_option("--modulator", reduce.modulator_file, "Modulator of the source graph (maxcut, krfree)");
  r->add_option("--max-vertices", reduce.max_vertices, "Size guard; overrides CWDEL_MAX_VERTICES");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Check an instance or a solution");
  v->add_option("--instance", verify.instance, "Manifest written by reduce");
  v->add_option("--graph", verify.graph, "Graph for --solution");
  v->add_option("--solution", verify.solution, "Deletion/coloring solution");
  v->add_option("--r", verify.r, "Number of colors, or clique size for krfree");
  v->add_option("--budget", verify.budget, "Size bound, or cut target for maxcut");
  v->add_option("--problem", verify.problem, "vc, ds, tds, maxcut, krfree, hs or sat");
  v->add_option("--input", verify.input, "Problem instance for --problem");
  v->add_option("--witness", verify.witness, "1-indexed ids: vertices, cut side, elements or true variables");
  v->add_flag("--key-values", verify.key_values, "Print name=pass|fail lines");

  OracleArgs oracle;
  auto* o = app.add_subcommand("oracle", "Exact brute-force answers for small inputs");
  o->add_option("--problem", oracle.problem, "dtc, chromatic, treewidth, vc, ds, tds, maxcut, krfree, hs or sat")
      ->required();
  o->add_option("input", oracle.input, "Input file")->required();
  o->add_option("--r", oracle.r, "Number of colors, or clique size for krfree");
  o->add_option("--cap", oracle.cap, "Deletion cap for dtc");
  o->add_option("--witness", oracle.witness_out, "Write the optimal witness here");

  GenCriticalArgs crit;
  auto* g = app.add_subcommand("gen-critical", "Emit a vertex-critical graph with its path decomposition");
  g->add_option("--t", crit.t, "Chromatic number")->required();
  g->add_option("--gamma", crit.gamma, "Size parameter")->required();
  g->add_option("--out", crit.out, "Output prefix; stdout when omitted");

  TwinclassArgs twin;
  auto* t = app.add_subcommand("twinclass", "Print the twinclass partition of a graph");
  t->add_option("input", twin.input, "Edge-list graph")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitYes : kExitError;
  }

  if (*s) return cmd_solve(solve, std::cout, std::cerr);
  if (*r) return cmd_reduce(reduce, std::cout, std::cerr);
  if (*v) return cmd_verify(verify, std::cout, std::cerr);
  if (*o) return cmd_oracle(oracle, std::cout, std::cerr);
  if (*g) return cmd_gen_critical(crit, std::cout, std::cerr);
  return cmd_twinclass(twin, std::cout, std::cerr);
}
