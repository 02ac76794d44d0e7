#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cwdel/graph.hpp"
#include "cwdel/oracle.hpp"
#include "cwdel/reductions.hpp"

namespace cwdel {

struct VerifyItem {
  std::string name;
  bool pass = true;
  std::string detail;  // failure witness or a short summary
};

struct VerifyReport {
  bool pass = true;
  std::vector<VerifyItem> items;

  void add(std::string name, bool ok, std::string detail = {});
  void merge(const VerifyReport& other, const std::string& prefix = {});
  const VerifyItem* find(const std::string& name) const;
  std::string text() const;
  // One "name=pass|fail" line per item, then "verdict=...".
  std::string key_values() const;
};

VerifyReport verify_dtc_solution(const Graph& g, const Solution& s, int r, long long b);

// Recomputes everything from the graph: twinclasses, decomposition validity,
// packing bounds. Only the declared structure is taken from `inst`.
VerifyReport verify_reduction_instance(const ReductionInstance& inst);

inline constexpr int kPackingOracleLimit = 25;

// witness: chosen vertices (VC, DS, TDS, K_r-free), one side of the cut
// (MaxCut), chosen elements (HittingSet) or a 0/1 assignment (Sat). bound is
// the size limit for the minimization problems and the cut target for MaxCut.
VerifyReport verify_problem_solution(const Problem& p, const ProblemInstance& instance, const std::vector<int>& witness,
                                     std::optional<long long> bound = {});

// Treewidth after stripping simplicial vertices; the remainder must fit
// exact_treewidth.
int treewidth_with_simplicial_reduction(const Graph& g);

VerifyReport check_deletion_edge_lemma(int r);
VerifyReport check_thin_arrow_lemma(int r);
VerifyReport check_thick_arrow_lemma(int r, int level);
VerifyReport check_color_set_lemma(int r, ColorMask c, int u_size);
VerifyReport check_decoding_gadget_lemma(int r, int indep_size);

// Exhaustive checks on standalone TDS blocks.
VerifyReport check_tds_block_structure();
VerifyReport check_tds_state_order();

}  // namespace cwdel
