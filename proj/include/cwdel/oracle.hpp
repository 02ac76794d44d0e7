#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "cwdel/graph.hpp"
#include "cwdel/problems.hpp"

namespace cwdel {

class too_large : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kDeleted = 0;

// color[v] in 1..r, or kDeleted.
struct Solution {
  std::vector<int> color;

  int cost() const;
  std::vector<Vertex> deleted() const;
};

using ColorMask = std::uint32_t;

inline ColorMask all_colors(int r) { return r >= 32 ? ~ColorMask{0} : ((ColorMask{1} << r) - 1); }

enum class DeletionRule { optional, forbidden, forced, forced_free };

// Boundary conditions for the deletion oracle. Empty vectors mean
// "every color allowed" and "every deletion optional". Forced deletions are
// counted in the cost; forced_free deletions are not.
struct ColoringQuery {
  std::vector<ColorMask> allowed;  // bit c-1 set iff color c allowed
  std::vector<DeletionRule> rule;
};

struct DtcResult {
  bool within_cap = false;
  int cost = -1;
  Solution witness;
};

DtcResult min_deletions_r_colorable(const Graph& g, int r, int cap, const ColoringQuery& query = {});

// List coloring of g by backtracking over colors 1..r. Vertex v may use the
// colors in allowed[v]; an empty `allowed` means all. Returns colors 1..r.
std::optional<std::vector<int>> list_color(const Graph& g, int r, const std::vector<ColorMask>& allowed = {});

inline constexpr int kChromaticCap = 22;
int chromatic_number(const Graph& g);

enum class ProblemKind { VertexCover, DominatingSet, TotalDominatingSet, MaxCut, KrFreeDeletion, HittingSet, Sat };

const char* to_string(ProblemKind k);

struct Problem {
  ProblemKind kind;
  int r = 3;  // KrFreeDeletion only
};

using ProblemInstance = std::variant<Graph, HittingSetInstance, CnfFormula>;

// value: minimum size for the set problems, maximum cut size for MaxCut,
// 1 or 0 for Sat. witness: chosen vertices or elements (one side of the cut
// for MaxCut, a 0/1 assignment for Sat). feasible is false only for Total
// Dominating Set on graphs with isolated vertices and unsatisfiable formulas.
struct ExactResult {
  bool feasible = true;
  long long value = 0;
  std::vector<int> witness;
};

ExactResult solve_exact(const Problem& p, const ProblemInstance& instance);

inline constexpr int kVertexCoverCap = 64;
inline constexpr int kDominationCap = 24;
inline constexpr int kMaxCutCap = 28;

ExactResult min_vertex_cover(const Graph& g);
ExactResult min_dominating_set(const Graph& g);
ExactResult min_total_dominating_set(const Graph& g);
ExactResult max_cut(const Graph& g);
ExactResult min_kr_free_deletion(const Graph& g, int r);
ExactResult min_hitting_set(const HittingSetInstance& h);
ExactResult solve_sat(const CnfFormula& f);

}  // namespace cwdel
