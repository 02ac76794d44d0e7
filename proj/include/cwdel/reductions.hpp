#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cwdel/critical.hpp"
#include "cwdel/decomposition.hpp"
#include "cwdel/gadgets.hpp"
#include "cwdel/graph.hpp"
#include "cwdel/oracle.hpp"
#include "cwdel/problems.hpp"

namespace cwdel {

enum class Setting { dense, sparse };

const char* to_string(Setting s);

// Smallest p divisible by 2^r with (2^r)^p (2^r-1)! / 2^(2^r) / p^(2^r) >= 2^p0.
int choose_p_dense(int p0, int r);
// Smallest multiple of r+1 with (r+1)^p / (p+1) >= 2^p0.
int choose_p_sparse(int p0, int r);

// |Phi_i| as a decimal string; exact for any parameters.
std::string phi_size(Setting s, int r, int p);
bool phi_size_at_least(Setting s, int r, int p, int p0);

struct ReductionParams {
  Setting setting = Setting::sparse;
  int r = 2;
  int p0 = 1;
  int t = 0;                    // number of variable groups
  int p = 0;                    // twinclasses (dense) or vertices (sparse) per group
  std::vector<int> level_count; // dense: c_l = C(r,l) p / 2^r for l = 0..r
  int q = 0;                    // maximum clause width
};

ReductionParams make_params(Setting s, const CnfFormula& f, int r, int p0);

// Dense member: one colour set per twinclass. Sparse member: one mask per
// vertex, 0 for deleted or a single colour bit.
using PhiMember = std::vector<ColorMask>;

struct PhiTable {
  std::vector<int> variables;     // 0-based variable ids of the group
  std::vector<PhiMember> members; // canonical order
  std::vector<int> kappa;         // assignment index -> member index

  // Assignment index of the group under tau; the group's first variable is the
  // most significant bit.
  int assignment_index(const std::vector<int>& tau) const;
  bool satisfies(const CnfFormula& f, std::size_t clause, int assignment) const;
};

// Canonical subset order: by size, then lexicographically on sorted elements.
std::vector<ColorMask> subset_ranking(int r);

PhiTable build_phi_kappa(Setting s, const ReductionParams& params, const std::vector<int>& variables,
                         std::size_t max_members = 4'000'000);

struct ComponentWitness {
  std::vector<Vertex> vertices;   // sorted
  TreeDecomposition decomposition;  // over global vertex ids
};

enum class ReductionKind { dense, sparse, vc };

const char* to_string(ReductionKind k);

struct DecoderRecord {
  int clause = 0;
  int group = 0;
  int member = 0;
  DecodingGadget gadget;
  std::vector<int> color_sets;  // indices into ReductionInstance::color_sets
  int arrow = -1;               // thin arrow into the clause gadget, if any
};

struct TrianglePath {
  int set = 0;
  std::vector<Vertex> a;  // a_1..a_p
  std::vector<Vertex> b;  // b_1..b_{2p+2}
  std::vector<Vertex> w;  // w neighbour of each a_s
};

struct ReductionInstance {
  ReductionKind kind = ReductionKind::sparse;
  Graph graph;
  long long budget = 0;
  ReductionParams params;
  int declared_width = 0;
  bool twinclass_modulator = false;
  std::vector<std::vector<Vertex>> modulator;  // blocks
  std::vector<Vertex> central_clique;          // f_1..f_r
  std::vector<PackingEntry> packing;
  long long packing_cost = 0;
  std::vector<ComponentWitness> witnesses;

  // Generator-side records used by the forward solutions.
  std::vector<PhiTable> groups;
  std::vector<std::vector<std::vector<Vertex>>> central;  // [group][twinclass or vertex] -> vertices
  std::vector<ThickArrow> thick;
  std::vector<ThinArrow> thin;
  std::vector<ColorSetGadget> color_sets;
  std::vector<DecoderRecord> decoders;
  std::vector<TrianglePath> paths;
  std::vector<Vertex> hs_central;  // VC: w_1..w_n

  std::vector<Vertex> modulator_vertices() const;
};

inline constexpr long long kDefaultMaxVertices = 5'000'000;

class size_guard_error : public std::runtime_error {
 public:
  size_guard_error(long long predicted, long long cap)
      : std::runtime_error("predicted " + std::to_string(predicted) + " vertices exceeds the guard of " +
                           std::to_string(cap)),
        predicted_(predicted) {}
  long long predicted() const { return predicted_; }

 private:
  long long predicted_;
};

long long predict_vertices(const CnfFormula& f, const ReductionParams& params);

ReductionInstance build_dense_reduction(const CnfFormula& f, int r, int p0, long long max_vertices = kDefaultMaxVertices);
ReductionInstance build_sparse_reduction(const CnfFormula& f, int r, int p0,
                                         long long max_vertices = kDefaultMaxVertices);

// Solution of cost exactly b built from a satisfying assignment (0/1 per variable).
Solution forward_solution(const ReductionInstance& inst, const CnfFormula& f, const std::vector<int>& tau);

ReductionInstance build_vc_reduction(const HittingSetInstance& h);
// Vertex cover of size |H| + 2 sum p_j for a hitting set H (0-based elements).
std::vector<Vertex> vc_forward_cover(const ReductionInstance& inst, const std::vector<int>& hitting_set);
// Repairs a vertex cover of size <= b and reads off a hitting set of size <= t.
std::vector<int> extract_hitting_set(const ReductionInstance& inst, const std::vector<Vertex>& cover);

struct MaxCutInstance {
  Graph graph;
  Vertex x = -1;
  std::vector<Vertex> modulator;  // X plus x
  long long edges_of_source = 0;
  // A vertex cover of size <= |V| - b exists iff a cut of size >= target(b) exists.
  long long target(long long b) const { return 4 * edges_of_source + b; }
};

MaxCutInstance build_maxcut_reduction(const Graph& g, const std::vector<Vertex>& modulator = {});

// Each edge becomes a K_r; budgets carry over unchanged.
struct KrFreeInstance {
  Graph graph;
  int r = 3;
  std::vector<std::vector<Vertex>> edge_cliques;  // per edge of the source, in edges() order
};

KrFreeInstance build_krfree_reduction(const Graph& g, int r);
// Hangs one bag per edge clique below a bag holding the edge. `d` must be a
// tree decomposition of the source graph minus `modulator`.
TreeDecomposition lift_krfree_decomposition(const Graph& g, const KrFreeInstance& inst, const TreeDecomposition& d,
                                            const std::vector<Vertex>& modulator = {});

// v' of vertex v gets id v + |V|.
Graph build_ds_doubling(const Graph& g);
// True iff the twinclass quotient of the doubling equals the source graph
// induced on the smallest member of each twinclass.
bool doubling_quotient_is_induced(const Graph& g, const Graph& doubled);

struct TdsBlock {
  Vertex p[4];
  Vertex q[4];
  Vertex zhat[4];  // indexed by state 0..3
  Vertex z[4];
  Vertex y1, y2;

  std::vector<Vertex> vertices() const;
};

// States 1..4 as index pairs into p; state s of a segment is p[kTdsStates[s][0..1]].
inline constexpr int kTdsStates[4][2] = {{0, 1}, {0, 3}, {1, 2}, {2, 3}};

struct TdsInstance {
  CnfFormula formula;  // padded to an even number of variables
  Graph graph;
  long long budget = 0;
  int pairs = 0;
  int segments = 0;
  std::vector<std::vector<TdsBlock>> blocks;  // [pair][segment]
  std::vector<std::vector<Vertex>> clause_vertices;  // [clause][region]
  Vertex h1 = -1, h2 = -1, h1p = -1, h2p = -1;
  TreeDecomposition decomposition;  // path decomposition
};

// State index 0..3 of an assignment to a variable pair: 00, 01, 10, 11.
inline int tds_state_of(int first, int second) { return 2 * (first != 0) + (second != 0); }

TdsInstance build_tds_reduction(const CnfFormula& f);
std::vector<Vertex> forward_tds_solution(const TdsInstance& inst, const std::vector<int>& tau);

// A single block with the given id offset, built standalone for the
// enforcement checks. Vertices are 0..17 in the TdsBlock field order.
TdsBlock tds_block_layout(Vertex offset);
void add_tds_block_edges(GraphBuilder& b, const TdsBlock& blk);

}  // namespace cwdel
