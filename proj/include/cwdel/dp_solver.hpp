#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cwdel/cwexpr.hpp"
#include "cwdel/oracle.hpp"

namespace cwdel {

// Subset of [k] x [r]; bit (i-1)*r + (c-1) set iff color c is in f(i).
using LabelState = std::uint32_t;

inline constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();

inline std::uint32_t sat_add(std::uint32_t a, std::uint32_t b) {
  if (a == kInf || b == kInf) return kInf;
  std::uint64_t s = std::uint64_t{a} + b;
  return s >= kInf ? kInf - 1 : static_cast<std::uint32_t>(s);
}

class dp_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DpTable {
  int k = 0;
  int r = 0;
  std::vector<std::uint32_t> cost;

  DpTable() = default;
  DpTable(int k_, int r_);

  int bits() const { return k * r; }
  std::size_t size() const { return cost.size(); }
  std::uint32_t operator[](LabelState f) const { return cost[f]; }
  std::uint32_t& operator[](LabelState f) { return cost[f]; }

  LabelState label_part(LabelState f, int label) const;
  static LabelState make(int r, const std::vector<ColorMask>& per_label);
};

enum class CoverMethod { direct, zeta };

// out[f] = min over S(f1) ∪ S(f2) = S(f) of T1[f1] + T2[f2].
DpTable cover_product_minplus(const DpTable& t1, const DpTable& t2, CoverMethod method = CoverMethod::direct,
                              int threads = 1);

struct DpOptions {
  std::optional<long long> budget;
  int max_universe = 24;                     // cap on k*r
  std::size_t max_entries = std::size_t{1} << 27;  // cap on stored table entries
  CoverMethod method = CoverMethod::direct;
  int threads = 1;
  bool witness = true;  // keeps every node table for reconstruction
};

struct DpResult {
  int k = 0;
  int r = 0;
  std::uint32_t min_cost = kInf;
  std::optional<bool> decision;
  LabelState best_state = 0;
  DpTable root;
  std::vector<DpTable> tables;  // per node, empty unless options.witness
  Solution witness;
};

DpResult solve_expression(const CliqueExpr& e, int r, const DpOptions& options = {});

Solution reconstruct_witness(const CliqueExpr& e, const std::vector<DpTable>& tables, LabelState target);

// Fails if some entry is finite although |f(i)| exceeds the number of
// label-i vertices below the node. Returns the offending node or -1.
int check_size_invariant(const CliqueExpr& e, const std::vector<DpTable>& tables);

}  // namespace cwdel
