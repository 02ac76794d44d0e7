#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cwdel {

struct CnfFormula {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;  // nonzero DIMACS literals

  int max_clause_width() const;
  // assignment[v] for v in 0..num_vars-1; nonzero means true.
  bool satisfied_by(const std::vector<int>& assignment) const;
  bool clause_satisfied(std::size_t j, const std::vector<int>& assignment) const;
  void check() const;
};

CnfFormula read_dimacs_cnf(std::istream& in);
CnfFormula load_dimacs_cnf(const std::string& path);
void write_dimacs_cnf(std::ostream& out, const CnfFormula& f);

struct HittingSetInstance {
  int universe = 0;
  std::vector<std::vector<int>> sets;  // 0-based elements, each set sorted and nonempty
  int budget = 0;

  int max_set_size() const;
  bool hits_all(const std::vector<int>& chosen) const;
  void check() const;
};

// "u <n> <m> <t>" header then one set per line, 1-indexed elements.
HittingSetInstance read_hitting_set(std::istream& in);
HittingSetInstance load_hitting_set(const std::string& path);
void write_hitting_set(std::ostream& out, const HittingSetInstance& h);

}  // namespace cwdel
