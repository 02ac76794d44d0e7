#include "cwdel/problems.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cwdel {

int CnfFormula::max_clause_width() const {
  std::size_t q = 0;
  for (const auto& c : clauses) q = std::max(q, c.size());
  return static_cast<int>(q);
}

bool CnfFormula::clause_satisfied(std::size_t j, const std::vector<int>& assignment) const {
  for (int lit : clauses[j]) {
    bool value = assignment[std::abs(lit) - 1] != 0;
    if ((lit > 0) == value) return true;
  }
  return false;
}

bool CnfFormula::satisfied_by(const std::vector<int>& assignment) const {
  if (static_cast<int>(assignment.size()) != num_vars) return false;
  for (std::size_t j = 0; j < clauses.size(); ++j)
    if (!clause_satisfied(j, assignment)) return false;
  return true;
}

void CnfFormula::check() const {
  if (num_vars < 0) throw std::invalid_argument("negative variable count");
  for (const auto& c : clauses) {
    if (c.empty()) throw std::invalid_argument("empty clause");
    for (int lit : c)
      if (lit == 0 || std::abs(lit) > num_vars) throw std::invalid_argument("literal out of range");
  }
}

CnfFormula read_dimacs_cnf(std::istream& in) {
  CnfFormula f;
  long declared = -1;
  std::string line;
  std::vector<int> current;
  bool header = false;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw std::runtime_error("cnf line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first[0] == 'c' || first[0] == '%') continue;
    if (first == "p") {
      std::string fmt;
      if (header) fail("duplicate header");
      if (!(ls >> fmt >> f.num_vars >> declared) || fmt != "cnf" || f.num_vars < 0 || declared < 0)
        fail("bad header");
      header = true;
      continue;
    }
    if (!header) fail("clause before header");
    std::istringstream cs(line);
    long lit;
    while (cs >> lit) {
      if (lit == 0) {
        if (current.empty()) fail("empty clause");
        f.clauses.push_back(current);
        current.clear();
      } else {
        if (std::labs(lit) > f.num_vars) fail("literal out of range");
        current.push_back(static_cast<int>(lit));
      }
    }
    if (!cs.eof()) fail("bad token");
  }
  if (!header) throw std::runtime_error("cnf: missing header");
  if (!current.empty()) f.clauses.push_back(current);
  if (static_cast<long>(f.clauses.size()) != declared)
    throw std::runtime_error("cnf: header declares " + std::to_string(declared) + " clauses, found " +
                             std::to_string(f.clauses.size()));
  return f;
}

CnfFormula load_dimacs_cnf(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_dimacs_cnf(in);
}

void write_dimacs_cnf(std::ostream& out, const CnfFormula& f) {
  out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
  for (const auto& c : f.clauses) {
    for (int lit : c) out << lit << ' ';
    out << "0\n";
  }
}

int HittingSetInstance::max_set_size() const {
  std::size_t q = 0;
  for (const auto& s : sets) q = std::max(q, s.size());
  return static_cast<int>(q);
}

bool HittingSetInstance::hits_all(const std::vector<int>& chosen) const {
  std::vector<char> in(universe, 0);
  for (int x : chosen)
    if (x >= 0 && x < universe) in[x] = 1;
  for (const auto& s : sets)
    if (std::none_of(s.begin(), s.end(), [&](int x) { return in[x]; })) return false;
  return true;
}

void HittingSetInstance::check() const {
  if (universe < 0 || budget < 0) throw std::invalid_argument("negative hitting set parameter");
  for (const auto& s : sets) {
    if (s.empty()) throw std::invalid_argument("empty set in family");
    for (int x : s)
      if (x < 0 || x >= universe) throw std::invalid_argument("element outside universe");
  }
}

HittingSetInstance read_hitting_set(std::istream& in) {
  HittingSetInstance h;
  std::string line;
  long m = -1;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw std::runtime_error("hitting set line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first[0] == 'c') continue;
    if (m == -1) {
      if (first != "u" || !(ls >> h.universe >> m >> h.budget) || h.universe < 0 || m < 0 || h.budget < 0)
        fail("bad header");
      continue;
    }
    std::istringstream es(line);
    std::vector<int> set;
    long x;
    while (es >> x) {
      if (x < 1 || x > h.universe) fail("element out of range");
      set.push_back(static_cast<int>(x - 1));
    }
    if (!es.eof()) fail("bad token");
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    if (set.empty()) fail("empty set");
    h.sets.push_back(std::move(set));
  }
  if (m == -1) throw std::runtime_error("hitting set: missing header");
  if (static_cast<long>(h.sets.size()) != m)
    throw std::runtime_error("hitting set: header declares " + std::to_string(m) + " sets, found " +
                             std::to_string(h.sets.size()));
  return h;
}

HittingSetInstance load_hitting_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_hitting_set(in);
}

void write_hitting_set(std::ostream& out, const HittingSetInstance& h) {
  out << "u " << h.universe << ' ' << h.sets.size() << ' ' << h.budget << '\n';
  for (const auto& s : h.sets) {
    for (std::size_t i = 0; i < s.size(); ++i) out << (i ? " " : "") << s[i] + 1;
    out << '\n';
  }
}

}  // namespace cwdel
