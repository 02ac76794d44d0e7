#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "cwdel/decomposition.hpp"
#include "cwdel/oracle.hpp"
#include "cwdel/reductions.hpp"

namespace cwdel {

class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sorted key=value lines; '#' starts a comment line.
using Manifest = std::map<std::string, std::string>;

Manifest read_manifest(std::istream& in);
Manifest load_manifest(const std::string& path);
void write_manifest(std::ostream& out, const Manifest& m);

// "d tree|path <bags>", then "b <ids>" per bag, then "t <x> <y>" per tree
// edge. Vertex and bag ids are 1-indexed.
void write_decomposition(std::ostream& out, const TreeDecomposition& d);
TreeDecomposition read_decomposition(std::istream& in);

// "<vertex> <color>" per line, 1-indexed vertices, color 0 for deleted.
void write_solution(std::ostream& out, const Solution& s);
Solution read_solution(std::istream& in, int n);

// Whitespace-separated 1-indexed ids; returned 0-based.
std::vector<int> read_id_list(std::istream& in);
void write_id_list(std::ostream& out, const std::vector<int>& ids);

// Writes <prefix>.gr, .tags, .modulator, .packing, .witness and
// .manifest. Paths inside the manifest are relative to the manifest's
// directory. Returns the manifest.
Manifest save_reduction_instance(const ReductionInstance& inst, const std::string& prefix);

// Loads the verifiable part of an instance: graph, budget, parameters,
// modulator, central clique, packing and witnesses.
ReductionInstance load_reduction_instance(const std::string& manifest_path);

std::string resolve_beside(const std::string& manifest_path, const std::string& file);

}  // namespace cwdel
