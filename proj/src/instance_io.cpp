#include "cwdel/instance_io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace cwdel {

namespace {

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

// Next line that is neither blank nor a comment.
bool next_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    return true;
  }
  return false;
}

std::vector<int> ids_of(std::istringstream& ss) {
  std::vector<int> out;
  long long v;
  while (ss >> v) {
    if (v < 1) throw io_error("vertex ids are 1-indexed, got " + std::to_string(v));
    out.push_back(static_cast<int>(v - 1));
  }
  if (!ss.eof()) throw io_error("malformed id list");
  return out;
}

std::string join_ids(const std::vector<Vertex>& vs) {
  std::string s;
  for (Vertex v : vs) {
    if (!s.empty()) s += ' ';
    s += std::to_string(v + 1);
  }
  return s;
}

const std::string& need(const Manifest& m, const std::string& key) {
  auto it = m.find(key);
  if (it == m.end()) throw io_error("manifest lacks key '" + key + "'");
  return it->second;
}

long long need_int(const Manifest& m, const std::string& key) {
  const std::string& s = need(m, key);
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw io_error("manifest key '" + key + "' is not an integer: " + s);
  return v;
}

}  // namespace

Manifest read_manifest(std::istream& in) {
  Manifest m;
  std::string line;
  while (next_line(in, line)) {
    auto eq = line.find('=');
    if (eq == std::string::npos) throw io_error("manifest line without '=': " + line);
    m[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return m;
}

Manifest load_manifest(const std::string& path) {
  auto in = open_in(path);
  return read_manifest(in);
}

void write_manifest(std::ostream& out, const Manifest& m) {
  for (const auto& [k, v] : m) out << k << '=' << v << '\n';
}

void write_decomposition(std::ostream& out, const TreeDecomposition& d) {
  out << "d " << (d.kind == DecompositionKind::path ? "path" : "tree") << ' ' << d.bags.size() << '\n';
  for (const auto& bag : d.bags) {
    out << 'b';
    for (Vertex v : bag) out << ' ' << v + 1;
    out << '\n';
  }
  for (auto [x, y] : d.tree_edges) out << "t " << x + 1 << ' ' << y + 1 << '\n';
}

TreeDecomposition read_decomposition(std::istream& in) {
  std::string line, tag, kind;
  if (!next_line(in, line)) throw io_error("missing decomposition header");
  std::istringstream hs(line);
  long long nb = -1;
  if (!(hs >> tag >> kind >> nb) || tag != "d" || nb < 0 || (kind != "tree" && kind != "path"))
    throw io_error("bad decomposition header: " + line);
  TreeDecomposition d;
  d.kind = kind == "path" ? DecompositionKind::path : DecompositionKind::tree;
  for (long long i = 0; i < nb; ++i) {
    if (!next_line(in, line)) throw io_error("decomposition ends early");
    std::istringstream ss(line);
    if (!(ss >> tag) || tag != "b") throw io_error("expected a bag line: " + line);
    d.bags.push_back(ids_of(ss));
  }
  for (long long i = 0; i + 1 < nb; ++i) {
    if (!next_line(in, line)) throw io_error("decomposition ends early");
    std::istringstream ss(line);
    int x = 0, y = 0;
    if (!(ss >> tag >> x >> y) || tag != "t") throw io_error("expected a tree edge line: " + line);
    d.tree_edges.emplace_back(x - 1, y - 1);
  }
  return d;
}

void write_solution(std::ostream& out, const Solution& s) {
  for (std::size_t v = 0; v < s.color.size(); ++v) out << v + 1 << ' ' << s.color[v] << '\n';
}

Solution read_solution(std::istream& in, int n) {
  Solution s;
  s.color.assign(n, -1);
  std::string line;
  while (next_line(in, line)) {
    std::istringstream ss(line);
    long long v = 0, c = 0;
    std::string rest;
    if (!(ss >> v >> c) || (ss >> rest)) throw io_error("bad solution line: " + line);
    if (v < 1 || v > n) throw io_error("solution vertex out of range: " + std::to_string(v));
    if (s.color[v - 1] != -1) throw io_error("vertex " + std::to_string(v) + " colored twice");
    if (c < 0) throw io_error("negative color for vertex " + std::to_string(v));
    s.color[v - 1] = static_cast<int>(c);
  }
  for (int v = 0; v < n; ++v)
    if (s.color[v] == -1) throw io_error("vertex " + std::to_string(v + 1) + " has no color");
  return s;
}

std::vector<int> read_id_list(std::istream& in) {
  std::vector<int> out;
  std::string line;
  while (next_line(in, line)) {
    std::istringstream ss(line);
    auto ids = ids_of(ss);
    out.insert(out.end(), ids.begin(), ids.end());
  }
  return out;
}

void write_id_list(std::ostream& out, const std::vector<int>& ids) {
  out << join_ids(ids) << '\n';
}

std::string resolve_beside(const std::string& manifest_path, const std::string& file) {
  std::filesystem::path f(file);
  if (f.is_absolute()) return file;
  return (std::filesystem::path(manifest_path).parent_path() / f).string();
}

Manifest save_reduction_instance(const ReductionInstance& inst, const std::string& prefix) {
  std::string base = std::filesystem::path(prefix).filename().string();
  Manifest m;
  m["kind"] = to_string(inst.kind);
  m["vertices"] = std::to_string(inst.graph.num_vertices());
  m["edges"] = std::to_string(inst.graph.num_edges());
  m["b"] = std::to_string(inst.budget);
  m["X"] = std::to_string(inst.modulator_vertices().size());
  m["modulator_blocks"] = std::to_string(inst.modulator.size());
  m["cost_P"] = std::to_string(inst.packing_cost);
  m["packing_pieces"] = std::to_string(inst.packing.size());
  m["declared_width"] = std::to_string(inst.declared_width);
  m["twinclass_modulator"] = inst.twinclass_modulator ? "1" : "0";
  m["witnesses"] = std::to_string(inst.witnesses.size());
  m["central"] = join_ids(inst.central_clique);
  m["r"] = std::to_string(inst.params.r);
  if (inst.kind != ReductionKind::vc) {
    m["p"] = std::to_string(inst.params.p);
    m["p0"] = std::to_string(inst.params.p0);
    m["t"] = std::to_string(inst.params.t);
    m["q"] = std::to_string(inst.params.q);
  }
  m["graph"] = base + ".gr";
  m["tags"] = base + ".tags";
  m["modulator"] = base + ".modulator";
  m["packing"] = base + ".packing";
  m["witness"] = base + ".witness";

  save_graph(prefix + ".gr", inst.graph);
  {
    auto out = open_out(prefix + ".tags");
    write_tags(out, inst.graph);
  }
  {
    auto out = open_out(prefix + ".modulator");
    for (const auto& blk : inst.modulator) out << join_ids(blk) << '\n';
  }
  {
    auto out = open_out(prefix + ".packing");
    for (const auto& e : inst.packing) out << e.claim << ' ' << join_ids(e.vertices) << '\n';
  }
  {
    auto out = open_out(prefix + ".witness");
    for (const auto& w : inst.witnesses) {
      out << "w " << join_ids(w.vertices) << '\n';
      write_decomposition(out, w.decomposition);
    }
  }
  {
    auto out = open_out(prefix + ".manifest");
    write_manifest(out, m);
  }
  return m;
}

ReductionInstance load_reduction_instance(const std::string& manifest_path) {
  Manifest m = load_manifest(manifest_path);
  ReductionInstance inst;
  const std::string& kind = need(m, "kind");
  if (kind == "dense")
    inst.kind = ReductionKind::dense;
  else if (kind == "sparse")
    inst.kind = ReductionKind::sparse;
  else if (kind == "vc")
    inst.kind = ReductionKind::vc;
  else
    throw io_error("not a deletion or vertex cover instance: kind=" + kind);
  auto path = [&](const std::string& key) { return resolve_beside(manifest_path, need(m, key)); };
  inst.graph = load_graph(path("graph"), m.count("tags") ? path("tags") : std::string{});
  int n = inst.graph.num_vertices();
  if (need_int(m, "vertices") != n) throw io_error("manifest vertex count disagrees with the graph");
  inst.budget = need_int(m, "b");
  inst.declared_width = static_cast<int>(need_int(m, "declared_width"));
  inst.twinclass_modulator = need_int(m, "twinclass_modulator") != 0;
  inst.params.r = static_cast<int>(need_int(m, "r"));
  if (inst.kind != ReductionKind::vc) {
    inst.params.setting = inst.kind == ReductionKind::dense ? Setting::dense : Setting::sparse;
    inst.params.p = static_cast<int>(need_int(m, "p"));
    inst.params.p0 = static_cast<int>(need_int(m, "p0"));
    inst.params.t = static_cast<int>(need_int(m, "t"));
    inst.params.q = static_cast<int>(need_int(m, "q"));
  }
  auto check_ids = [&](const std::vector<int>& ids) {
    for (int v : ids)
      if (v >= n) throw io_error("vertex id " + std::to_string(v + 1) + " out of range");
  };
  {
    std::istringstream ss(need(m, "central"));
    inst.central_clique = ids_of(ss);
    check_ids(inst.central_clique);
  }
  {
    auto in = open_in(path("modulator"));
    std::string line;
    while (next_line(in, line)) {
      std::istringstream ss(line);
      inst.modulator.push_back(ids_of(ss));
      check_ids(inst.modulator.back());
    }
  }
  {
    auto in = open_in(path("packing"));
    std::string line;
    while (next_line(in, line)) {
      std::istringstream ss(line);
      PackingEntry e;
      if (!(ss >> e.claim) || e.claim < 0) throw io_error("bad packing line: " + line);
      e.vertices = ids_of(ss);
      check_ids(e.vertices);
      inst.packing_cost += e.claim;
      inst.packing.push_back(std::move(e));
    }
  }
  {
    auto in = open_in(path("witness"));
    std::string line;
    while (next_line(in, line)) {
      std::istringstream ss(line);
      std::string tag;
      if (!(ss >> tag) || tag != "w") throw io_error("expected a witness line: " + line);
      ComponentWitness w;
      w.vertices = ids_of(ss);
      check_ids(w.vertices);
      std::sort(w.vertices.begin(), w.vertices.end());
      w.decomposition = read_decomposition(in);
      for (const auto& bag : w.decomposition.bags) check_ids(bag);
      inst.witnesses.push_back(std::move(w));
    }
  }
  return inst;
}

}  // namespace cwdel
