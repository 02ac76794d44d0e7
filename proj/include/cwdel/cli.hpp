#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace cwdel {

// Exit codes shared by every subcommand.
inline constexpr int kExitYes = 0;
inline constexpr int kExitNo = 1;
inline constexpr int kExitError = 2;

struct SolveArgs {
  std::string expr_file;
  int r = 2;
  std::optional<long long> budget;
  std::string witness_out;
  std::string method = "direct";  // or "zeta"
  int threads = 1;
};

struct ReduceArgs {
  std::string kind;   // dense, sparse, vc, maxcut, krfree, ds, tds
  std::string input;
  std::string out;    // output prefix
  int r = 2;
  int p0 = 1;
  std::string modulator_file;  // maxcut and krfree: modulator of the source graph
  std::optional<long long> max_vertices;
};

struct VerifyArgs {
  std::string instance;       // manifest of a reduce run
  std::string graph;
  std::string solution;       // dtc solution file
  int r = 2;
  std::optional<long long> budget;
  std::string problem;        // vc, ds, tds, maxcut, krfree, hs, sat
  std::string input;          // problem instance file
  std::string witness;
  bool key_values = false;
};

struct OracleArgs {
  std::string problem;  // dtc, chromatic, treewidth, or a problem name
  std::string input;
  int r = 2;
  int cap = 8;
  std::string witness_out;
};

struct GenCriticalArgs {
  int t = 3;
  int gamma = 1;
  std::string out;  // prefix for .gr and .td; stdout when empty
};

struct TwinclassArgs {
  std::string input;
};

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err);
int cmd_reduce(const ReduceArgs& a, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err);
int cmd_oracle(const OracleArgs& a, std::ostream& out, std::ostream& err);
int cmd_gen_critical(const GenCriticalArgs& a, std::ostream& out, std::ostream& err);
int cmd_twinclass(const TwinclassArgs& a, std::ostream& out, std::ostream& err);

// Guard from --max-vertices, else CWDEL_MAX_VERTICES, else the default.
long long effective_max_vertices(std::optional<long long> flag);

}  // namespace cwdel
