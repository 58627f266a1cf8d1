#pragma once

// The command-line surface, factored as a library so tests can drive the
// exact code the binary runs.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace probtree::cli {

enum class Strategy { kExact, kRejection, kImportance };
enum class Format { kTsv, kJson };

inline constexpr int kExitOk = 0;
inline constexpr int kExitUnknownModel = 2;
inline constexpr int kExitBadConfig = 3;
inline constexpr int kExitInferenceError = 4;

struct RunConfig {
  std::string model;
  Strategy strategy = Strategy::kExact;
  std::optional<long long> samples;
  std::uint64_t seed = 0;
  std::optional<int> depth;  // exact only: cut exploration off at this depth
  bool normalize = false;
  Format format = Format::kTsv;
  int jobs = 1;  // sampling only
};

struct BenchConfig {
  std::vector<std::string> models;  // registry names
  std::vector<int> steps;           // when set: drift-chain family instead
  bool bucketed = false;            // bucketed recursion for the chain rows
  Strategy strategy = Strategy::kExact;
  std::optional<long long> samples;
  std::uint64_t seed = 0;
  int jobs = 1;
};

int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_list(std::ostream& out);

// Parses argv and dispatches to the command handlers.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace probtree::cli
