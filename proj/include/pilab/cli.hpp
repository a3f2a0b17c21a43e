#pragma once

// Batch front-end: subcommands over the word, algebra, polynomial space,
// cocharacter, entropy and witness modules, writing CSV and JSON reports.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace pilab::cli {

struct RunConfig {
  int m = 2;
  std::string word = "periodic:01";
  bool unital = false;
  int n_min = 1;
  int n_max = 5;
  int d = 0;  // 0: strip width plus one
  double eps = 0.1;
  double delta = 0.3;
  bool cap_override = false;
  int workers = 1;
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
  std::string out = ".";
  std::optional<std::string> gamma;
  int count = 10;
  std::string schedule = "doubling";
  int r_start = 1;
  std::string suite = "all";
  bool export_matrix = false;

  /// Sorted key=value lines; the input of the config hash.
  std::string canonical() const;
  std::uint64_t hash() const;
};

/// FNV-1a, 64 bit.
std::uint64_t fnv1a(const std::string& text);

/// Exit codes: 0 success (audit failures included), 1 engine error or
/// invariant violation, 2 bad usage or configuration.
inline constexpr int kExitOk = 0;
inline constexpr int kExitEngine = 1;
inline constexpr int kExitUsage = 2;

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pilab::cli
