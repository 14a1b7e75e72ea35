#pragma once

#include "nilcyl/io.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

// Named verification suites behind `nilcyl verify`.
namespace nilcyl::suites {

struct SuiteParams {
  std::uint64_t seed = 0;
  std::optional<int> trials;
  std::optional<int> rmax, kmax;
  std::optional<int> g, n, k;
  std::optional<int> only_case; // run a single case index
  int jobs = 1;
};

struct CaseResult {
  int index = 0;
  std::string key;  // "<group>#<n>"
  bool pass = false;
  std::string detail;
  Json inputs;
};

struct SuiteReport {
  std::string suite;
  Json grid;
  std::uint64_t seed = 0;
  std::vector<CaseResult> cases;

  bool passed() const;
  int failures() const;
};

const std::vector<std::string> &suite_names();
bool is_suite(const std::string &name);

// Throws std::invalid_argument for unknown suites or bad parameters.
SuiteReport run_suite(const std::string &name, const SuiteParams &p);

// Per-group pass counts and one line per failure; deterministic.
std::string render_report(const SuiteReport &r);

// One JSON file per failing case; returns the paths written.
std::vector<std::filesystem::path>
write_witnesses(const SuiteReport &r, const std::filesystem::path &dir);

} // namespace nilcyl::suites
