#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "msf/determinantal.hpp"
#include "msf/exact.hpp"
#include "msf/graph.hpp"

namespace msf {

/// Seeded random multigraph (parallel edges allowed, no self-loops).
Graph random_multigraph(std::uint64_t seed, int min_vertices, int max_vertices, int max_edges);

/// Every include/exclude event on edge ids 0..edge_count-1 with at most max_specified edges.
std::vector<EdgeEvent> all_edge_events(std::size_t edge_count, std::size_t max_specified);

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::size_t checks = 0;
  double max_error = 0.0;  // floating comparisons only; exact suites stay at 0
  std::string first_counterexample;
};

struct VerifyOptions {
  int max_complete_n = 6;       // exact suites on K_n for n <= this
  int random_graphs = 50;
  std::uint64_t seed = 1;
  double tolerance = 1e-10;
};

struct VerifyReport {
  std::vector<SuiteResult> suites;
  bool passed = true;
  double max_error = 0.0;
};

/// Runs the exact oracle-versus-formula suites (no Monte Carlo).
VerifyReport run_verification(const VerifyOptions& options);

nlohmann::json to_json(const VerifyReport& report);

}  // namespace msf
