#include <doctest.h>

#include <algorithm>

#include "msf/verify.hpp"

using namespace msf;

TEST_CASE("edge event enumeration") {
  // sum_{j <= 3} C(6, j) 2^j
  CHECK(all_edge_events(6, 3).size() == 1 + 12 + 60 + 160);
  CHECK(all_edge_events(2, 0).size() == 1);
  for (const EdgeEvent& ev : all_edge_events(4, 4)) CHECK(ev.include.size() + ev.exclude.size() <= 4);
}

TEST_CASE("random multigraphs are reproducible") {
  const Graph a = random_multigraph(42, 2, 7, 12);
  const Graph b = random_multigraph(42, 2, 7, 12);
  CHECK(a.vertex_count() == b.vertex_count());
  CHECK(std::ranges::equal(a.edges(), b.edges()));
  CHECK(a.edge_count() <= 12);
  CHECK(a.vertex_count() >= 2);
  CHECK(a.vertex_count() <= 7);
}

TEST_CASE("default verification passes") {
  const VerifyReport report = run_verification(VerifyOptions{});
  for (const auto& s : report.suites) {
    INFO(s.name << ": " << s.first_counterexample);
    CHECK(s.passed);
    CHECK(s.checks > 0);
  }
  CHECK(report.passed);
  CHECK(report.max_error < 1e-10);
  CHECK(report.suites.size() == 13);
  const auto json = to_json(report);
  CHECK(json["passed"] == true);
}
