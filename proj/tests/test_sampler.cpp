#include <doctest.h>

#include <chrono>
#include <cmath>
#include <map>

#include <boost/math/distributions/chi_squared.hpp>

#include "msf/forest_oracle.hpp"
#include "msf/parallel.hpp"
#include "msf/sampler.hpp"

using namespace msf;

namespace {

bool well_formed(const RootedForestSample& s) {
  const int n = s.vertex_count();
  for (Vertex v = 0; v < n; ++v) {
    Vertex x = v;
    for (int steps = 0; steps <= n && s.parent[static_cast<std::size_t>(x)] != kRootMarker; ++steps) {
      x = s.parent[static_cast<std::size_t>(x)];
    }
    if (s.parent[static_cast<std::size_t>(x)] != kRootMarker) return false;
  }
  return true;
}

using ForestCounts = std::map<std::uint32_t, std::uint64_t>;

ForestCounts count_forests(const Graph& g, std::uint64_t samples, std::uint64_t seed, bool fast_path) {
  ForestCounts counts;
  RootedForestSample s;
  for (std::uint64_t i = 0; i < samples; ++i) {
    Rng rng(RngSeed{seed, i});
    if (fast_path) {
      sample_lsf_kn(g.vertex_count(), 1.0, rng, s);
    } else {
      sample_lsf_general(g, 1.0, rng, s);
    }
    ++counts[mask_of(forget_roots(s))];
  }
  return counts;
}

double tv_against(const ForestCounts& counts, const ExactDistribution& d, std::uint64_t samples) {
  double sum = 0.0;
  for (std::size_t i = 0; i < d.atoms().size(); ++i) {
    auto it = counts.find(d.atoms()[i].mask);
    const double freq = it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(samples);
    sum += std::abs(freq - to_double(d.probability(i)));
  }
  return 0.5 * sum;
}

}  // namespace

TEST_CASE("samples are reproducible and well formed") {
  const RootedForestSample a = sample_lsf_kn(30, 2.0, RngSeed{7, 3});
  const RootedForestSample b = sample_lsf_kn(30, 2.0, RngSeed{7, 3});
  CHECK(a.parent == b.parent);
  CHECK(a.parent_edge == b.parent_edge);
  CHECK(sample_lsf_kn(30, 2.0, RngSeed{7, 4}).parent != a.parent);
  const Graph g = complete_graph(8);
  for (std::uint64_t i = 0; i < 200; ++i) {
    const RootedForestSample s = sample_lsf_general(g, 0.5, RngSeed{11, i});
    CHECK(well_formed(s));
    const Forest f = forget_roots(s);
    CHECK(static_cast<int>(f.edges.size()) == 8 - s.component_count());
    // one root per component
    const auto labels = component_labels(g, f);
    std::set<int> rooted;
    for (Vertex r : s.roots()) rooted.insert(labels[static_cast<std::size_t>(r)]);
    CHECK(static_cast<int>(rooted.size()) == s.component_count());
    for (Vertex v = 0; v < 8; ++v) {
      const EdgeIndex e = s.parent_edge[static_cast<std::size_t>(v)];
      if (e < 0) continue;
      CHECK(g.other_end(e, v) == s.parent[static_cast<std::size_t>(v)]);
    }
  }
}

TEST_CASE("degenerate inputs") {
  const RootedForestSample one = sample_lsf_general(Graph(1, {}), 1.0, RngSeed{});
  CHECK(one.parent == std::vector<Vertex>{kRootMarker});
  CHECK(forget_roots(one).edges.empty());
  CHECK(sample_lsf_kn(1, 0.0, RngSeed{}).component_count() == 1);
  CHECK_THROWS_AS(sample_lsf_general(Graph(3, {{0, 1}}), 0.0, RngSeed{}), std::invalid_argument);
  CHECK_THROWS_AS(sample_lsf_kn(3, -1.0, RngSeed{}), std::invalid_argument);
}

TEST_CASE("huge lambda gives the empty forest") {
  int empty = 0;
  for (std::uint64_t i = 0; i < 10000; ++i) empty += sample_lsf_kn(5, 1e6, RngSeed{5, i}).component_count() == 5;
  CHECK(empty >= 9900);
}

TEST_CASE("lambda zero gives uniform spanning trees") {
  const Graph k3 = complete_graph(3);
  std::map<std::uint32_t, int> counts;
  const int samples = 100000;
  for (int i = 0; i < samples; ++i) {
    const RootedForestSample s = sample_lsf_kn(3, 0.0, RngSeed{9, static_cast<std::uint64_t>(i)});
    CHECK_FALSE(s.component_count() != 1);
    ++counts[mask_of(forget_roots(s))];
  }
  CHECK(counts.size() == 3);
  const double sigma = std::sqrt(samples * (1.0 / 3.0) * (2.0 / 3.0));
  for (const auto& [mask, c] : counts) CHECK(std::abs(c - samples / 3.0) < 3.0 * sigma);
}

TEST_CASE("path graph matches the oracle") {
  const Graph path = path_graph(3);
  const std::uint64_t samples = 400000;
  const ExactDistribution d = exact_distribution(path, Rational(1));
  CHECK(tv_against(count_forests(path, samples, 21, false), d, samples) < 0.005);
}

TEST_CASE("K_3 specific tree frequency") {
  const Graph k3 = complete_graph(3);
  const std::uint64_t samples = 200000;
  const auto counts = count_forests(k3, samples, 4, true);
  const double p = 3.0 / 16.0;
  const double sigma = std::sqrt(p * (1 - p) / samples);
  CHECK(std::abs(static_cast<double>(counts.at(0b011)) / samples - p) < 3 * sigma);
}

TEST_CASE("chi-square fit on K_4 across seeds") {
  const Graph k4 = complete_graph(4);
  const ExactDistribution d = exact_distribution(k4, Rational(1));
  const std::uint64_t samples = 1000000;
  const double critical = boost::math::quantile(boost::math::chi_squared(37), 0.999);
  int passing = 0;
  const int runs = 20;
  for (int run = 0; run < runs; ++run) {
    const auto counts = count_forests(k4, samples, 1000 + static_cast<std::uint64_t>(run), true);
    double stat = 0.0;
    for (std::size_t i = 0; i < d.atoms().size(); ++i) {
      const double expected = to_double(d.probability(i)) * samples;
      auto it = counts.find(d.atoms()[i].mask);
      const double observed = it == counts.end() ? 0.0 : static_cast<double>(it->second);
      stat += (observed - expected) * (observed - expected) / expected;
    }
    passing += stat < critical;
  }
  CHECK(passing >= 19);
}

TEST_CASE("root is uniform within its component") {
  // components on 3 vertices of K_4 are paths; the root sits at the middle one third of the time
  std::uint64_t middle = 0;
  std::uint64_t total = 0;
  RootedForestSample s;
  for (std::uint64_t i = 0; i < 300000; ++i) {
    Rng rng(RngSeed{31, i});
    sample_lsf_kn(4, 1.0, rng, s);
    const Graph g = complete_graph(4);
    const Forest f = forget_roots(s);
    const auto labels = component_labels(g, f);
    const auto sizes = component_sizes(g, f);
    for (Vertex r : s.roots()) {
      if (sizes[static_cast<std::size_t>(labels[static_cast<std::size_t>(r)])] != 3) continue;
      ++total;
      int degree = 0;
      for (EdgeIndex e : f.edges) degree += g.edge(e).tail == r || g.edge(e).head == r;
      middle += degree == 2;
    }
  }
  REQUIRE(total > 10000);
  const double p = 1.0 / 3.0;
  const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(total));
  CHECK(std::abs(static_cast<double>(middle) / static_cast<double>(total) - p) < 3 * sigma);
}

TEST_CASE("per-edge inclusion frequency") {
  for (auto [n, samples] : {std::pair{4, 200000}, std::pair{50, 100000}, std::pair{1000, 20000}}) {
    std::uint64_t hits = 0;
    RootedForestSample s;
    for (int i = 0; i < samples; ++i) {
      Rng rng(RngSeed{77, static_cast<std::uint64_t>(i)});
      sample_lsf_kn(n, 1.0, rng, s);
      hits += (s.parent[0] == 1) || (s.parent[1] == 0);
    }
    const double p = 2.0 / (n + 1.0);
    const double sigma = std::sqrt(p * (1 - p) / samples);
    CHECK(std::abs(static_cast<double>(hits) / samples - p) < 3 * sigma);
  }
}

TEST_CASE("thread count does not change results") {
  auto run = [](int threads) {
    return parallel_accumulate(
        5000, threads, [] { return std::vector<int>{}; },
        [](std::vector<int>& acc, std::uint64_t i) {
          acc.push_back(sample_lsf_kn(12, 1.5, RngSeed{3, i}).component_count());
        },
        [](std::vector<int>& into, const std::vector<int>& from) { into.insert(into.end(), from.begin(), from.end()); });
  };
  CHECK(run(1) == run(3));
}

TEST_CASE("large K_n with lambda = n is fast") {
  const auto start = std::chrono::steady_clock::now();
  const RootedForestSample s = sample_lsf_kn(100000, 100000.0, RngSeed{1, 0});
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(s.vertex_count() == 100000);
  CHECK(seconds < 1.0);
}
