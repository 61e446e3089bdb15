#include <doctest.h>

#include <set>

#include "msf/forest_oracle.hpp"

using namespace msf;

TEST_CASE("forest enumeration counts") {
  CHECK(enumerate_forests(Graph(1, {})).size() == 1);
  CHECK(enumerate_forests(complete_graph(3)).size() == 7);
  const auto k4 = enumerate_forest_atoms(complete_graph(4));
  CHECK(k4.size() == 38);
  std::map<int, int> by_edges;
  std::set<std::uint32_t> masks;
  for (const auto& a : k4) {
    ++by_edges[std::popcount(a.mask)];
    masks.insert(a.mask);
    // acyclic: components = vertices - edges
    CHECK(a.components == 4 - std::popcount(a.mask));
  }
  CHECK(masks.size() == 38);
  CHECK(by_edges == std::map<int, int>{{0, 1}, {1, 6}, {2, 15}, {3, 16}});
  // parallel edges: each copy is its own forest, both together form a cycle
  CHECK(enumerate_forests(Graph(2, {{0, 1}, {1, 0}})).size() == 3);
}

TEST_CASE("forest helpers") {
  const Graph g = complete_graph(4);
  const Forest f = forest_from_mask(g, 0b100001);  // edges 0-1 and 2-3
  CHECK(f.edges == std::vector<EdgeIndex>{0, 5});
  CHECK(mask_of(f) == 0b100001u);
  CHECK(component_sizes(g, f) == std::vector<int>{2, 2});
  CHECK(component_labels(g, f) == std::vector<int>{0, 0, 1, 1});
  CHECK(root_component_shape(g, f, 1).code() == "(())");
  CHECK(root_component_shape(g, Forest{4, {}}, 3).code() == "()");
  const Forest path = forest_from_mask(g, 0b001001);  // 0-1, 1-2
  CHECK(root_component_shape(g, path, 1).code() == "(())");
  CHECK(root_component_shape(g, path, 2).code() == "((()))");
}

TEST_CASE("edge budget") {
  std::vector<Edge> edges;
  for (int i = 0; i < 26; ++i) edges.push_back({0, 1});
  CHECK_THROWS_AS(enumerate_forest_atoms(Graph(2, edges)), std::length_error);
}

TEST_CASE("exact distribution on K_3") {
  const ExactDistribution d = exact_distribution(complete_graph(3), Rational(1));
  CHECK(d.partition_function() == 16);
  for (std::size_t i = 0; i < d.atoms().size(); ++i) {
    const int edges = std::popcount(d.atoms()[i].mask);
    const Rational expected = edges == 2 ? Rational(3, 16) : edges == 1 ? Rational(2, 16) : Rational(1, 16);
    CHECK(d.probability(i) == expected);
  }
  CHECK(d.mean_components() == Rational(3, 2));
}

TEST_CASE("exact distribution on K_4") {
  const Graph g = complete_graph(4);
  const ExactDistribution d = exact_distribution(g, Rational(1));
  CHECK(d.partition_function() == 125);
  CHECK(exact_event_prob(d, {{0}, {}}) == Rational(2, 5));
  CHECK(exact_event_prob(d, {{}, {}}) == 1);
  CHECK(exact_event_prob(d, {{0, 5}, {1, 2, 3, 4}}) == Rational(4, 125));
  CHECK(exact_event_prob(d, {{0, 5}, {}}) == Rational(4, 25));
  for (const Rational& lambda : {Rational(1, 3), Rational(2), Rational(7, 2)}) {
    CHECK(exact_distribution(g, lambda).partition_function() == char_poly(g).evaluate(lambda));
  }
}

TEST_CASE("rooted forest counts") {
  CHECK(rooted_forest_counts(complete_graph(3)) ==
        std::vector<BigInt>{BigInt(0), BigInt(9), BigInt(6), BigInt(1)});
  // Cayley: n^{n-1} rooted spanning trees of K_n
  CHECK(rooted_forest_counts(complete_graph(5))[1] == 625);
}

TEST_CASE("root component shape law") {
  const ExactShapeLaw k4 = exact_root_component_shape_law(complete_graph(4), Rational(1), 1);
  CHECK(k4.size() == 4);
  CHECK(k4.at("()") == Rational(16, 125));
  CHECK(k4.at("(())") == Rational(72, 125));
  CHECK(k4.at("(()())") == Rational(33, 125));
  CHECK(k4.at("(()()())") == Rational(4, 125));
  const ExactShapeLaw h0 = exact_root_component_shape_law(complete_graph(5), Rational(2), 0);
  CHECK(h0 == ExactShapeLaw{{"()", Rational(1)}});
  const ExactShapeLaw k3 = exact_root_component_shape_law(complete_graph(3), Rational(1), 1);
  Rational total = 0;
  for (const auto& [code, p] : k3) total += p;
  CHECK(total == 1);
  // singleton: vertex 0 isolated, i.e. forests avoiding edges 0-1 and 0-2 (1 empty + 1 single edge)
  CHECK(k3.at("()") == Rational(1 + 2, 16));
}
