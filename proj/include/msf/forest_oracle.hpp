#pragma once

#include <cstdint>
#include <vector>

#include "msf/determinantal.hpp"
#include "msf/exact.hpp"
#include "msf/graph.hpp"
#include "msf/shape_law.hpp"
#include "msf/tree_shape.hpp"

namespace msf {

/// Acyclic edge subset covering every vertex; edge ids ascending.
struct Forest {
  int vertex_count = 1;
  std::vector<EdgeIndex> edges;

  friend bool operator==(const Forest&, const Forest&) = default;
};

/// Component id per vertex (ids 0.. in order of first appearance).
std::vector<int> component_labels(const Graph& g, const Forest& f);
std::vector<int> component_sizes(const Graph& g, const Forest& f);

/// Component of vertex 0, truncated at height h, as a canonical shape.
RootedShape root_component_shape(const Graph& g, const Forest& f, int h);

inline constexpr std::size_t kEnumerationEdgeBudget = 25;

/// Forest stored as an edge bitmask with its component data.
struct ForestAtom {
  std::uint32_t mask = 0;
  int components = 0;
  std::int64_t size_product = 1;
};

/// Every spanning forest, each once. Throws std::length_error past the edge budget.
std::vector<ForestAtom> enumerate_forest_atoms(const Graph& g);
std::vector<Forest> enumerate_forests(const Graph& g);

Forest forest_from_mask(const Graph& g, std::uint32_t mask);
std::uint32_t mask_of(const Forest& f);

/// Exact law of the lambda-massive spanning forest: weight(f) = lambda^{#trees} prod |t|.
class ExactDistribution {
 public:
  ExactDistribution(Graph g, Rational lambda, std::vector<ForestAtom> atoms);

  const Graph& graph() const { return graph_; }
  const Rational& lambda() const { return lambda_; }
  const std::vector<ForestAtom>& atoms() const { return atoms_; }
  const Rational& partition_function() const { return z_; }

  Rational weight(std::size_t i) const;
  Rational probability(std::size_t i) const { return weight(i) / z_; }

  /// Exact probability of the set of forests selected by `pred(atom)`. Weights are
  /// accumulated as integer polynomials in lambda and evaluated once.
  template <typename Pred>
  Rational probability_where(Pred&& pred) const {
    std::vector<BigInt> poly(static_cast<std::size_t>(graph_.vertex_count()) + 1, 0);
    for (const ForestAtom& a : atoms_) {
      if (pred(a)) poly[static_cast<std::size_t>(a.components)] += a.size_product;
    }
    return total_weight(poly) / z_;
  }

  /// Expected number of trees.
  Rational mean_components() const;

  /// sum_k poly[k] lambda^k: total weight of forests aggregated by tree count.
  Rational total_weight(const std::vector<BigInt>& poly) const;

 private:
  Graph graph_;
  Rational lambda_;
  std::vector<ForestAtom> atoms_;
  std::vector<Rational> lambda_powers_;
  Rational z_;
};

ExactDistribution exact_distribution(const Graph& g, const Rational& lambda);

Rational exact_event_prob(const ExactDistribution& d, const EdgeEvent& ev);

/// Rooted forest counts by number of trees, read off the enumeration (index k = k trees).
std::vector<BigInt> rooted_forest_counts(const Graph& g);

/// Exact law of the root component's shape truncated at h.
ExactShapeLaw exact_root_component_shape_law(const Graph& g, const Rational& lambda, int h);
ExactShapeLaw exact_root_component_shape_law(const ExactDistribution& d, int h);

}  // namespace msf
