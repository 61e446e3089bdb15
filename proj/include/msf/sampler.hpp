#pragma once

#include <cstdint>
#include <vector>

#include "msf/forest_oracle.hpp"
#include "msf/graph.hpp"
#include "msf/rng.hpp"

namespace msf {

inline constexpr Vertex kRootMarker = -1;

/// Rooted spanning forest as a parent map; roots carry kRootMarker.
struct RootedForestSample {
  std::vector<Vertex> parent;
  /// Edge of the underlying graph joining v to parent[v]; -1 at roots.
  std::vector<EdgeIndex> parent_edge;

  int vertex_count() const { return static_cast<int>(parent.size()); }
  std::vector<Vertex> roots() const;
  int component_count() const;
};

/// Wilson's algorithm with killing on K_n. Each walk step is killed with probability
/// lambda/(lambda+n-1), rooting the branch at the current vertex, and otherwise moves to a
/// uniform other vertex. lambda = 0 gives a uniform spanning tree rooted at vertex 0.
RootedForestSample sample_lsf_kn(int n, double lambda, RngSeed seed);
void sample_lsf_kn(int n, double lambda, Rng& rng, RootedForestSample& out);

/// Wilson's algorithm on g plus a cemetery: from v the walk dies with probability
/// lambda/(lambda+deg v), else follows a uniform incident edge. lambda = 0 requires g connected
/// and roots the tree at vertex 0.
RootedForestSample sample_lsf_general(const Graph& g, double lambda, RngSeed seed);
void sample_lsf_general(const Graph& g, double lambda, Rng& rng, RootedForestSample& out);

Forest forget_roots(const RootedForestSample& s);

}  // namespace msf
