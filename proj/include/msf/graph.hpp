#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace msf {

using Vertex = int;
using EdgeIndex = std::int64_t;

/// The distinguished vertex of every graph.
inline constexpr Vertex kRootVertex = 0;

/// Oriented edge: tail is e_-, head is e_+.
struct Edge {
  Vertex tail = 0;
  Vertex head = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Finite multigraph without self-loops. Edge order and orientation never change.
class Graph {
 public:
  Graph(int vertex_count, std::vector<Edge> edges);

  int vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeIndex i) const;

  /// Incident edge ids of v, in edge order (a parallel edge appears once per copy).
  std::span<const EdgeIndex> incident(Vertex v) const { return incident_[static_cast<std::size_t>(v)]; }
  int degree(Vertex v) const { return static_cast<int>(incident(v).size()); }

  /// The endpoint of edge i that is not v.
  Vertex other_end(EdgeIndex i, Vertex v) const;

  bool is_connected() const;

 private:
  int vertex_count_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeIndex>> incident_;
};

/// K_n with edges (i,j), i < j, sorted lexicographically.
Graph complete_graph(int n);

/// Index of edge (i,j) (either order) in complete_graph(n).
EdgeIndex complete_graph_edge_index(int n, Vertex i, Vertex j);

Graph cycle_graph(int n);
Graph path_graph(int n);

IntMatrix laplacian(const Graph& g);

/// Removes the listed edges; survivors keep their relative order.
Graph delete_edges(const Graph& g, std::span<const EdgeIndex> removed);

/// One row per listed edge: -1 at the tail, +1 at the head.
IntMatrix oriented_incidence(const Graph& g, std::span<const EdgeIndex> selected);

/// Same graph with the orientation of the listed edges reversed.
Graph flip_edges(const Graph& g, std::span<const EdgeIndex> flipped);

/// Edge-list text: first line n, then one "tail head" pair per line.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);

}  // namespace msf
