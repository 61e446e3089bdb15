#include "msf/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace msf {

Graph::Graph(int vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
  if (vertex_count_ < 1) {
    throw std::invalid_argument("graph needs at least one vertex");
  }
  incident_.resize(static_cast<std::size_t>(vertex_count_));
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.tail < 0 || e.tail >= vertex_count_ || e.head < 0 || e.head >= vertex_count_) {
      throw std::invalid_argument("edge " + std::to_string(i) + " has an endpoint outside 0.." +
                                  std::to_string(vertex_count_ - 1));
    }
    if (e.tail == e.head) {
      throw std::invalid_argument("edge " + std::to_string(i) + " is a self-loop");
    }
    incident_[static_cast<std::size_t>(e.tail)].push_back(static_cast<EdgeIndex>(i));
    incident_[static_cast<std::size_t>(e.head)].push_back(static_cast<EdgeIndex>(i));
  }
}

const Edge& Graph::edge(EdgeIndex i) const {
  if (i < 0 || static_cast<std::size_t>(i) >= edges_.size()) {
    throw std::out_of_range("edge index " + std::to_string(i) + " out of range");
  }
  return edges_[static_cast<std::size_t>(i)];
}

Vertex Graph::other_end(EdgeIndex i, Vertex v) const {
  const Edge& e = edges_[static_cast<std::size_t>(i)];
  return e.tail == v ? e.head : e.tail;
}

bool Graph::is_connected() const {
  std::vector<char> seen(static_cast<std::size_t>(vertex_count_), 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (EdgeIndex i : incident(v)) {
      Vertex w = other_end(i, v);
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == vertex_count_;
}

Graph complete_graph(int n) {
  if (n < 1) throw std::invalid_argument("complete graph needs n >= 1");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2);
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) edges.push_back({i, j});
  }
  return Graph(n, std::move(edges));
}

EdgeIndex complete_graph_edge_index(int n, Vertex i, Vertex j) {
  if (i == j || i < 0 || j < 0 || i >= n || j >= n) {
    throw std::invalid_argument("not an edge of the complete graph");
  }
  if (i > j) std::swap(i, j);
  const auto a = static_cast<EdgeIndex>(i);
  const auto nn = static_cast<EdgeIndex>(n);
  // rows 0..i-1 contribute (n-1) + (n-2) + ... + (n-i) edges
  return a * (2 * nn - a - 1) / 2 + (j - i - 1);
}

Graph cycle_graph(int n) {
  if (n < 3) throw std::invalid_argument("cycle graph needs n >= 3");
  std::vector<Edge> edges;
  for (Vertex i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  edges.push_back({0, n - 1});
  return Graph(n, std::move(edges));
}

Graph path_graph(int n) {
  std::vector<Edge> edges;
  for (Vertex i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return Graph(n, std::move(edges));
}

IntMatrix laplacian(const Graph& g) {
  const int n = g.vertex_count();
  IntMatrix lap = IntMatrix::Zero(n, n);
  for (const Edge& e : g.edges()) {
    lap(e.tail, e.tail) += 1;
    lap(e.head, e.head) += 1;
    lap(e.tail, e.head) -= 1;
    lap(e.head, e.tail) -= 1;
  }
  return lap;
}

namespace {

void check_indices(const Graph& g, std::span<const EdgeIndex> indices, bool require_distinct) {
  std::vector<char> used(g.edge_count(), 0);
  for (EdgeIndex i : indices) {
    if (i < 0 || static_cast<std::size_t>(i) >= g.edge_count()) {
      throw std::out_of_range("edge index " + std::to_string(i) + " out of range");
    }
    if (require_distinct && used[static_cast<std::size_t>(i)]) {
      throw std::invalid_argument("edge index " + std::to_string(i) + " listed twice");
    }
    used[static_cast<std::size_t>(i)] = 1;
  }
}

}  // namespace

Graph delete_edges(const Graph& g, std::span<const EdgeIndex> removed) {
  check_indices(g, removed, true);
  std::vector<char> drop(g.edge_count(), 0);
  for (EdgeIndex i : removed) drop[static_cast<std::size_t>(i)] = 1;
  std::vector<Edge> kept;
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    if (!drop[i]) kept.push_back(g.edges()[i]);
  }
  return Graph(g.vertex_count(), std::move(kept));
}

IntMatrix oriented_incidence(const Graph& g, std::span<const EdgeIndex> selected) {
  check_indices(g, selected, false);
  IntMatrix b = IntMatrix::Zero(static_cast<Eigen::Index>(selected.size()), g.vertex_count());
  for (std::size_t r = 0; r < selected.size(); ++r) {
    const Edge& e = g.edge(selected[r]);
    b(static_cast<Eigen::Index>(r), e.tail) = -1;
    b(static_cast<Eigen::Index>(r), e.head) = 1;
  }
  return b;
}

Graph flip_edges(const Graph& g, std::span<const EdgeIndex> flipped) {
  check_indices(g, flipped, false);
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  for (EdgeIndex i : flipped) {
    auto& e = edges[static_cast<std::size_t>(i)];
    std::swap(e.tail, e.head);
  }
  return Graph(g.vertex_count(), std::move(edges));
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  int n = 0;
  bool have_n = false;
  std::vector<Edge> edges;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    if (!have_n) {
      if (!(fields >> n) || n < 1) {
        throw std::invalid_argument("edge list line " + std::to_string(line_no) +
                                    ": expected a positive vertex count");
      }
      have_n = true;
      continue;
    }
    Edge e;
    if (!(fields >> e.tail >> e.head)) {
      throw std::invalid_argument("edge list line " + std::to_string(line_no) +
                                  ": expected 'tail head'");
    }
    edges.push_back(e);
  }
  if (!have_n) throw std::invalid_argument("edge list is empty");
  return Graph(n, std::move(edges));
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open graph file '" + path + "'");
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.vertex_count() << '\n';
  for (const Edge& e : g.edges()) out << e.tail << ' ' << e.head << '\n';
}

}  // namespace msf
