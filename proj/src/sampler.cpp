#include "msf/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace msf {

std::vector<Vertex> RootedForestSample::roots() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < vertex_count(); ++v) {
    if (parent[static_cast<std::size_t>(v)] == kRootMarker) out.push_back(v);
  }
  return out;
}

int RootedForestSample::component_count() const {
  return static_cast<int>(std::count(parent.begin(), parent.end(), kRootMarker));
}

namespace {

constexpr Vertex kUnset = -2;

/// Second pass of Wilson's algorithm: freeze the loop-erased branch started at `start`.
/// `next` holds the last exit of every vertex visited by the walk.
void retrace(Vertex start, std::vector<char>& in_tree, const std::vector<Vertex>& next) {
  for (Vertex u = start; !in_tree[static_cast<std::size_t>(u)]; u = next[static_cast<std::size_t>(u)]) {
    in_tree[static_cast<std::size_t>(u)] = 1;
  }
}

}  // namespace

void sample_lsf_kn(int n, double lambda, Rng& rng, RootedForestSample& out) {
  if (n < 1) throw std::invalid_argument("sample_lsf_kn: n must be >= 1");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("sample_lsf_kn: lambda must be finite and >= 0");
  }
  const double kill = n == 1 ? 1.0 : lambda / (lambda + n - 1.0);
  auto& next = out.parent;
  next.assign(static_cast<std::size_t>(n), kUnset);
  std::vector<char> in_tree(static_cast<std::size_t>(n), 0);
  if (lambda == 0.0) {
    next[kRootVertex] = kRootMarker;
    in_tree[kRootVertex] = 1;
  }
  const auto others = static_cast<std::uint64_t>(n - 1);
  for (Vertex start = 0; start < n; ++start) {
    Vertex u = start;
    while (!in_tree[static_cast<std::size_t>(u)]) {
      if (kill > 0.0 && rng.uniform() < kill) {
        next[static_cast<std::size_t>(u)] = kRootMarker;
        in_tree[static_cast<std::size_t>(u)] = 1;
        break;
      }
      auto v = static_cast<Vertex>(rng.below(others));
      if (v >= u) ++v;
      next[static_cast<std::size_t>(u)] = v;
      u = v;
    }
    retrace(start, in_tree, next);
  }
  out.parent_edge.assign(static_cast<std::size_t>(n), -1);
  for (Vertex v = 0; v < n; ++v) {
    const Vertex p = next[static_cast<std::size_t>(v)];
    if (p != kRootMarker) out.parent_edge[static_cast<std::size_t>(v)] = complete_graph_edge_index(n, v, p);
  }
}

RootedForestSample sample_lsf_kn(int n, double lambda, RngSeed seed) {
  Rng rng(seed);
  RootedForestSample out;
  sample_lsf_kn(n, lambda, rng, out);
  return out;
}

void sample_lsf_general(const Graph& g, double lambda, Rng& rng, RootedForestSample& out) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("sample_lsf_general: lambda must be finite and >= 0");
  }
  if (lambda == 0.0 && !g.is_connected()) {
    throw std::invalid_argument("sample_lsf_general: lambda = 0 needs a connected graph");
  }
  const int n = g.vertex_count();
  auto& next = out.parent;
  next.assign(static_cast<std::size_t>(n), kUnset);
  out.parent_edge.assign(static_cast<std::size_t>(n), -1);
  std::vector<char> in_tree(static_cast<std::size_t>(n), 0);
  if (lambda == 0.0) {
    next[kRootVertex] = kRootMarker;
    in_tree[kRootVertex] = 1;
  }
  for (Vertex start = 0; start < n; ++start) {
    Vertex u = start;
    while (!in_tree[static_cast<std::size_t>(u)]) {
      const auto incident = g.incident(u);
      const double degree = static_cast<double>(incident.size());
      if (lambda > 0.0 && rng.uniform() * (lambda + degree) < lambda) {
        next[static_cast<std::size_t>(u)] = kRootMarker;
        out.parent_edge[static_cast<std::size_t>(u)] = -1;
        in_tree[static_cast<std::size_t>(u)] = 1;
        break;
      }
      const EdgeIndex e = incident[rng.below(incident.size())];
      const Vertex v = g.other_end(e, u);
      next[static_cast<std::size_t>(u)] = v;
      out.parent_edge[static_cast<std::size_t>(u)] = e;
      u = v;
    }
    retrace(start, in_tree, next);
  }
}

RootedForestSample sample_lsf_general(const Graph& g, double lambda, RngSeed seed) {
  Rng rng(seed);
  RootedForestSample out;
  sample_lsf_general(g, lambda, rng, out);
  return out;
}

Forest forget_roots(const RootedForestSample& s) {
  Forest f{s.vertex_count(), {}};
  for (EdgeIndex e : s.parent_edge) {
    if (e >= 0) f.edges.push_back(e);
  }
  std::sort(f.edges.begin(), f.edges.end());
  return f;
}

}  // namespace msf
