#include "msf/forest_oracle.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace msf {

namespace {

/// Union-find with union by size and an undo log, for include/skip backtracking.
class RollbackUnionFind {
 public:
  explicit RollbackUnionFind(int n) : parent_(static_cast<std::size_t>(n)), size_(static_cast<std::size_t>(n), 1) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int v) const {
    while (parent_[static_cast<std::size_t>(v)] != v) v = parent_[static_cast<std::size_t>(v)];
    return v;
  }

  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[static_cast<std::size_t>(a)] < size_[static_cast<std::size_t>(b)]) std::swap(a, b);
    parent_[static_cast<std::size_t>(b)] = a;
    size_[static_cast<std::size_t>(a)] += size_[static_cast<std::size_t>(b)];
    undo_.push_back(b);
    return true;
  }

  void undo() {
    const int b = undo_.back();
    undo_.pop_back();
    const int a = parent_[static_cast<std::size_t>(b)];
    size_[static_cast<std::size_t>(a)] -= size_[static_cast<std::size_t>(b)];
    parent_[static_cast<std::size_t>(b)] = b;
  }

  std::int64_t root_size_product() const {
    std::int64_t product = 1;
    for (std::size_t v = 0; v < parent_.size(); ++v) {
      if (parent_[v] == static_cast<int>(v)) product *= size_[v];
    }
    return product;
  }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
  std::vector<int> undo_;
};

void enumerate_from(const Graph& g, std::size_t next, std::uint32_t mask, int edges_used,
                    RollbackUnionFind& uf, std::vector<ForestAtom>& out) {
  if (next == g.edge_count()) {
    out.push_back({mask, g.vertex_count() - edges_used, uf.root_size_product()});
    return;
  }
  enumerate_from(g, next + 1, mask, edges_used, uf, out);
  const Edge& e = g.edges()[next];
  if (uf.unite(e.tail, e.head)) {
    enumerate_from(g, next + 1, mask | (std::uint32_t{1} << next), edges_used + 1, uf, out);
    uf.undo();
  }
}

}  // namespace

std::vector<int> component_labels(const Graph& g, const Forest& f) {
  const int n = g.vertex_count();
  std::vector<std::vector<Vertex>> adjacency(static_cast<std::size_t>(n));
  for (EdgeIndex i : f.edges) {
    const Edge& e = g.edge(i);
    adjacency[static_cast<std::size_t>(e.tail)].push_back(e.head);
    adjacency[static_cast<std::size_t>(e.head)].push_back(e.tail);
  }
  std::vector<int> label(static_cast<std::size_t>(n), -1);
  int next = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (label[static_cast<std::size_t>(s)] >= 0) continue;
    label[static_cast<std::size_t>(s)] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : adjacency[static_cast<std::size_t>(v)]) {
        if (label[static_cast<std::size_t>(w)] < 0) {
          label[static_cast<std::size_t>(w)] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return label;
}

std::vector<int> component_sizes(const Graph& g, const Forest& f) {
  const auto labels = component_labels(g, f);
  const int count = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<int> sizes(static_cast<std::size_t>(count), 0);
  for (int c : labels) ++sizes[static_cast<std::size_t>(c)];
  return sizes;
}

RootedShape root_component_shape(const Graph& g, const Forest& f, int h) {
  std::vector<std::vector<Vertex>> adjacency(static_cast<std::size_t>(g.vertex_count()));
  for (EdgeIndex i : f.edges) {
    const Edge& e = g.edge(i);
    adjacency[static_cast<std::size_t>(e.tail)].push_back(e.head);
    adjacency[static_cast<std::size_t>(e.head)].push_back(e.tail);
  }
  LabeledRootedTree t;
  t.parent.push_back(-1);
  std::vector<int> local(static_cast<std::size_t>(g.vertex_count()), -1);
  std::vector<int> depth{0};
  std::vector<Vertex> queue{kRootVertex};
  local[kRootVertex] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex v = queue[head];
    const int lv = local[static_cast<std::size_t>(v)];
    if (depth[static_cast<std::size_t>(lv)] == h) continue;
    for (Vertex w : adjacency[static_cast<std::size_t>(v)]) {
      if (local[static_cast<std::size_t>(w)] >= 0) continue;
      local[static_cast<std::size_t>(w)] = t.size();
      t.parent.push_back(lv);
      depth.push_back(depth[static_cast<std::size_t>(lv)] + 1);
      queue.push_back(w);
    }
  }
  return shape_of(t);
}

std::vector<ForestAtom> enumerate_forest_atoms(const Graph& g) {
  if (g.edge_count() > kEnumerationEdgeBudget) {
    throw std::length_error("forest enumeration budget is " +
                            std::to_string(kEnumerationEdgeBudget) + " edges, graph has " +
                            std::to_string(g.edge_count()));
  }
  std::vector<ForestAtom> out;
  RollbackUnionFind uf(g.vertex_count());
  enumerate_from(g, 0, 0, 0, uf, out);
  return out;
}

Forest forest_from_mask(const Graph& g, std::uint32_t mask) {
  Forest f{g.vertex_count(), {}};
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    if (mask & (std::uint32_t{1} << i)) f.edges.push_back(static_cast<EdgeIndex>(i));
  }
  return f;
}

std::uint32_t mask_of(const Forest& f) {
  std::uint32_t mask = 0;
  for (EdgeIndex i : f.edges) {
    if (i < 0 || i >= 32) throw std::out_of_range("edge id does not fit an oracle mask");
    mask |= std::uint32_t{1} << i;
  }
  return mask;
}

std::vector<Forest> enumerate_forests(const Graph& g) {
  std::vector<Forest> out;
  for (const ForestAtom& a : enumerate_forest_atoms(g)) out.push_back(forest_from_mask(g, a.mask));
  return out;
}

ExactDistribution::ExactDistribution(Graph g, Rational lambda, std::vector<ForestAtom> atoms)
    : graph_(std::move(g)), lambda_(std::move(lambda)), atoms_(std::move(atoms)) {
  if (lambda_ <= 0) throw std::invalid_argument("oracle lambda must be positive");
  lambda_powers_.reserve(static_cast<std::size_t>(graph_.vertex_count()) + 1);
  Rational power = 1;
  for (int k = 0; k <= graph_.vertex_count(); ++k) {
    lambda_powers_.push_back(power);
    power *= lambda_;
  }
  std::vector<BigInt> all(lambda_powers_.size(), 0);
  for (const ForestAtom& a : atoms_) all[static_cast<std::size_t>(a.components)] += a.size_product;
  z_ = total_weight(all);
}

Rational ExactDistribution::weight(std::size_t i) const {
  const ForestAtom& a = atoms_.at(i);
  return lambda_powers_[static_cast<std::size_t>(a.components)] * a.size_product;
}

Rational ExactDistribution::total_weight(const std::vector<BigInt>& poly) const {
  Rational acc = 0;
  for (std::size_t k = 0; k < poly.size(); ++k) {
    if (poly[k] != 0) acc += lambda_powers_[k] * poly[k];
  }
  return acc;
}

Rational ExactDistribution::mean_components() const {
  std::vector<BigInt> poly(static_cast<std::size_t>(graph_.vertex_count()) + 1, 0);
  for (const ForestAtom& a : atoms_) {
    poly[static_cast<std::size_t>(a.components)] += BigInt(a.size_product) * a.components;
  }
  return total_weight(poly) / z_;
}

ExactDistribution exact_distribution(const Graph& g, const Rational& lambda) {
  return ExactDistribution(g, lambda, enumerate_forest_atoms(g));
}

Rational exact_event_prob(const ExactDistribution& d, const EdgeEvent& ev) {
  ev.validate(d.graph());
  std::uint32_t include = 0;
  std::uint32_t exclude = 0;
  for (EdgeIndex i : ev.include) include |= std::uint32_t{1} << i;
  for (EdgeIndex i : ev.exclude) exclude |= std::uint32_t{1} << i;
  return d.probability_where([&](const ForestAtom& a) {
    return (a.mask & include) == include && (a.mask & exclude) == 0;
  });
}

std::vector<BigInt> rooted_forest_counts(const Graph& g) {
  std::vector<BigInt> counts(static_cast<std::size_t>(g.vertex_count()) + 1, 0);
  for (const ForestAtom& a : enumerate_forest_atoms(g)) {
    counts[static_cast<std::size_t>(a.components)] += a.size_product;
  }
  return counts;
}

ExactShapeLaw exact_root_component_shape_law(const Graph& g, const Rational& lambda, int h) {
  return exact_root_component_shape_law(exact_distribution(g, lambda), h);
}

ExactShapeLaw exact_root_component_shape_law(const ExactDistribution& d, int h) {
  if (h < 0) throw std::invalid_argument("height must be >= 0");
  const Graph& g = d.graph();
  std::map<std::string, std::vector<BigInt>> polys;
  for (const ForestAtom& a : d.atoms()) {
    const std::string code = root_component_shape(g, forest_from_mask(g, a.mask), h).code();
    auto [it, inserted] = polys.try_emplace(code);
    if (inserted) it->second.assign(static_cast<std::size_t>(g.vertex_count()) + 1, 0);
    it->second[static_cast<std::size_t>(a.components)] += a.size_product;
  }
  ExactShapeLaw law;
  for (const auto& [code, poly] : polys) {
    law.emplace(code, d.total_weight(poly) / d.partition_function());
  }
  return law;
}

}  // namespace msf
