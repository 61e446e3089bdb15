#include "msf/tree_shape.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace msf {

namespace {

std::vector<std::vector<int>> children_of(const LabeledRootedTree& t) {
  const int k = t.size();
  if (k < 1) throw std::invalid_argument("rooted tree needs at least one vertex");
  if (t.root < 0 || t.root >= k) throw std::invalid_argument("root outside the vertex range");
  std::vector<std::vector<int>> children(static_cast<std::size_t>(k));
  for (int v = 0; v < k; ++v) {
    const int p = t.parent[static_cast<std::size_t>(v)];
    if (v == t.root) {
      if (p != -1) throw std::invalid_argument("root must not have a parent");
      continue;
    }
    if (p < 0 || p >= k) {
      throw std::invalid_argument("vertex " + std::to_string(v) + " has no valid parent");
    }
    children[static_cast<std::size_t>(p)].push_back(v);
  }
  return children;
}

/// Breadth-first order from the root; throws if some vertex is unreachable (cycle).
std::vector<int> bfs_order(const LabeledRootedTree& t, const std::vector<std::vector<int>>& children) {
  std::vector<int> order{t.root};
  order.reserve(static_cast<std::size_t>(t.size()));
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (int c : children[static_cast<std::size_t>(order[head])]) order.push_back(c);
  }
  if (static_cast<int>(order.size()) != t.size()) {
    throw std::invalid_argument("parent map contains a cycle or a second component");
  }
  return order;
}

}  // namespace

RootedShape::RootedShape() : RootedShape(std::string("()")) {}

RootedShape::RootedShape(std::string canonical_code) : code_(std::move(canonical_code)) {
  const std::size_t k = code_.size() / 2;
  parent_.reserve(k);
  depth_.reserve(k);
  open_pos_.reserve(k);
  subtree_size_.assign(k, 1);
  std::vector<int> stack;
  for (std::size_t pos = 0; pos < code_.size(); ++pos) {
    if (code_[pos] == '(') {
      const int v = static_cast<int>(parent_.size());
      parent_.push_back(stack.empty() ? -1 : stack.back());
      depth_.push_back(static_cast<int>(stack.size()));
      open_pos_.push_back(static_cast<int>(pos));
      stack.push_back(v);
    } else {
      const int v = stack.back();
      stack.pop_back();
      if (!stack.empty()) subtree_size_[static_cast<std::size_t>(stack.back())] += subtree_size_[static_cast<std::size_t>(v)];
    }
  }
  height_ = *std::max_element(depth_.begin(), depth_.end());
  boundary_count_ = static_cast<int>(std::count(depth_.begin(), depth_.end(), height_));

  // |Aut| = prod over vertices of prod over runs of identical child codes (run length)!
  // Children of a vertex appear in sorted code order, so identical codes are adjacent.
  aut_ = 1;
  std::vector<std::vector<int>> children(k);
  for (std::size_t v = 1; v < k; ++v) children[static_cast<std::size_t>(parent_[v])].push_back(static_cast<int>(v));
  for (const auto& kids : children) {
    std::size_t run = 1;
    for (std::size_t i = 1; i <= kids.size(); ++i) {
      if (i < kids.size() && subtree_code(kids[i]) == subtree_code(kids[i - 1])) {
        ++run;
        continue;
      }
      if (run > 1) aut_ *= factorial(static_cast<std::int64_t>(run));
      run = 1;
    }
  }
}

std::string_view RootedShape::subtree_code(int v) const {
  const auto pos = static_cast<std::size_t>(open_pos_[static_cast<std::size_t>(v)]);
  return std::string_view(code_).substr(pos, 2 * static_cast<std::size_t>(subtree_size(v)));
}

RootedShape RootedShape::from_code(std::string_view code) {
  LabeledRootedTree t;
  std::vector<int> stack;
  bool closed_root = false;
  for (char c : code) {
    if (closed_root) throw std::invalid_argument("shape code has text after the root closes");
    if (c == '(') {
      t.parent.push_back(stack.empty() ? -1 : stack.back());
      stack.push_back(t.size() - 1);
    } else if (c == ')') {
      if (stack.empty()) throw std::invalid_argument("unbalanced shape code");
      stack.pop_back();
      closed_root = stack.empty();
    } else {
      throw std::invalid_argument(std::string("unexpected character '") + c + "' in shape code");
    }
  }
  if (t.parent.empty() || !stack.empty()) throw std::invalid_argument("unbalanced shape code");
  t.root = 0;
  return shape_of(t);
}

LabeledRootedTree RootedShape::to_labeled() const { return LabeledRootedTree{parent_, 0}; }

RootedShape shape_of(const LabeledRootedTree& t) {
  const auto children = children_of(t);
  const auto order = bfs_order(t, children);
  std::vector<std::string> codes(static_cast<std::size_t>(t.size()));
  std::vector<std::string_view> kid_codes;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto v = static_cast<std::size_t>(*it);
    kid_codes.clear();
    std::size_t length = 2;
    for (int c : children[v]) {
      kid_codes.emplace_back(codes[static_cast<std::size_t>(c)]);
      length += kid_codes.back().size();
    }
    std::sort(kid_codes.begin(), kid_codes.end());
    std::string code;
    code.reserve(length);
    code.push_back('(');
    for (auto kc : kid_codes) code.append(kc);
    code.push_back(')');
    codes[v] = std::move(code);
    for (int c : children[v]) {
      codes[static_cast<std::size_t>(c)].clear();
      codes[static_cast<std::size_t>(c)].shrink_to_fit();
    }
  }
  return RootedShape(std::move(codes[static_cast<std::size_t>(t.root)]));
}

RootedShape truncate(const RootedShape& s, int h) {
  if (h < 0) throw std::invalid_argument("truncation height must be >= 0");
  if (h >= s.height()) return s;
  LabeledRootedTree t;
  std::vector<int> new_id(static_cast<std::size_t>(s.size()), -1);
  for (int v = 0; v < s.size(); ++v) {
    if (s.depths()[static_cast<std::size_t>(v)] > h) continue;
    new_id[static_cast<std::size_t>(v)] = t.size();
    const int p = s.parents()[static_cast<std::size_t>(v)];
    t.parent.push_back(p < 0 ? -1 : new_id[static_cast<std::size_t>(p)]);
  }
  return shape_of(t);
}

BigInt aut_count(const RootedShape& s) { return s.aut_count(); }

BoundaryInterior boundary_interior(const RootedShape& s, int h) {
  BoundaryInterior out;
  for (int d : s.depths()) {
    if (d == h) ++out.boundary;
    if (d < h) ++out.interior;
  }
  return out;
}

namespace {

/// Subtree at `top` with the subtree at `cut` removed (cut < 0: nothing removed).
RootedShape hanging_subtree(const RootedShape& s, int top, int cut) {
  LabeledRootedTree t;
  const int end = top + s.subtree_size(top);
  const int cut_begin = cut < 0 ? end : cut;
  const int cut_end = cut < 0 ? end : cut + s.subtree_size(cut);
  std::vector<int> new_id(static_cast<std::size_t>(end - top), -1);
  for (int v = top; v < end; ++v) {
    if (v >= cut_begin && v < cut_end) continue;
    new_id[static_cast<std::size_t>(v - top)] = t.size();
    const int p = v == top ? -1 : s.parents()[static_cast<std::size_t>(v)];
    t.parent.push_back(p < 0 ? -1 : new_id[static_cast<std::size_t>(p - top)]);
  }
  return shape_of(t);
}

}  // namespace

OrbitDecomposition orbit_representatives(const RootedShape& s, int h) {
  // Two vertices share an orbit iff the subtree codes along their root paths agree level by
  // level; the first vertex in preorder represents each class.
  struct Entry {
    int rep;
    int count;
  };
  std::map<std::string, Entry> classes;
  std::vector<std::string> keys;
  keys.reserve(static_cast<std::size_t>(s.size()));
  std::vector<int> order;
  for (int v = 0; v < s.size(); ++v) {
    const int p = s.parents()[static_cast<std::size_t>(v)];
    std::string key = p < 0 ? std::string() : keys[static_cast<std::size_t>(p)] + "|";
    if (p >= 0) key.append(s.subtree_code(v));
    keys.push_back(key);
    if (s.depths()[static_cast<std::size_t>(v)] > h) continue;
    auto [it, inserted] = classes.try_emplace(key, Entry{v, 0});
    if (inserted) order.push_back(v);
    ++it->second.count;
  }

  OrbitDecomposition out;
  for (int v : order) {
    OrbitRepresentative rep;
    rep.vertex = v;
    rep.depth = s.depths()[static_cast<std::size_t>(v)];
    rep.orbit_size = classes.at(keys[static_cast<std::size_t>(v)]).count;
    std::vector<int> path;
    for (int u = v; u >= 0; u = s.parents()[static_cast<std::size_t>(u)]) path.push_back(u);
    std::reverse(path.begin(), path.end());
    rep.weight = 1;
    for (std::size_t i = 0; i < path.size(); ++i) {
      const int cut = i + 1 < path.size() ? path[i + 1] : -1;
      rep.spine_subtrees.push_back(hanging_subtree(s, path[i], cut));
      rep.weight /= Rational(rep.spine_subtrees.back().aut_count());
    }
    if (rep.depth == h) {
      out.boundary.push_back(std::move(rep));
    } else {
      out.interior.push_back(std::move(rep));
    }
  }
  return out;
}

std::vector<std::pair<RootedShape, int>> root_child_classes(const RootedShape& s) {
  std::vector<std::pair<RootedShape, int>> out;
  std::string_view previous;
  for (int v = 1; v < s.size(); ++v) {
    if (s.parents()[static_cast<std::size_t>(v)] != 0) continue;
    const std::string_view code = s.subtree_code(v);
    if (!out.empty() && code == previous) {
      ++out.back().second;
    } else {
      out.emplace_back(hanging_subtree(s, v, -1), 1);
      previous = code;
    }
  }
  return out;
}

BigInt brute_force_aut(const LabeledRootedTree& t) {
  const auto children = children_of(t);
  bfs_order(t, children);
  const int k = t.size();
  if (k > kBruteForceAutMaxSize) {
    throw std::invalid_argument("brute_force_aut: tree exceeds the size budget of " +
                                std::to_string(kBruteForceAutMaxSize));
  }
  std::vector<std::vector<char>> adjacent(static_cast<std::size_t>(k),
                                          std::vector<char>(static_cast<std::size_t>(k), 0));
  for (int v = 0; v < k; ++v) {
    const int p = t.parent[static_cast<std::size_t>(v)];
    if (p >= 0) {
      adjacent[static_cast<std::size_t>(v)][static_cast<std::size_t>(p)] = 1;
      adjacent[static_cast<std::size_t>(p)][static_cast<std::size_t>(v)] = 1;
    }
  }
  std::vector<int> others;
  for (int v = 0; v < k; ++v) {
    if (v != t.root) others.push_back(v);
  }
  std::vector<int> image = others;
  std::vector<int> perm(static_cast<std::size_t>(k));
  BigInt count = 0;
  do {
    perm[static_cast<std::size_t>(t.root)] = t.root;
    for (std::size_t i = 0; i < others.size(); ++i) perm[static_cast<std::size_t>(others[i])] = image[i];
    bool preserves = true;
    for (int u = 0; u < k && preserves; ++u) {
      for (int v = 0; v < k; ++v) {
        if (adjacent[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] !=
            adjacent[static_cast<std::size_t>(perm[static_cast<std::size_t>(u)])]
                    [static_cast<std::size_t>(perm[static_cast<std::size_t>(v)])]) {
          preserves = false;
          break;
        }
      }
    }
    if (preserves) ++count;
  } while (std::next_permutation(image.begin(), image.end()));
  return count;
}

std::vector<RootedShape> all_shapes(int max_size) { return all_shapes(max_size, max_size); }

std::vector<RootedShape> all_shapes(int max_size, int max_height) {
  std::vector<RootedShape> out;
  if (max_size < 1) return out;
  std::vector<RootedShape> layer{RootedShape()};
  for (int size = 1; size <= max_size; ++size) {
    out.insert(out.end(), layer.begin(), layer.end());
    if (size == max_size) break;
    std::set<std::string> next_codes;
    std::vector<RootedShape> next;
    for (const RootedShape& s : layer) {
      LabeledRootedTree t = s.to_labeled();
      for (int v = 0; v < s.size(); ++v) {
        if (s.depths()[static_cast<std::size_t>(v)] >= max_height) continue;
        t.parent.push_back(v);
        RootedShape grown = shape_of(t);
        t.parent.pop_back();
        if (next_codes.insert(grown.code()).second) next.push_back(std::move(grown));
      }
    }
    std::sort(next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

}  // namespace msf
