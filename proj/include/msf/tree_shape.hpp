#pragma once

#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "msf/exact.hpp"

namespace msf {

/// Rooted tree on vertices 0..k-1; parent[root] == -1.
struct LabeledRootedTree {
  std::vector<int> parent;
  int root = 0;

  int size() const { return static_cast<int>(parent.size()); }
};

/// Isomorphism class of a finite rooted unlabeled non-planar tree.
///
/// The canonical code is a bracket sequence: a vertex is "(" followed by the codes of its
/// children in lexicographic order, then ")". The singleton is "()". Codes are equal iff the
/// trees are isomorphic as rooted trees, so they serve directly as map keys and as the
/// serialized form.
///
/// Vertices are numbered in preorder of the canonical code; vertex 0 is the root.
class RootedShape {
 public:
  RootedShape();  // singleton

  /// Accepts any well-formed bracket sequence and canonicalizes it.
  static RootedShape from_code(std::string_view code);

  const std::string& code() const { return code_; }
  int size() const { return static_cast<int>(parent_.size()); }
  int height() const { return height_; }
  /// Number of vertices at distance height() from the root.
  int boundary_count() const { return boundary_count_; }
  const BigInt& aut_count() const { return aut_; }

  std::span<const int> parents() const { return parent_; }
  std::span<const int> depths() const { return depth_; }
  int subtree_size(int v) const { return subtree_size_[static_cast<std::size_t>(v)]; }
  /// Canonical code of the subtree hanging at preorder vertex v.
  std::string_view subtree_code(int v) const;

  LabeledRootedTree to_labeled() const;

  friend bool operator==(const RootedShape& a, const RootedShape& b) { return a.code_ == b.code_; }
  friend std::strong_ordering operator<=>(const RootedShape& a, const RootedShape& b) {
    return a.code_ <=> b.code_;
  }

 private:
  explicit RootedShape(std::string canonical_code);

  std::string code_;
  std::vector<int> parent_;
  std::vector<int> depth_;
  std::vector<int> subtree_size_;
  std::vector<int> open_pos_;
  int height_ = 0;
  int boundary_count_ = 1;
  BigInt aut_ = 1;

  friend RootedShape shape_of(const LabeledRootedTree& t);
};

/// Canonical shape of a labeled rooted tree (AHU child-code sorting).
/// Throws std::invalid_argument unless t is a single tree rooted at t.root.
RootedShape shape_of(const LabeledRootedTree& t);

/// Ball of radius h around the root.
RootedShape truncate(const RootedShape& s, int h);

/// Order of the root-preserving automorphism group.
BigInt aut_count(const RootedShape& s);

struct BoundaryInterior {
  int boundary = 0;  // vertices at distance exactly h
  int interior = 0;  // vertices at distance < h
};

BoundaryInterior boundary_interior(const RootedShape& s, int h);

/// One vertex v per Aut(t)-orbit together with its root path decomposition.
struct OrbitRepresentative {
  int vertex = 0;  // preorder id in the shape
  int depth = 0;
  int orbit_size = 0;
  /// spine_subtrees[i]: subtree at the i-th vertex of the root-to-v path, with the branch that
  /// continues the path removed (the last entry is the full subtree at v).
  std::vector<RootedShape> spine_subtrees;
  /// prod_i 1 / |Aut(spine_subtrees[i])|
  Rational weight;
};

struct OrbitDecomposition {
  std::vector<OrbitRepresentative> boundary;  // orbits of t_h
  std::vector<OrbitRepresentative> interior;  // orbits of t_{<h}
};

OrbitDecomposition orbit_representatives(const RootedShape& s, int h);

/// Subtrees hanging at the root's children, grouped by isomorphism class: (class, multiplicity).
std::vector<std::pair<RootedShape, int>> root_child_classes(const RootedShape& s);

/// Counts root-fixing vertex permutations that preserve the edge set. Size budget: 9 vertices.
BigInt brute_force_aut(const LabeledRootedTree& t);

inline constexpr int kBruteForceAutMaxSize = 9;

/// Every rooted shape with at most max_size vertices, grouped by size then code.
std::vector<RootedShape> all_shapes(int max_size);

/// Every rooted shape with at most max_size vertices and height at most max_height.
std::vector<RootedShape> all_shapes(int max_size, int max_height);

}  // namespace msf
