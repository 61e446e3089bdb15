#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "msf/tree_shape.hpp"

using namespace msf;

namespace {

RootedShape S(const char* code) { return RootedShape::from_code(code); }

LabeledRootedTree relabel(const LabeledRootedTree& t, const std::vector<int>& perm) {
  LabeledRootedTree out;
  out.parent.assign(t.parent.size(), -1);
  for (std::size_t v = 0; v < t.parent.size(); ++v) {
    const int p = t.parent[v];
    out.parent[static_cast<std::size_t>(perm[v])] = p < 0 ? -1 : perm[static_cast<std::size_t>(p)];
  }
  out.root = perm[static_cast<std::size_t>(t.root)];
  return out;
}

// Orbits of the root-fixing automorphism group, found by trying every permutation.
std::vector<std::vector<int>> brute_force_orbits(const LabeledRootedTree& t) {
  const int k = t.size();
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> orbit_id(static_cast<std::size_t>(k));
  std::iota(orbit_id.begin(), orbit_id.end(), 0);
  auto find = [&](int x) {
    while (orbit_id[static_cast<std::size_t>(x)] != x) x = orbit_id[static_cast<std::size_t>(x)];
    return x;
  };
  do {
    if (perm[static_cast<std::size_t>(t.root)] != t.root) continue;
    bool automorphism = true;
    for (int v = 0; v < k && automorphism; ++v) {
      const int p = t.parent[static_cast<std::size_t>(v)];
      const int image = p < 0 ? -1 : perm[static_cast<std::size_t>(p)];
      automorphism = t.parent[static_cast<std::size_t>(perm[static_cast<std::size_t>(v)])] == image;
    }
    if (!automorphism) continue;
    for (int v = 0; v < k; ++v) orbit_id[static_cast<std::size_t>(find(v))] = find(perm[static_cast<std::size_t>(v)]);
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::map<int, std::vector<int>> groups;
  for (int v = 0; v < k; ++v) groups[find(v)].push_back(v);
  std::vector<std::vector<int>> out;
  for (auto& [id, members] : groups) out.push_back(std::move(members));
  return out;
}

}  // namespace

TEST_CASE("canonical codes") {
  const RootedShape single;
  CHECK(single.code() == "()");
  CHECK(single.size() == 1);
  CHECK(single.height() == 0);
  CHECK(S("((()))") != S("(()())"));
  CHECK(S("((())())") == S("(()(()))"));
  CHECK(S("((())())").code() == "((())())");
  CHECK(S("(()(()))").code() == S("((())())").code());
  CHECK_THROWS(RootedShape::from_code(""));
  CHECK_THROWS(RootedShape::from_code("(()"));
  CHECK_THROWS(RootedShape::from_code("()()"));
  CHECK_THROWS(RootedShape::from_code("(x)"));
  const RootedShape t = S("((())())");
  CHECK(t.size() == 4);
  CHECK(t.height() == 2);
  CHECK(t.boundary_count() == 1);
  CHECK(t.depths()[0] == 0);
  CHECK(t.subtree_size(0) == 4);
  CHECK(t.subtree_code(0) == t.code());
}

TEST_CASE("shape_of") {
  CHECK(shape_of(LabeledRootedTree{{-1}, 0}).code() == "()");
  // path 0-1-2 rooted at an end and at the middle
  CHECK(shape_of(LabeledRootedTree{{-1, 0, 1}, 0}).code() == "((()))");
  CHECK(shape_of(LabeledRootedTree{{1, -1, 1}, 1}).code() == "(()())");
  CHECK_THROWS_AS(shape_of(LabeledRootedTree{{-1, 2, 1}, 0}), std::invalid_argument);
  CHECK_THROWS_AS(shape_of(LabeledRootedTree{{-1, 0}, 1}), std::invalid_argument);
  CHECK_THROWS_AS(shape_of(LabeledRootedTree{{-1, -1}, 0}), std::invalid_argument);
}

TEST_CASE("codes are invariant under relabeling") {
  std::mt19937_64 gen(12345);
  for (int tree = 0; tree < 20; ++tree) {
    LabeledRootedTree t;
    t.parent.push_back(-1);
    for (int v = 1; v < 10; ++v) t.parent.push_back(std::uniform_int_distribution<int>(0, v - 1)(gen));
    const std::string code = shape_of(t).code();
    CHECK(shape_of(shape_of(t).to_labeled()).code() == code);
    std::vector<int> perm(10);
    std::iota(perm.begin(), perm.end(), 0);
    for (int k = 0; k < 100; ++k) {
      std::shuffle(perm.begin(), perm.end(), gen);
      CHECK(shape_of(relabel(t, perm)).code() == code);
    }
  }
}

TEST_CASE("truncation") {
  CHECK(truncate(S("((()))"), 0).code() == "()");
  CHECK(truncate(S("((()))"), 1).code() == "(())");
  CHECK(truncate(S("((()))"), 5) == S("((()))"));
  for (const RootedShape& s : all_shapes(7)) {
    for (int h = 0; h <= 4; ++h) {
      for (int g = 0; g <= 4; ++g) CHECK(truncate(truncate(s, h), g) == truncate(s, std::min(h, g)));
    }
  }
}

TEST_CASE("automorphism counts") {
  CHECK(aut_count(S("()")) == 1);
  CHECK(aut_count(S("(()()())")) == 6);
  CHECK(aut_count(S("(()()()()())")) == 120);
  CHECK(aut_count(S("(()(()))")) == 1);
  CHECK(aut_count(S("(((()))((())))")) == 2);
  CHECK(aut_count(S("((()())(()()))")) == 8);
  CHECK(brute_force_aut(LabeledRootedTree{{-1}, 0}) == 1);
  CHECK(brute_force_aut(S("(()()()())").to_labeled()) == 24);
  CHECK_THROWS(brute_force_aut(S("(()()()()()()()()())").to_labeled()));
  // stars overflow 64-bit factorials
  std::string big = "(";
  for (int i = 0; i < 25; ++i) big += "()";
  big += ")";
  CHECK(aut_count(S(big.c_str())) == factorial(25));
}

TEST_CASE("boundary and interior") {
  auto bi = boundary_interior(S("()"), 1);
  CHECK(bi.boundary == 0);
  CHECK(bi.interior == 1);
  bi = boundary_interior(S("(())"), 1);
  CHECK(bi.boundary == 1);
  CHECK(bi.interior == 1);
  bi = boundary_interior(S("(()()())"), 1);
  CHECK(bi.boundary == 3);
  CHECK(bi.interior == 1);
  bi = boundary_interior(S("()"), 0);
  CHECK(bi.boundary == 1);
  CHECK(bi.interior == 0);
}

TEST_CASE("orbit representatives") {
  const RootedShape star = S("(()()())");
  const auto star_orbits = orbit_representatives(star, 1);
  REQUIRE(star_orbits.boundary.size() == 1);
  CHECK(star_orbits.boundary[0].orbit_size == 3);
  CHECK(Rational(aut_count(star)) * star_orbits.boundary[0].weight == 3);
  const auto single = orbit_representatives(S("()"), 1);
  CHECK(single.boundary.empty());
  REQUIRE(single.interior.size() == 1);
  CHECK(single.interior[0].weight == 1);
  const auto path = orbit_representatives(S("((()))"), 2);
  CHECK(path.boundary.size() == 1);
  CHECK(path.interior.size() == 2);
}

TEST_CASE("orbits agree with brute force") {
  for (const RootedShape& s : all_shapes(7)) {
    const auto orbits = brute_force_orbits(s.to_labeled());
    for (int h = 0; h <= s.height(); ++h) {
      std::multiset<int> boundary_sizes;
      std::multiset<int> interior_sizes;
      for (const auto& orbit : orbits) {
        const int depth = s.depths()[static_cast<std::size_t>(orbit.front())];
        if (depth == h) boundary_sizes.insert(static_cast<int>(orbit.size()));
        if (depth < h) interior_sizes.insert(static_cast<int>(orbit.size()));
      }
      const auto reps = orbit_representatives(s, h);
      std::multiset<int> got_boundary;
      std::multiset<int> got_interior;
      for (const auto& r : reps.boundary) {
        got_boundary.insert(r.orbit_size);
        CHECK(Rational(s.aut_count()) * r.weight == r.orbit_size);
      }
      for (const auto& r : reps.interior) {
        got_interior.insert(r.orbit_size);
        CHECK(Rational(s.aut_count()) * r.weight == r.orbit_size);
      }
      CHECK(got_boundary == boundary_sizes);
      CHECK(got_interior == interior_sizes);
    }
  }
}

TEST_CASE("exhaustive generation") {
  std::map<int, int> by_size;
  for (const RootedShape& s : all_shapes(8)) ++by_size[s.size()];
  CHECK(by_size == std::map<int, int>{{1, 1}, {2, 1}, {3, 2}, {4, 4}, {5, 9}, {6, 20}, {7, 48}, {8, 115}});
  for (const RootedShape& s : all_shapes(6, 1)) CHECK(s.height() <= 1);
  CHECK(all_shapes(6, 1).size() == 6);
  CHECK(all_shapes(4, 0).size() == 1);
  for (const RootedShape& s : all_shapes(8)) CHECK(s.aut_count() == brute_force_aut(s.to_labeled()));
}

TEST_CASE("root child classes") {
  const auto classes = root_child_classes(S("(()()(()))"));
  REQUIRE(classes.size() == 2);
  int leaves = 0;
  int edges = 0;
  for (const auto& [child, mult] : classes) {
    if (child.code() == "()") leaves = mult;
    if (child.code() == "(())") edges = mult;
  }
  CHECK(leaves == 2);
  CHECK(edges == 1);
  CHECK(root_child_classes(S("()")).empty());
}
