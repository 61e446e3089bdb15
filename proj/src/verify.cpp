#include "msf/verify.hpp"

#include <bit>
#include <cmath>
#include <functional>
#include <sstream>

#include "msf/forest_oracle.hpp"
#include "msf/limit_laws.hpp"
#include "msf/rng.hpp"
#include "msf/tree_shape.hpp"

namespace msf {

Graph random_multigraph(std::uint64_t seed, int min_vertices, int max_vertices, int max_edges) {
  Rng rng(RngSeed{seed, 0});
  const int n = min_vertices + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_vertices - min_vertices + 1)));
  const int m = n < 2 ? 0 : static_cast<int>(rng.below(static_cast<std::uint64_t>(max_edges + 1)));
  std::vector<Edge> edges;
  for (int i = 0; i < m; ++i) {
    const auto a = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
    auto b = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n - 1)));
    if (b >= a) ++b;
    edges.push_back({a, b});
  }
  return Graph(n, std::move(edges));
}

std::vector<EdgeEvent> all_edge_events(std::size_t edge_count, std::size_t max_specified) {
  std::vector<EdgeEvent> out;
  const std::uint32_t limit = std::uint32_t{1} << edge_count;
  for (std::uint32_t subset = 0; subset < limit; ++subset) {
    if (static_cast<std::size_t>(std::popcount(subset)) > max_specified) continue;
    std::vector<EdgeIndex> edges;
    for (std::size_t i = 0; i < edge_count; ++i) {
      if (subset & (std::uint32_t{1} << i)) edges.push_back(static_cast<EdgeIndex>(i));
    }
    const std::uint32_t patterns = std::uint32_t{1} << edges.size();
    for (std::uint32_t pattern = 0; pattern < patterns; ++pattern) {
      EdgeEvent ev;
      for (std::size_t j = 0; j < edges.size(); ++j) {
        (pattern & (std::uint32_t{1} << j) ? ev.include : ev.exclude).push_back(edges[j]);
      }
      out.push_back(std::move(ev));
    }
  }
  return out;
}

namespace {

class Suite {
 public:
  explicit Suite(std::string name) { result_.name = std::move(name); }

  void exact(bool ok, const std::function<std::string()>& describe) {
    ++result_.checks;
    if (!ok) fail(describe);
  }

  void close(double error, double tolerance, const std::function<std::string()>& describe) {
    ++result_.checks;
    if (!std::isfinite(error)) error = std::numeric_limits<double>::infinity();
    result_.max_error = std::max(result_.max_error, error);
    if (!(error <= tolerance)) fail(describe);
  }

  SuiteResult finish() { return std::move(result_); }

 private:
  void fail(const std::function<std::string()>& describe) {
    if (result_.passed) result_.first_counterexample = describe();
    result_.passed = false;
  }

  SuiteResult result_;
};

std::string describe_graph(const Graph& g) {
  std::ostringstream out;
  out << "n=" << g.vertex_count() << " edges=[";
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    out << (i ? " " : "") << g.edges()[i].tail << "-" << g.edges()[i].head;
  }
  out << "]";
  return out.str();
}

std::string describe_event(const EdgeEvent& ev) {
  std::ostringstream out;
  out << "include={";
  for (std::size_t i = 0; i < ev.include.size(); ++i) out << (i ? "," : "") << ev.include[i];
  out << "} exclude={";
  for (std::size_t i = 0; i < ev.exclude.size(); ++i) out << (i ? "," : "") << ev.exclude[i];
  out << "}";
  return out.str();
}

std::vector<Graph> matrix_forest_graphs(const VerifyOptions& o) {
  std::vector<Graph> graphs;
  for (int n = 1; n <= o.max_complete_n; ++n) graphs.push_back(complete_graph(n));
  for (int n = 3; n <= 8; ++n) graphs.push_back(cycle_graph(n));
  for (int i = 0; i < o.random_graphs; ++i) {
    graphs.push_back(random_multigraph(o.seed * 1000003 + static_cast<std::uint64_t>(i), 1, 7, 12));
  }
  return graphs;
}

const std::vector<Rational>& oracle_lambdas() {
  static const std::vector<Rational> values{Rational(1, 10), Rational(1), Rational(5)};
  return values;
}

SuiteResult matrix_forest_suite(const VerifyOptions& o) {
  Suite suite("matrix_forest");
  for (const Graph& g : matrix_forest_graphs(o)) {
    const CharPoly p = char_poly(g);
    const auto counts = rooted_forest_counts(g);
    suite.exact(p.coefficients == counts, [&] { return "char_poly != rooted forest counts on " + describe_graph(g); });
  }
  return suite.finish();
}

SuiteResult partition_function_suite(const VerifyOptions& o) {
  Suite suite("partition_function");
  for (int n = 1; n <= o.max_complete_n; ++n) {
    const Graph g = complete_graph(n);
    const CharPoly p = char_poly(g);
    const auto atoms = enumerate_forest_atoms(g);
    for (const Rational& lambda : oracle_lambdas()) {
      const ExactDistribution d(g, lambda, atoms);
      suite.exact(d.partition_function() == p.evaluate(lambda), [&] {
        return "Z != P(lambda) on K_" + std::to_string(n) + " lambda=" + to_string(lambda);
      });
    }
  }
  return suite.finish();
}

SuiteResult determinantal_suite(const VerifyOptions& o) {
  Suite suite("determinantal_events");
  for (int n = 4; n <= std::min(5, o.max_complete_n); ++n) {
    const Graph g = complete_graph(n);
    const auto atoms = enumerate_forest_atoms(g);
    const auto events = all_edge_events(g.edge_count(), 3);
    for (const Rational& lambda : oracle_lambdas()) {
      const ExactDistribution d(g, lambda, atoms);
      const ResolventMatrix r = resolvent(g, to_double(lambda));
      for (const EdgeEvent& ev : events) {
        const double det = edge_event_prob(g, r, ev);
        const double exact = to_double(exact_event_prob(d, ev));
        suite.close(std::abs(det - exact), o.tolerance, [&] {
          return "K_" + std::to_string(n) + " lambda=" + to_string(lambda) + " " + describe_event(ev);
        });
      }
    }
  }
  return suite.finish();
}

SuiteResult weinstein_aronszajn_suite(const VerifyOptions& o) {
  Suite suite("weinstein_aronszajn");
  for (int i = 0; i < o.random_graphs; ++i) {
    const Graph g = random_multigraph(o.seed * 7919 + static_cast<std::uint64_t>(i), 2, 8, 14);
    if (g.edge_count() == 0) continue;
    Rng rng(RngSeed{o.seed, static_cast<std::uint64_t>(i)});
    std::vector<EdgeIndex> removed;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      if (rng.uniform() < 0.4) removed.push_back(static_cast<EdgeIndex>(e));
    }
    for (double lambda : {0.1, 1.0, 5.0}) {
      Eigen::MatrixXd full = laplacian(g).cast<double>();
      full.diagonal().array() += lambda;
      Eigen::MatrixXd cut = laplacian(delete_edges(g, removed)).cast<double>();
      cut.diagonal().array() += lambda;
      const double ratio = cut.determinant() / full.determinant();
      const Eigen::MatrixXd b = oriented_incidence(g, removed).cast<double>();
      const ResolventMatrix r = resolvent(g, lambda);
      const auto p = static_cast<Eigen::Index>(removed.size());
      const Eigen::MatrixXd m = Eigen::MatrixXd::Identity(p, p) - b * r.matrix() * b.transpose();
      const double rhs = p == 0 ? 1.0 : m.determinant();
      suite.close(std::abs(ratio - rhs), 1e-9, [&] { return "determinant identity fails on " + describe_graph(g); });
    }
  }
  return suite.finish();
}

SuiteResult orientation_suite(const VerifyOptions& o) {
  Suite suite("orientation_invariance");
  for (int i = 0; i < o.random_graphs; ++i) {
    const Graph g = random_multigraph(o.seed * 104729 + static_cast<std::uint64_t>(i), 2, 6, 8);
    if (g.edge_count() == 0) continue;
    Rng rng(RngSeed{o.seed + 1, static_cast<std::uint64_t>(i)});
    std::vector<EdgeIndex> flipped;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      if (rng.uniform() < 0.5) flipped.push_back(static_cast<EdgeIndex>(e));
    }
    const Graph h = flip_edges(g, flipped);
    const ResolventMatrix rg = resolvent(g, 1.0);
    const ResolventMatrix rh = resolvent(h, 1.0);
    for (const EdgeEvent& ev : all_edge_events(std::min<std::size_t>(g.edge_count(), 6), 3)) {
      suite.close(std::abs(edge_event_prob(g, rg, ev) - edge_event_prob(h, rh, ev)), o.tolerance,
                  [&] { return "orientation flip changes " + describe_event(ev) + " on " + describe_graph(g); });
    }
  }
  return suite.finish();
}

SuiteResult kn_closed_form_suite(const VerifyOptions& o) {
  Suite suite("kn_closed_forms");
  for (int n = 2; n <= 50; ++n) {
    const Graph g = complete_graph(n);
    for (double lambda : {0.1, 1.0, 5.0}) {
      const ResolventMatrix r = resolvent(g, lambda);
      const double diag = kn_resolvent_entry(n, lambda, true);
      const double off = kn_resolvent_entry(n, lambda, false);
      double err = 0.0;
      for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) err = std::max(err, std::abs(r(x, y) - (x == y ? diag : off)));
      }
      suite.close(err, o.tolerance, [&] { return "resolvent closed form on K_" + std::to_string(n); });
      // one edge against every other edge covers all incidence patterns
      const Edge e = g.edge(0);
      double kerr = 0.0;
      for (const Edge& f : g.edges()) {
        kerr = std::max(kerr, std::abs(transfer_current(r, e, f) - kn_transfer_current(n, lambda, e, f)));
        const Edge rf{f.head, f.tail};
        kerr = std::max(kerr, std::abs(transfer_current(r, e, rf) - kn_transfer_current(n, lambda, e, rf)));
      }
      suite.close(kerr, o.tolerance, [&] { return "transfer current closed form on K_" + std::to_string(n); });
      const double mu = kn_walk_survival(n, lambda);
      const double gerr = std::max(std::abs(mu / (n - 1) * kn_killed_walk_green(n, lambda, true) - diag),
                                   std::abs(mu / (n - 1) * kn_killed_walk_green(n, lambda, false) - off));
      suite.close(gerr, o.tolerance, [&] { return "killed walk Green's function on K_" + std::to_string(n); });
    }
  }
  return suite.finish();
}

SuiteResult inclusion_suite(const VerifyOptions& o) {
  Suite suite("inclusion_probability");
  const std::vector<Rational> lambdas{Rational(1, 2), Rational(1), Rational(3)};
  for (int n = 1; n <= o.max_complete_n; ++n) {
    const Graph g = complete_graph(n);
    const auto atoms = enumerate_forest_atoms(g);
    for (const Rational& lambda : lambdas) {
      const ExactDistribution d(g, lambda, atoms);
      for (const ForestAtom& tree : atoms) {
        // labeled trees: forests with exactly one component of size >= 2
        const int size = std::popcount(tree.mask) + 1;
        if (tree.components != n - size + 1 || size > 5) continue;
        if (size > 1 && tree.size_product != size) continue;
        const Rational oracle = d.probability_where(
            [&](const ForestAtom& a) { return (a.mask & tree.mask) == tree.mask; });
        suite.exact(oracle == kn_tree_inclusion_prob(size, n, lambda), [&] {
          return "tree mask " + std::to_string(tree.mask) + " on K_" + std::to_string(n) +
                 " lambda=" + to_string(lambda);
        });
      }
    }
  }
  return suite.finish();
}

SuiteResult finite_shape_law_suite(const VerifyOptions& o) {
  Suite suite("finite_shape_law");
  const std::vector<Rational> lambdas{Rational(1, 2), Rational(1), Rational(3)};
  for (int n = 1; n <= o.max_complete_n; ++n) {
    const Graph g = complete_graph(n);
    const auto atoms = enumerate_forest_atoms(g);
    for (const Rational& lambda : lambdas) {
      const ExactDistribution d(g, lambda, atoms);
      for (int h = 0; h <= 2; ++h) {
        const ExactShapeLaw oracle = exact_root_component_shape_law(d, h);
        Rational total = 0;
        for (const RootedShape& t : all_shapes(n, h)) {
          const Rational formula = shape_law_finite(t, h, n, lambda);
          total += formula;
          auto it = oracle.find(t.code());
          const Rational expected = it == oracle.end() ? Rational(0) : it->second;
          suite.exact(formula == expected, [&] {
            return "shape " + t.code() + " h=" + std::to_string(h) + " K_" + std::to_string(n) +
                   " lambda=" + to_string(lambda) + ": formula " + to_string(formula) + " oracle " +
                   to_string(expected);
          });
        }
        suite.exact(total == 1, [&] { return "shape law does not sum to 1 on K_" + std::to_string(n); });
      }
    }
  }
  return suite.finish();
}

SuiteResult mean_components_suite(const VerifyOptions& o) {
  Suite suite("mean_components");
  for (int n = 1; n <= o.max_complete_n; ++n) {
    const Graph g = complete_graph(n);
    const auto atoms = enumerate_forest_atoms(g);
    for (const Rational& lambda : oracle_lambdas()) {
      const ExactDistribution d(g, lambda, atoms);
      const Rational expected = (lambda + 1) * n / (lambda + n);
      suite.exact(d.mean_components() == expected, [&] {
        return "oracle mean component count on K_" + std::to_string(n) + " lambda=" + to_string(lambda);
      });
    }
  }
  for (int n : {1, 2, 3, 10, 50, 100, 200}) {
    for (double lambda : {0.1, 1.0, 10.0}) {
      const double expected = (lambda + 1.0) * n / (lambda + n);
      suite.close(std::abs(mean_component_count(complete_graph(n), lambda) - expected), o.tolerance,
                  [&] { return "lambda tr R on K_" + std::to_string(n); });
    }
  }
  return suite.finish();
}

SuiteResult automorphism_suite() {
  Suite suite("automorphisms");
  for (const RootedShape& s : all_shapes(8)) {
    suite.exact(s.aut_count() == brute_force_aut(s.to_labeled()),
                [&] { return "aut_count differs from brute force on " + s.code(); });
  }
  return suite.finish();
}

SuiteResult burnside_suite() {
  Suite suite("burnside");
  for (const RootedShape& s : all_shapes(8)) {
    for (int h = 0; h <= s.height(); ++h) {
      const auto orbits = orbit_representatives(s, h);
      const auto bi = boundary_interior(s, h);
      Rational boundary = 0;
      for (const auto& rep : orbits.boundary) boundary += Rational(s.aut_count()) * rep.weight;
      Rational interior = 0;
      for (const auto& rep : orbits.interior) interior += Rational(s.aut_count()) * rep.weight;
      suite.exact(boundary == bi.boundary && interior == bi.interior, [&] {
        return "orbit counting identity fails on " + s.code() + " h=" + std::to_string(h);
      });
    }
  }
  return suite.finish();
}

SuiteResult bgwp_recursion_suite() {
  Suite suite("bgwp_recursion");
  for (const RootedShape& t : all_shapes(6)) {
    for (double beta : {0.2, 0.5, 0.8, 1.0}) {
      for (int h = std::max(1, t.height()); h <= t.height() + 1; ++h) {
        double rhs = std::exp(-beta);
        for (const auto& [child, mult] : root_child_classes(t)) {
          rhs *= std::pow(beta * bgwp_pmf_truncated(beta, child, h - 1), mult) / to_double(factorial(mult));
        }
        const double lhs = bgwp_pmf_truncated(beta, t, h);
        suite.close(std::abs(lhs - rhs), 1e-12, [&] {
          return "first-generation recursion fails on " + t.code() + " h=" + std::to_string(h);
        });
      }
    }
  }
  return suite.finish();
}

SuiteResult spine_suite() {
  Suite suite("spine_decomposition");
  for (const RootedShape& t : all_shapes(6)) {
    for (double alpha : {0.25, 1.0, 4.0}) {
      const SpineTreeParams params(alpha);
      const double beta = params.beta();
      for (int h = t.height(); h <= t.height() + 1; ++h) {
        const auto orbits = orbit_representatives(t, h);
        auto hanging = [&](const OrbitRepresentative& rep) {
          double prod = 1.0;
          for (std::size_t i = 0; i < rep.spine_subtrees.size(); ++i) {
            prod *= bgwp_pmf_truncated(beta, rep.spine_subtrees[i], h - static_cast<int>(i));
          }
          return prod;
        };
        double total = 0.0;
        for (const auto& rep : orbits.boundary) total += hanging(rep) * params.spine_reaches(h);
        for (const auto& rep : orbits.interior) total += hanging(rep) * params.spine_length_prob(rep.depth + 1);
        suite.close(std::abs(total - shape_law_T_alpha(t, h, alpha)), 1e-12, [&] {
          return "spine decomposition fails on " + t.code() + " h=" + std::to_string(h);
        });
      }
    }
  }
  return suite.finish();
}

}  // namespace

VerifyReport run_verification(const VerifyOptions& options) {
  VerifyReport report;
  report.suites.push_back(matrix_forest_suite(options));
  report.suites.push_back(partition_function_suite(options));
  report.suites.push_back(determinantal_suite(options));
  report.suites.push_back(weinstein_aronszajn_suite(options));
  report.suites.push_back(orientation_suite(options));
  report.suites.push_back(kn_closed_form_suite(options));
  report.suites.push_back(inclusion_suite(options));
  report.suites.push_back(finite_shape_law_suite(options));
  report.suites.push_back(mean_components_suite(options));
  report.suites.push_back(automorphism_suite());
  report.suites.push_back(burnside_suite());
  report.suites.push_back(bgwp_recursion_suite());
  report.suites.push_back(spine_suite());
  for (const auto& s : report.suites) {
    report.passed = report.passed && s.passed;
    report.max_error = std::max(report.max_error, s.max_error);
  }
  return report;
}

nlohmann::json to_json(const VerifyReport& report) {
  nlohmann::json suites = nlohmann::json::array();
  for (const auto& s : report.suites) {
    nlohmann::json entry{{"name", s.name}, {"passed", s.passed}, {"checks", s.checks}, {"max_error", s.max_error}};
    if (!s.passed) entry["first_counterexample"] = s.first_counterexample;
    suites.push_back(std::move(entry));
  }
  return {{"passed", report.passed}, {"max_error", report.max_error}, {"suites", std::move(suites)}};
}

}  // namespace msf
