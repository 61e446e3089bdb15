#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "msf/exact.hpp"
#include "msf/graph.hpp"

namespace msf {

/// A floating-point solve or determinant that failed its accuracy check.
/// Kept distinct from std::invalid_argument, which signals bad inputs.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Coefficients c_0..c_n of det(Laplacian + lambda I); c_k counts rooted spanning forests
/// with k trees.
struct CharPoly {
  std::vector<BigInt> coefficients;

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
  const BigInt& operator[](std::size_t k) const { return coefficients[k]; }
  Rational evaluate(const Rational& lambda) const;
  double evaluate(double lambda) const;
};

/// (Laplacian + lambda I)^{-1} for lambda > 0.
class ResolventMatrix {
 public:
  ResolventMatrix(Eigen::MatrixXd values, double lambda)
      : values_(std::move(values)), lambda_(lambda) {}

  double operator()(Vertex x, Vertex y) const { return values_(x, y); }
  const Eigen::MatrixXd& matrix() const { return values_; }
  double lambda() const { return lambda_; }
  int size() const { return static_cast<int>(values_.rows()); }

 private:
  Eigen::MatrixXd values_;
  double lambda_;
};

/// Edges required present (include) and required absent (exclude).
struct EdgeEvent {
  std::vector<EdgeIndex> include;
  std::vector<EdgeIndex> exclude;

  /// Throws std::invalid_argument on overlap, repeats or out-of-range ids.
  void validate(const Graph& g) const;
};

/// Fraction-free (Bareiss) determinant over arbitrary-precision integers.
BigInt exact_determinant(std::vector<std::vector<BigInt>> m);

CharPoly char_poly(const Graph& g);

ResolventMatrix resolvent(const Graph& g, double lambda);

double transfer_current(const ResolventMatrix& r, const Edge& e, const Edge& f);

/// Matrix K(e_i, e_j) over the listed edges, in order.
Eigen::MatrixXd transfer_current_matrix(const Graph& g, const ResolventMatrix& r,
                                        std::span<const EdgeIndex> edges);

double kn_resolvent_entry(int n, double lambda, bool diagonal);
double kn_transfer_current(int n, double lambda, const Edge& e, const Edge& f);

/// Survival probability mu = (n-1)/(n-1+lambda) of one step of the killed walk on K_n.
double kn_walk_survival(int n, double lambda);

/// Green's function sum_k mu^k P_x(X_k = y) of the uniform walk on K_n killed at rate 1-mu.
double kn_killed_walk_green(int n, double lambda, bool same_vertex);

/// Probability of a mixed include/exclude edge event, as a determinant of the transfer
/// current kernel.
double edge_event_prob(const Graph& g, double lambda, const EdgeEvent& ev);
double edge_event_prob(const Graph& g, const ResolventMatrix& r, const EdgeEvent& ev);

/// Probability that a fixed labeled tree on `shape_size` vertices lies in the forest on K_n.
double kn_tree_inclusion_prob(int shape_size, int n, double lambda);
Rational kn_tree_inclusion_prob(int shape_size, int n, const Rational& lambda);

/// Expected number of trees, lambda * trace(R).
double mean_component_count(const Graph& g, double lambda);

}  // namespace msf
