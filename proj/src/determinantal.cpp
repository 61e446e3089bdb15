#include "msf/determinantal.hpp"

#include <algorithm>
#include <cmath>

namespace msf {

namespace {

constexpr double kResidualTolerance = 1e-10;
constexpr double kProbabilityTolerance = 1e-10;

void require_positive_lambda(double lambda, const char* where) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument(std::string(where) + ": lambda must be positive and finite");
  }
}

void require_kn(int n, const char* where) {
  if (n < 2) throw std::invalid_argument(std::string(where) + ": needs n >= 2");
}

}  // namespace

Rational CharPoly::evaluate(const Rational& lambda) const {
  Rational acc = 0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
    acc = acc * lambda + Rational(*it);
  }
  return acc;
}

double CharPoly::evaluate(double lambda) const {
  double acc = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
    acc = acc * lambda + to_double(*it);
  }
  return acc;
}

void EdgeEvent::validate(const Graph& g) const {
  std::vector<char> seen(g.edge_count(), 0);
  auto check = [&](EdgeIndex i) {
    if (i < 0 || static_cast<std::size_t>(i) >= g.edge_count()) {
      throw std::invalid_argument("event edge " + std::to_string(i) + " out of range");
    }
    if (seen[static_cast<std::size_t>(i)]) {
      throw std::invalid_argument("event edge " + std::to_string(i) + " listed twice");
    }
    seen[static_cast<std::size_t>(i)] = 1;
  };
  for (EdgeIndex i : include) check(i);
  for (EdgeIndex i : exclude) check(i);
}

BigInt exact_determinant(std::vector<std::vector<BigInt>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  BigInt sign = 1;
  BigInt previous_pivot = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / previous_pivot;
      }
    }
    previous_pivot = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

CharPoly char_poly(const Graph& g) {
  const int n = g.vertex_count();
  const IntMatrix lap = laplacian(g);

  // Values P(0), ..., P(n) from exact determinants.
  std::vector<BigInt> values;
  values.reserve(static_cast<std::size_t>(n) + 1);
  for (int x = 0; x <= n; ++x) {
    std::vector<std::vector<BigInt>> m(static_cast<std::size_t>(n),
                                       std::vector<BigInt>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            lap(i, j) + (i == j ? x : 0);
      }
    }
    values.push_back(exact_determinant(std::move(m)));
  }

  // Newton forward differences: P(x) = sum_k (D^k P(0) / k!) * x(x-1)...(x-k+1).
  std::vector<BigInt> diffs = values;
  std::vector<BigInt> newton;
  newton.reserve(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    newton.push_back(diffs[0] / factorial(static_cast<std::int64_t>(k)));
    for (std::size_t i = 0; i + 1 < diffs.size() - k; ++i) diffs[i] = diffs[i + 1] - diffs[i];
  }

  std::vector<BigInt> coefficients(values.size(), 0);
  std::vector<BigInt> basis{1};  // falling factorial x(x-1)...(x-k+1) in monomial form
  for (std::size_t k = 0; k < newton.size(); ++k) {
    for (std::size_t d = 0; d < basis.size(); ++d) coefficients[d] += newton[k] * basis[d];
    std::vector<BigInt> next(basis.size() + 1, 0);
    for (std::size_t d = 0; d < basis.size(); ++d) {
      next[d + 1] += basis[d];
      next[d] -= basis[d] * static_cast<std::int64_t>(k);
    }
    basis = std::move(next);
  }
  return CharPoly{std::move(coefficients)};
}

ResolventMatrix resolvent(const Graph& g, double lambda) {
  require_positive_lambda(lambda, "resolvent");
  const int n = g.vertex_count();
  Eigen::MatrixXd a = laplacian(g).cast<double>();
  a.diagonal().array() += lambda;
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("resolvent: Cholesky factorization failed");
  }
  Eigen::MatrixXd r = llt.solve(Eigen::MatrixXd::Identity(n, n));
  r = 0.5 * (r + r.transpose()).eval();
  const double residual = (a * r - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (!(residual < kResidualTolerance)) {
    throw NumericalError("resolvent: residual " + std::to_string(residual) +
                         " exceeds tolerance");
  }
  return ResolventMatrix(std::move(r), lambda);
}

double transfer_current(const ResolventMatrix& r, const Edge& e, const Edge& f) {
  return r(e.tail, f.tail) + r(e.head, f.head) - r(e.tail, f.head) - r(e.head, f.tail);
}

Eigen::MatrixXd transfer_current_matrix(const Graph& g, const ResolventMatrix& r,
                                        std::span<const EdgeIndex> edges) {
  const auto p = static_cast<Eigen::Index>(edges.size());
  Eigen::MatrixXd k(p, p);
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) {
      k(i, j) = transfer_current(r, g.edge(edges[static_cast<std::size_t>(i)]),
                                 g.edge(edges[static_cast<std::size_t>(j)]));
    }
  }
  return k;
}

double kn_resolvent_entry(int n, double lambda, bool diagonal) {
  require_kn(n, "kn_resolvent_entry");
  require_positive_lambda(lambda, "kn_resolvent_entry");
  const double scale = lambda * (n + lambda);
  return diagonal ? (1.0 + lambda) / scale : 1.0 / scale;
}

double kn_transfer_current(int n, double lambda, const Edge& e, const Edge& f) {
  require_kn(n, "kn_transfer_current");
  if (!(lambda >= 0.0)) throw std::invalid_argument("kn_transfer_current: lambda must be >= 0");
  const int indicators = (e.tail == f.tail) + (e.head == f.head) - (e.tail == f.head) -
                         (e.head == f.tail);
  return indicators / (n + lambda);
}

double kn_walk_survival(int n, double lambda) {
  require_kn(n, "kn_walk_survival");
  return (n - 1.0) / (n - 1.0 + lambda);
}

double kn_killed_walk_green(int n, double lambda, bool same_vertex) {
  require_kn(n, "kn_killed_walk_green");
  require_positive_lambda(lambda, "kn_killed_walk_green");
  const double off = (n - 1.0 + lambda) / (lambda * (n + lambda));
  return same_vertex ? 1.0 + kn_walk_survival(n, lambda) * off : off;
}

double edge_event_prob(const Graph& g, double lambda, const EdgeEvent& ev) {
  require_positive_lambda(lambda, "edge_event_prob");
  ev.validate(g);
  return edge_event_prob(g, resolvent(g, lambda), ev);
}

double edge_event_prob(const Graph& g, const ResolventMatrix& r, const EdgeEvent& ev) {
  ev.validate(g);
  std::vector<EdgeIndex> edges = ev.include;
  edges.insert(edges.end(), ev.exclude.begin(), ev.exclude.end());
  if (edges.empty()) return 1.0;

  Eigen::MatrixXd m = transfer_current_matrix(g, r, edges);
  const auto k = static_cast<Eigen::Index>(ev.include.size());
  for (Eigen::Index i = k; i < m.rows(); ++i) {
    m.row(i) = -m.row(i);
    m(i, i) += 1.0;
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  const double det = lu.determinant();
  if (!std::isfinite(det)) throw NumericalError("edge_event_prob: non-finite determinant");
  if (det < -kProbabilityTolerance || det > 1.0 + kProbabilityTolerance) {
    throw NumericalError("edge_event_prob: determinant " + std::to_string(det) +
                         " is not a probability");
  }
  return std::clamp(det, 0.0, 1.0);
}

double kn_tree_inclusion_prob(int shape_size, int n, double lambda) {
  if (shape_size < 1 || shape_size > n) {
    throw std::invalid_argument("kn_tree_inclusion_prob: need 1 <= |t| <= n");
  }
  if (!(lambda >= 0.0)) throw std::invalid_argument("kn_tree_inclusion_prob: lambda must be >= 0");
  return shape_size / std::pow(n + lambda, shape_size - 1);
}

Rational kn_tree_inclusion_prob(int shape_size, int n, const Rational& lambda) {
  if (shape_size < 1 || shape_size > n) {
    throw std::invalid_argument("kn_tree_inclusion_prob: need 1 <= |t| <= n");
  }
  if (lambda < 0) throw std::invalid_argument("kn_tree_inclusion_prob: lambda must be >= 0");
  return Rational(shape_size) / pow(Rational(n) + lambda, shape_size - 1);
}

double mean_component_count(const Graph& g, double lambda) {
  return lambda * resolvent(g, lambda).matrix().trace();
}

}  // namespace msf
