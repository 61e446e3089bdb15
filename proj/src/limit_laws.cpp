#include "msf/limit_laws.hpp"

#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "msf/parallel.hpp"

namespace msf {

LimitRegime LimitRegime::linear(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("linear regime needs alpha > 0");
  return {RegimeKind::kLinear, alpha};
}

double LimitRegime::lambda_for(double n) const {
  switch (kind) {
    case RegimeKind::kSublinear:
      return std::sqrt(n);
    case RegimeKind::kLinear:
      return alpha * n;
    case RegimeKind::kSuperlinear:
      return n * n;
  }
  return 0.0;
}

std::string LimitRegime::name() const {
  switch (kind) {
    case RegimeKind::kSublinear:
      return "sublinear";
    case RegimeKind::kLinear:
      return "linear";
    case RegimeKind::kSuperlinear:
      return "superlinear";
  }
  return "?";
}

SpineTreeParams::SpineTreeParams(double a) : alpha(a) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be positive");
}

double SpineTreeParams::spine_length_prob(int m) const {
  if (m < 1) return 0.0;
  return alpha / std::pow(1.0 + alpha, m);
}

double SpineTreeParams::spine_reaches(int depth) const { return std::pow(1.0 + alpha, -depth); }

namespace {

void require_height(const RootedShape& t, int h) {
  if (h < 0) throw std::invalid_argument("height must be >= 0");
  if (t.height() > h) {
    throw std::invalid_argument("shape " + t.code() + " is taller than the truncation height " +
                                std::to_string(h));
  }
}

struct FiniteTerms {
  int size;
  int boundary;
  int interior;
};

FiniteTerms finite_terms(const RootedShape& t, int h, double n) {
  require_height(t, h);
  if (t.size() > n) throw std::invalid_argument("shape has more vertices than the graph");
  const auto bi = boundary_interior(t, h);
  return {t.size(), bi.boundary, bi.interior};
}

/// Grows independent Poisson(beta) families below `top` (at depth `depth`) down to depth h.
void grow_bgwp(std::vector<int>& parent, int top, int depth, int h,
               std::poisson_distribution<int>& offspring, Rng& rng) {
  std::vector<std::pair<int, int>> frontier{{top, depth}};
  while (!frontier.empty()) {
    auto [v, d] = frontier.back();
    frontier.pop_back();
    if (d >= h) continue;
    const int kids = offspring(rng);
    for (int i = 0; i < kids; ++i) {
      parent.push_back(v);
      frontier.emplace_back(static_cast<int>(parent.size()) - 1, d + 1);
    }
  }
}

/// Spine of `spine_vertices` vertices from the root, each carrying an extra BGWP(beta).
RootedShape spine_tree(int spine_vertices, double beta, int h, Rng& rng) {
  std::vector<int> parent{-1};
  const int kept = std::min(spine_vertices, h + 1);
  for (int d = 1; d < kept; ++d) parent.push_back(d - 1);
  std::poisson_distribution<int> offspring(beta);
  for (int d = 0; d < kept; ++d) grow_bgwp(parent, d, d, h, offspring, rng);
  return shape_of(LabeledRootedTree{std::move(parent), 0});
}

}  // namespace

double bgwp_pmf_truncated(double beta, const RootedShape& t, int h) {
  require_height(t, h);
  if (!(beta > 0.0) || beta > 1.0) throw std::invalid_argument("beta must lie in (0, 1]");
  const auto bi = boundary_interior(t, h);
  return std::pow(beta, t.size() - 1) * std::exp(-beta * bi.interior) / to_double(t.aut_count());
}

RootedShape sample_bgwp_truncated(double beta, int h, Rng& rng) {
  if (!(beta > 0.0) || beta > 1.0) throw std::invalid_argument("beta must lie in (0, 1]");
  if (h < 0) throw std::invalid_argument("height must be >= 0");
  std::vector<int> parent{-1};
  std::poisson_distribution<int> offspring(beta);
  grow_bgwp(parent, 0, 0, h, offspring, rng);
  return shape_of(LabeledRootedTree{std::move(parent), 0});
}

RootedShape sample_bgwp_truncated(double beta, int h, RngSeed seed) {
  Rng rng(seed);
  return sample_bgwp_truncated(beta, h, rng);
}

RootedShape sample_T_alpha_truncated(double alpha, int h, Rng& rng) {
  const SpineTreeParams params(alpha);
  if (h < 0) throw std::invalid_argument("height must be >= 0");
  // failures before the first success, so L = 1 + failures has P(L = m) = alpha/(1+alpha)^m
  std::geometric_distribution<long long> failures(alpha / (1.0 + alpha));
  const long long length = 1 + failures(rng);
  const int spine = static_cast<int>(std::min<long long>(length, static_cast<long long>(h) + 1));
  return spine_tree(spine, params.beta(), h, rng);
}

RootedShape sample_T_alpha_truncated(double alpha, int h, RngSeed seed) {
  Rng rng(seed);
  return sample_T_alpha_truncated(alpha, h, rng);
}

RootedShape sample_T0_truncated(int h, Rng& rng) {
  if (h < 0) throw std::invalid_argument("height must be >= 0");
  return spine_tree(h + 1, 1.0, h, rng);
}

RootedShape sample_T0_truncated(int h, RngSeed seed) {
  Rng rng(seed);
  return sample_T0_truncated(h, rng);
}

double labeled_tree_prob(const RootedShape& t, int h, double n, double lambda) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be >= 0");
  const auto [size, boundary, interior] = finite_terms(t, h, n);
  const double mass = n + lambda;
  if (!(interior < mass)) throw std::invalid_argument("|t_{<h}| must be below n + lambda");
  return (n * boundary + lambda * size) / std::pow(mass, size) *
         std::pow(1.0 - interior / mass, n - size - 1.0);
}

Rational labeled_tree_prob(const RootedShape& t, int h, int n, const Rational& lambda) {
  if (lambda < 0) throw std::invalid_argument("lambda must be >= 0");
  const auto [size, boundary, interior] = finite_terms(t, h, n);
  const Rational mass = Rational(n) + lambda;
  if (!(Rational(interior) < mass)) throw std::invalid_argument("|t_{<h}| must be below n + lambda");
  return (Rational(n * boundary) + lambda * size) / pow(mass, size) *
         pow(Rational(1) - Rational(interior) / mass, n - size - 1);
}

double shape_law_finite(const RootedShape& t, int h, double n, double lambda) {
  const double labeled = labeled_tree_prob(t, h, n, lambda);
  // (n-1)!/(n-|t|)! labelings of the non-root vertices
  double labelings = 1.0;
  for (int i = 1; i < t.size(); ++i) labelings *= (n - i);
  return labeled * labelings / to_double(t.aut_count());
}

Rational shape_law_finite(const RootedShape& t, int h, int n, const Rational& lambda) {
  const Rational labeled = labeled_tree_prob(t, h, n, lambda);
  return labeled * Rational(falling_factorial(n - 1, t.size() - 1)) / Rational(t.aut_count());
}

double shape_law_limit(const RootedShape& t, int h, const LimitRegime& regime) {
  require_height(t, h);
  const auto bi = boundary_interior(t, h);
  switch (regime.kind) {
    case RegimeKind::kSublinear:
      return bi.boundary / to_double(t.aut_count()) * std::exp(-static_cast<double>(bi.interior));
    case RegimeKind::kLinear:
      return shape_law_T_alpha(t, h, regime.alpha);
    case RegimeKind::kSuperlinear:
      return t.size() == 1 ? 1.0 : 0.0;
  }
  return 0.0;
}

double shape_law_T_alpha(const RootedShape& t, int h, double alpha) {
  require_height(t, h);
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  const auto bi = boundary_interior(t, h);
  return (bi.boundary + alpha * t.size()) / to_double(t.aut_count()) *
         std::pow(1.0 + alpha, -t.size()) * std::exp(-bi.interior / (1.0 + alpha));
}

InverseProgenyEstimate inverse_progeny_mean(double alpha, std::uint64_t samples,
                                            std::uint64_t seed, int threads) {
  const SpineTreeParams params(alpha);
  if (samples == 0) throw std::invalid_argument("inverse_progeny_mean needs samples > 0");
  // Progeny sizes are tallied exactly so the estimate does not depend on how the batch is split.
  struct Acc {
    std::map<std::uint64_t, std::uint64_t> sizes;
    std::uint64_t overflowed = 0;
  };
  const double beta = params.beta();
  const double p = alpha / (1.0 + alpha);
  Acc acc = parallel_accumulate(
      samples, threads, [] { return Acc{}; },
      [&](Acc& a, std::uint64_t i) {
        Rng rng(RngSeed{seed, i});
        std::geometric_distribution<long long> failures(p);
        std::poisson_distribution<long long> offspring(beta);
        long long spine = 1 + failures(rng);
        std::uint64_t nodes = 0;
        // Each spine vertex roots its own BGWP(beta) family.
        long long pending = spine;
        while (pending > 0 && nodes < kProgenyNodeCap) {
          --pending;
          ++nodes;
          pending += offspring(rng);
        }
        if (pending > 0) {
          ++a.overflowed;
          return;
        }
        ++a.sizes[nodes];
      },
      [](Acc& into, const Acc& from) {
        for (const auto& [size, c] : from.sizes) into.sizes[size] += c;
        into.overflowed += from.overflowed;
      });
  InverseProgenyEstimate out;
  out.samples = samples;
  out.overflowed = acc.overflowed;
  out.flagged = static_cast<double>(acc.overflowed) > kOverflowFlagRate * static_cast<double>(samples);
  double sum = 0.0;
  double sum_sq = 0.0;
  std::uint64_t used = 0;
  for (const auto& [size, c] : acc.sizes) {
    const double x = 1.0 / static_cast<double>(size);
    sum += static_cast<double>(c) * x;
    sum_sq += static_cast<double>(c) * x * x;
    used += c;
  }
  if (used > 0) {
    const double m = sum / static_cast<double>(used);
    const double var = std::max(0.0, sum_sq / static_cast<double>(used) - m * m);
    out.mean = m;
    out.standard_error = std::sqrt(var / static_cast<double>(used));
  }
  return out;
}

}  // namespace msf
