#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "msf/exact.hpp"
#include "msf/rng.hpp"
#include "msf/shape_law.hpp"
#include "msf/tree_shape.hpp"

namespace msf {

enum class RegimeKind { kSublinear, kLinear, kSuperlinear };

/// Growth of lambda_n relative to n. The schedules used for finite-n evaluation are
/// sqrt(n), alpha n and n^2 respectively.
struct LimitRegime {
  RegimeKind kind = RegimeKind::kLinear;
  double alpha = 1.0;  // only meaningful for kLinear

  static LimitRegime sublinear() { return {RegimeKind::kSublinear, 0.0}; }
  static LimitRegime linear(double alpha);
  static LimitRegime superlinear() { return {RegimeKind::kSuperlinear, 0.0}; }

  double lambda_for(double n) const;
  std::string name() const;
};

/// Spine tree parameters for T_alpha: offspring mean beta = 1/(1+alpha) and spine length law
/// P(L = m) = alpha / (1+alpha)^m on m >= 1.
struct SpineTreeParams {
  double alpha;

  explicit SpineTreeParams(double alpha);
  double beta() const { return 1.0 / (1.0 + alpha); }
  double spine_length_prob(int m) const;
  /// P(L >= m + 1): the spine reaches depth m.
  double spine_reaches(int depth) const;
};

/// P(BGWP(beta) truncated at h equals t) = beta^{|t|-1} exp(-beta |t_{<h}|) / |Aut(t)|.
double bgwp_pmf_truncated(double beta, const RootedShape& t, int h);

RootedShape sample_bgwp_truncated(double beta, int h, Rng& rng);
RootedShape sample_bgwp_truncated(double beta, int h, RngSeed seed);

RootedShape sample_T_alpha_truncated(double alpha, int h, Rng& rng);
RootedShape sample_T_alpha_truncated(double alpha, int h, RngSeed seed);

/// Critical BGWP(1) trees hung on a semi-infinite spine, truncated at h.
RootedShape sample_T0_truncated(int h, Rng& rng);
RootedShape sample_T0_truncated(int h, RngSeed seed);

/// Probability that the root component of the lambda-massive forest on K_n, truncated at h,
/// has shape t.
double shape_law_finite(const RootedShape& t, int h, double n, double lambda);
Rational shape_law_finite(const RootedShape& t, int h, int n, const Rational& lambda);

/// Probability that the truncated root component equals one fixed labeling of t.
double labeled_tree_prob(const RootedShape& t, int h, double n, double lambda);
Rational labeled_tree_prob(const RootedShape& t, int h, int n, const Rational& lambda);

double shape_law_limit(const RootedShape& t, int h, const LimitRegime& regime);

double shape_law_T_alpha(const RootedShape& t, int h, double alpha);

/// Law of the truncation of T_0 (the sublinear limit).
inline double shape_law_T0(const RootedShape& t, int h) {
  return shape_law_limit(t, h, LimitRegime::sublinear());
}

/// Tabulates `law(shape)` over every shape of height <= h with at most max_size vertices.
template <typename Law>
ShapeLaw tabulate(int h, int max_size, Law&& law) {
  ShapeLaw out;
  for (const RootedShape& s : all_shapes(max_size, h)) out.emplace(s.code(), law(s));
  return out;
}

struct InverseProgenyEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t overflowed = 0;  // trees that hit the node cap; excluded from the mean
  bool flagged = false;          // overflow rate above kOverflowFlagRate
};

inline constexpr std::uint64_t kProgenyNodeCap = 10'000'000;
inline constexpr double kOverflowFlagRate = 1e-4;

/// Monte Carlo estimate of E[1/|T_alpha|] from complete (untruncated) trees.
InverseProgenyEstimate inverse_progeny_mean(double alpha, std::uint64_t samples,
                                            std::uint64_t seed, int threads = 1);

}  // namespace msf
