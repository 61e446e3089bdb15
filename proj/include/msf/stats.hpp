#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "msf/limit_laws.hpp"
#include "msf/sampler.hpp"
#include "msf/shape_law.hpp"
#include "msf/tree_shape.hpp"

namespace msf {

/// Histogram key that absorbs shapes missing from a law table.
inline const std::string kOtherBin = "OTHER";

/// Counts per canonical code. Histograms merge as a commutative monoid.
struct ShapeHistogram {
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t total = 0;
  nlohmann::json metadata = nlohmann::json::object();

  void add(const std::string& code, std::uint64_t count = 1);
  void merge(const ShapeHistogram& other);
  double frequency(const std::string& code) const;
};

/// Shape of vertex 0's component in a sampled forest, truncated at h.
RootedShape root_component_shape(const RootedForestSample& s, int h);

ShapeHistogram histogram_root_component(std::span<const RootedForestSample> samples, int h);

/// Histogram built from exact probabilities scaled by `total` (counts rounded to nearest).
ShapeHistogram histogram_from_law(const ShapeLaw& law, std::uint64_t total);

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  bool bins_merged = false;
  double p_value = 1.0;
};

struct ComparisonRow {
  std::string code;
  std::uint64_t observed = 0;
  double empirical = 0.0;
  double expected = 0.0;
  double gap = 0.0;  // empirical - expected
};

struct ComparisonReport {
  double tv_distance = 0.0;
  ChiSquareResult chi_square;
  double max_abs_gap = 0.0;
  std::vector<ComparisonRow> rows;  // law codes, then OTHER
};

inline constexpr double kChiSquareMinExpected = 5.0;

/// Total variation and chi-square of a histogram against a (possibly partial) law.
/// Shapes absent from the law go to OTHER, whose law mass is 1 - sum(law).
/// Throws std::invalid_argument if the law's listed mass exceeds 1.
ComparisonReport compare(const ShapeHistogram& hist, const ShapeLaw& law);

/// Total variation between two normalized histograms.
double tv_distance(const ShapeHistogram& a, const ShapeHistogram& b);

/// Upper quantile of the chi-square distribution, e.g. 0.999.
double chi_square_quantile(int dof, double probability);

struct ConvergenceRow {
  std::string code;
  double n = 0.0;
  double lambda = 0.0;
  double finite = 0.0;
  double limit = 0.0;
  double gap = 0.0;
};

/// For each shape and each n, finite-n law at lambda_n versus the regime's limit.
std::vector<ConvergenceRow> convergence_table(std::span<const RootedShape> shapes, int h,
                                              const LimitRegime& regime,
                                              std::span<const double> n_grid);

/// True when, per shape, each gap is at most (1 + slack) times the previous one.
bool gaps_non_increasing(std::span<const ConvergenceRow> rows, double slack);

std::string convergence_csv(std::span<const ConvergenceRow> rows);

/// Per-shape (n, finite value) series plus the limit value, for external plotting.
nlohmann::json plot_data(std::span<const ConvergenceRow> rows);

nlohmann::json to_json(const ShapeHistogram& hist);
nlohmann::json to_json(const ComparisonReport& report);

}  // namespace msf
