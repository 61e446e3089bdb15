#include "msf/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

namespace msf {

void ShapeHistogram::add(const std::string& code, std::uint64_t count) {
  counts[code] += count;
  total += count;
}

void ShapeHistogram::merge(const ShapeHistogram& other) {
  for (const auto& [code, c] : other.counts) counts[code] += c;
  total += other.total;
}

double ShapeHistogram::frequency(const std::string& code) const {
  if (total == 0) return 0.0;
  auto it = counts.find(code);
  return it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(total);
}

RootedShape root_component_shape(const RootedForestSample& s, int h) {
  if (h < 0) throw std::invalid_argument("height must be >= 0");
  const int n = s.vertex_count();
  // children lists from the parent map; the root component is undirected, so walk both ways
  std::vector<std::vector<Vertex>> adjacency(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) {
    const Vertex p = s.parent[static_cast<std::size_t>(v)];
    if (p == kRootMarker) continue;
    adjacency[static_cast<std::size_t>(v)].push_back(p);
    adjacency[static_cast<std::size_t>(p)].push_back(v);
  }
  LabeledRootedTree t;
  t.parent.push_back(-1);
  std::vector<int> depth{0};
  std::vector<std::pair<Vertex, int>> queue{{kRootVertex, 0}};
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  seen[kRootVertex] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto [v, local] = queue[head];
    if (depth[static_cast<std::size_t>(local)] == h) continue;
    for (Vertex w : adjacency[static_cast<std::size_t>(v)]) {
      if (seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = 1;
      t.parent.push_back(local);
      depth.push_back(depth[static_cast<std::size_t>(local)] + 1);
      queue.emplace_back(w, t.size() - 1);
    }
  }
  return shape_of(t);
}

ShapeHistogram histogram_root_component(std::span<const RootedForestSample> samples, int h) {
  ShapeHistogram hist;
  for (const auto& s : samples) hist.add(root_component_shape(s, h).code());
  hist.metadata["h"] = h;
  hist.metadata["count"] = samples.size();
  return hist;
}

ShapeHistogram histogram_from_law(const ShapeLaw& law, std::uint64_t total) {
  ShapeHistogram hist;
  for (const auto& [code, p] : law) {
    const auto c = static_cast<std::uint64_t>(std::llround(p * static_cast<double>(total)));
    if (c > 0) hist.add(code, c);
  }
  return hist;
}

namespace {

constexpr double kLawMassTolerance = 1e-9;

struct Bin {
  double observed = 0.0;
  double expected = 0.0;  // count
};

ChiSquareResult chi_square(std::vector<Bin> bins, Bin other) {
  ChiSquareResult out;
  std::vector<Bin> kept;
  for (const Bin& b : bins) {
    if (b.expected < kChiSquareMinExpected) {
      other.observed += b.observed;
      other.expected += b.expected;
      out.bins_merged = true;
    } else {
      kept.push_back(b);
    }
  }
  if (other.expected > 0.0 || other.observed > 0.0) {
    if (other.expected < kChiSquareMinExpected && !kept.empty()) {
      auto smallest = std::min_element(kept.begin(), kept.end(),
                                       [](const Bin& a, const Bin& b) { return a.expected < b.expected; });
      smallest->observed += other.observed;
      smallest->expected += other.expected;
      out.bins_merged = true;
    } else {
      kept.push_back(other);
    }
  }
  out.dof = static_cast<int>(kept.size()) - 1;
  for (const Bin& b : kept) {
    if (b.expected <= 0.0) {
      out.statistic = b.observed > 0.0 ? std::numeric_limits<double>::infinity() : out.statistic;
      continue;
    }
    const double d = b.observed - b.expected;
    out.statistic += d * d / b.expected;
  }
  if (out.dof >= 1 && std::isfinite(out.statistic)) {
    boost::math::chi_squared dist(out.dof);
    out.p_value = boost::math::cdf(boost::math::complement(dist, out.statistic));
  } else if (!std::isfinite(out.statistic)) {
    out.p_value = 0.0;
  }
  return out;
}

}  // namespace

ComparisonReport compare(const ShapeHistogram& hist, const ShapeLaw& law) {
  double listed = 0.0;
  for (const auto& [code, p] : law) {
    if (p < 0.0) throw std::invalid_argument("law assigns negative mass to " + code);
    listed += p;
  }
  if (listed > 1.0 + kLawMassTolerance) {
    throw std::invalid_argument("law mass " + std::to_string(listed) + " exceeds 1");
  }
  if (hist.total == 0) throw std::invalid_argument("cannot compare an empty histogram");
  const double other_mass = std::max(0.0, 1.0 - listed);
  const auto total = static_cast<double>(hist.total);

  ComparisonReport report;
  std::vector<Bin> bins;
  double abs_sum = 0.0;
  std::uint64_t other_count = 0;
  for (const auto& [code, c] : hist.counts) {
    if (!law.contains(code)) other_count += c;
  }
  for (const auto& [code, p] : law) {
    ComparisonRow row;
    row.code = code;
    auto it = hist.counts.find(code);
    row.observed = it == hist.counts.end() ? 0 : it->second;
    row.empirical = static_cast<double>(row.observed) / total;
    row.expected = p;
    row.gap = row.empirical - row.expected;
    abs_sum += std::abs(row.gap);
    report.max_abs_gap = std::max(report.max_abs_gap, std::abs(row.gap));
    bins.push_back({static_cast<double>(row.observed), p * total});
    report.rows.push_back(std::move(row));
  }
  ComparisonRow other;
  other.code = kOtherBin;
  other.observed = other_count;
  other.empirical = static_cast<double>(other_count) / total;
  other.expected = other_mass;
  other.gap = other.empirical - other.expected;
  abs_sum += std::abs(other.gap);
  report.max_abs_gap = std::max(report.max_abs_gap, std::abs(other.gap));
  report.rows.push_back(other);

  report.tv_distance = std::clamp(0.5 * abs_sum, 0.0, 1.0);
  // rounding residue of a law that lists everything is not a real bin
  const double other_expected = other_mass <= kLawMassTolerance ? 0.0 : other_mass * total;
  report.chi_square = chi_square(std::move(bins), Bin{static_cast<double>(other_count), other_expected});
  return report;
}

double tv_distance(const ShapeHistogram& a, const ShapeHistogram& b) {
  if (a.total == 0 || b.total == 0) throw std::invalid_argument("cannot normalize an empty histogram");
  double sum = 0.0;
  auto ia = a.counts.begin();
  auto ib = b.counts.begin();
  while (ia != a.counts.end() || ib != b.counts.end()) {
    if (ib == b.counts.end() || (ia != a.counts.end() && ia->first < ib->first)) {
      sum += a.frequency(ia->first);
      ++ia;
    } else if (ia == a.counts.end() || ib->first < ia->first) {
      sum += b.frequency(ib->first);
      ++ib;
    } else {
      sum += std::abs(a.frequency(ia->first) - b.frequency(ib->first));
      ++ia;
      ++ib;
    }
  }
  return std::clamp(0.5 * sum, 0.0, 1.0);
}

double chi_square_quantile(int dof, double probability) {
  boost::math::chi_squared dist(dof);
  return boost::math::quantile(dist, probability);
}

std::vector<ConvergenceRow> convergence_table(std::span<const RootedShape> shapes, int h,
                                              const LimitRegime& regime,
                                              std::span<const double> n_grid) {
  std::vector<ConvergenceRow> rows;
  for (const RootedShape& s : shapes) {
    const double limit = shape_law_limit(s, h, regime);
    for (double n : n_grid) {
      ConvergenceRow row;
      row.code = s.code();
      row.n = n;
      row.lambda = regime.lambda_for(n);
      row.finite = shape_law_finite(s, h, n, row.lambda);
      row.limit = limit;
      row.gap = std::abs(row.finite - row.limit);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

bool gaps_non_increasing(std::span<const ConvergenceRow> rows, double slack) {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].code != rows[i - 1].code) continue;
    if (rows[i].gap > (1.0 + slack) * rows[i - 1].gap + 1e-15) return false;
  }
  return true;
}

std::string convergence_csv(std::span<const ConvergenceRow> rows) {
  std::ostringstream out;
  out.precision(17);
  out << "shape,n,lambda,finite,limit,gap\n";
  for (const auto& r : rows) {
    out << '"' << r.code << "\"," << r.n << ',' << r.lambda << ',' << r.finite << ',' << r.limit
        << ',' << r.gap << '\n';
  }
  return out.str();
}

nlohmann::json plot_data(std::span<const ConvergenceRow> rows) {
  nlohmann::json series = nlohmann::json::array();
  for (std::size_t i = 0; i < rows.size();) {
    nlohmann::json entry;
    entry["code"] = rows[i].code;
    entry["limit"] = rows[i].limit;
    entry["points"] = nlohmann::json::array();
    const std::string& code = rows[i].code;
    for (; i < rows.size() && rows[i].code == code; ++i) {
      entry["points"].push_back({rows[i].n, rows[i].finite});
    }
    series.push_back(std::move(entry));
  }
  return series;
}

nlohmann::json to_json(const ShapeHistogram& hist) {
  nlohmann::json counts = nlohmann::json::object();
  for (const auto& [code, c] : hist.counts) counts[code] = c;
  return counts;
}

nlohmann::json to_json(const ComparisonReport& report) {
  nlohmann::json out;
  out["tv_distance"] = report.tv_distance;
  out["max_abs_gap"] = report.max_abs_gap;
  out["chi_square"] = {{"statistic", report.chi_square.statistic},
                       {"dof", report.chi_square.dof},
                       {"bins_merged", report.chi_square.bins_merged},
                       {"p_value", report.chi_square.p_value}};
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"code", r.code},
                    {"observed", r.observed},
                    {"empirical", r.empirical},
                    {"expected", r.expected},
                    {"gap", r.gap}});
  }
  out["rows"] = std::move(rows);
  return out;
}

}  // namespace msf
