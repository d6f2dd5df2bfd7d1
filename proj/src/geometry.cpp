#include "topoalign/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "topoalign/errors.hpp"

namespace topoalign {

void point_cloud::validate() const {
  if (num_points == 0) throw invalid_input("point cloud must contain at least one point");
  if (dimension == 0) throw invalid_input("point dimension must be at least 1");
  if (coords.size() != num_points * dimension)
    throw invalid_input("coordinate storage does not match num_points * dimension");
  if (!labels.empty() && labels.size() != num_points)
    throw invalid_input("label count does not match point count");
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (!std::isfinite(coords[i]))
      throw invalid_input("non-finite coordinate at flat index " + std::to_string(i));
  }
}

double distance_matrix::max_off_diagonal() const {
  double m = 0.0;
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = i + 1; j < size; ++j) m = std::max(m, at(i, j));
  return m;
}

distance_matrix pairwise_distances(const point_cloud& cloud) {
  cloud.validate();
  const std::size_t n = cloud.num_points;
  distance_matrix dm;
  dm.size = n;
  dm.entries.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double* a = cloud.coords.data() + i * cloud.dimension;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double* b = cloud.coords.data() + j * cloud.dimension;
      double sq = 0.0;
      for (std::size_t c = 0; c < cloud.dimension; ++c) {
        const double d = a[c] - b[c];
        sq += d * d;
      }
      const double dist = std::sqrt(sq);
      dm.at(i, j) = dist;
      dm.at(j, i) = dist;
    }
  }
  return dm;
}

distance_matrix normalize_weights(const distance_matrix& dm) {
  const double m = dm.max_off_diagonal();
  if (m <= 0.0)
    throw degenerate_input("cannot normalize an all-zero distance matrix (coincident points)");
  distance_matrix out;
  out.size = dm.size;
  out.entries.resize(dm.entries.size());
  for (std::size_t k = 0; k < dm.entries.size(); ++k) out.entries[k] = dm.entries[k] / m;
  return out;
}

threshold_result threshold_info(const distance_matrix& dm, const threshold_rule& rule) {
  if (dm.size < 2) throw degenerate_input("threshold requires at least two points");
  if (rule.kind == threshold_kind::absolute) return {rule.value, false};

  // Two-pass mean/population-variance over the upper triangle.
  const std::size_t pairs = dm.num_pairs();
  double sum = 0.0;
  for (std::size_t i = 0; i < dm.size; ++i)
    for (std::size_t j = i + 1; j < dm.size; ++j) sum += dm.at(i, j);
  const double mean = sum / static_cast<double>(pairs);
  double sq = 0.0;
  for (std::size_t i = 0; i < dm.size; ++i)
    for (std::size_t j = i + 1; j < dm.size; ++j) {
      const double d = dm.at(i, j) - mean;
      sq += d * d;
    }
  const double sigma = std::sqrt(sq / static_cast<double>(pairs));

  const double raw = mean - rule.lambda * sigma;
  if (raw < 0.0) return {0.0, true};
  return {raw, false};
}

double threshold(const distance_matrix& dm, const threshold_rule& rule) {
  return threshold_info(dm, rule).epsilon;
}

std::vector<double> sorted_distance_curve(const distance_matrix& dm) {
  if (dm.size < 2) throw degenerate_input("sorted distance curve requires at least two points");
  std::vector<double> curve;
  curve.reserve(dm.num_pairs());
  for (std::size_t i = 0; i < dm.size; ++i)
    for (std::size_t j = i + 1; j < dm.size; ++j) curve.push_back(dm.at(i, j));
  std::sort(curve.begin(), curve.end());
  return curve;
}

divergence_stats curve_divergence(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw invalid_input("curve lengths differ: " + std::to_string(a.size()) + " vs " +
                        std::to_string(b.size()));
  if (a.empty()) return {0.0, 0.0};
  double abs_sum = 0.0;
  double sq_sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    abs_sum += std::abs(d);
    sq_sum += d * d;
  }
  const double n = static_cast<double>(a.size());
  return {abs_sum / n, std::sqrt(sq_sum / n)};
}

}  // namespace topoalign
