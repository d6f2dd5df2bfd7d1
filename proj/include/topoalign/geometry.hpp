#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace topoalign {

// N points in R^n, coordinates row-major.
struct point_cloud {
  std::size_t num_points = 0;
  std::size_t dimension = 0;
  std::vector<double> coords;        // num_points * dimension
  std::vector<std::string> labels;   // empty, or one label per point

  std::span<const double> point(std::size_t i) const {
    return {coords.data() + i * dimension, dimension};
  }
  std::span<double> point(std::size_t i) {
    return {coords.data() + i * dimension, dimension};
  }

  // Throws invalid_input on empty cloud, ragged storage, or non-finite
  // coordinates.
  void validate() const;
};

// Symmetric, nonnegative, zero-diagonal.
struct distance_matrix {
  std::size_t size = 0;
  std::vector<double> entries;  // size * size, row-major

  double at(std::size_t i, std::size_t j) const { return entries[i * size + j]; }
  double& at(std::size_t i, std::size_t j) { return entries[i * size + j]; }

  double max_off_diagonal() const;
  std::size_t num_pairs() const { return size * (size - 1) / 2; }
};

enum class threshold_kind { mean_minus_lambda_std, absolute };

struct threshold_rule {
  threshold_kind kind = threshold_kind::mean_minus_lambda_std;
  double lambda = 0.5;  // multiplier in mu - lambda * sigma
  double value = 0.0;   // used by the absolute kind

  static threshold_rule mean_minus_std(double lambda) {
    return {threshold_kind::mean_minus_lambda_std, lambda, 0.0};
  }
  static threshold_rule absolute(double value) {
    return {threshold_kind::absolute, 0.0, value};
  }
};

struct threshold_result {
  double epsilon = 0.0;
  bool clamped = false;  // true when mu - lambda*sigma fell below zero
};

struct divergence_stats {
  double mean = 0.0;
  double rmse = 0.0;
};

// Euclidean distances; each entry sums coordinates in index order, computed
// once per unordered pair and mirrored.
distance_matrix pairwise_distances(const point_cloud& cloud);

// Divides all entries by the maximum off-diagonal entry, which becomes
// exactly 1. Throws degenerate_input when all points coincide.
distance_matrix normalize_weights(const distance_matrix& dm);

// Threshold from the upper-triangle off-diagonal entries only; sigma is the
// population standard deviation. Negative results clamp to zero with the
// flag set. Requires size >= 2.
threshold_result threshold_info(const distance_matrix& dm, const threshold_rule& rule);
double threshold(const distance_matrix& dm, const threshold_rule& rule);

// The size*(size-1)/2 upper-triangle entries, ascending. Requires size >= 2.
std::vector<double> sorted_distance_curve(const distance_matrix& dm);

// Mean and root-mean-square of |a_i - b_i|. Lengths must match.
divergence_stats curve_divergence(std::span<const double> a, std::span<const double> b);

}  // namespace topoalign
