#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "topoalign/losses.hpp"

namespace topoalign {

enum class student_map_kind {
  free_points,  // optimize the coordinates directly
  affine,       // x -> W x + b applied to the initial student cloud
};

struct student_map {
  student_map_kind kind = student_map_kind::free_points;
  std::vector<double> points;  // free_points: N x n coordinates
  std::vector<double> weight;  // affine: n x n row-major
  std::vector<double> bias;    // affine: n

  static student_map free_points(const point_cloud& init);
  static student_map affine_identity(std::size_t dimension);
};

point_cloud apply_student_map(const student_map& map, const point_cloud& init);

struct optimizer_config {
  std::size_t steps = 500;
  double learning_rate = 0.05;
  loss_coefficients coeffs;
  double p = 2.0;
  std::size_t projections = 50;  // K
  std::uint64_t seed = 0;
  threshold_rule rule = threshold_rule::mean_minus_std(0.5);
  bool approx = true;
  std::size_t log_every = 1;
};

// Diagram and curve distances reported before and after a run.
struct alignment_metrics {
  double w2_clouds = 0.0;        // exact 2-Wasserstein between the clouds
  double w2_h0_diagrams = 0.0;   // exact W2 between H0 diagrams
  double sw2_h0_diagrams = 0.0;  // sliced W2 between H0 diagrams
  double h1_birth_w1 = 0.0;      // 1-D W1 between cycle-edge birth multisets
  double dm_mean = 0.0;          // mean |sorted-curve difference|
  double dm_rmse = 0.0;
};

struct alignment_report {
  std::vector<loss_breakdown> steps;  // logged at multiples of log_every
  alignment_metrics initial_metrics;
  alignment_metrics final_metrics;
};

alignment_metrics compute_alignment_metrics(const point_cloud& teacher,
                                            const point_cloud& student, std::uint64_t seed,
                                            std::size_t projections = 50);

// Plain gradient descent on the map parameters, fresh projection directions
// each step (seed derived from (config.seed, step)). Throws divergence_error
// on a non-finite loss or gradient.
std::pair<student_map, alignment_report> optimize(const point_cloud& teacher,
                                                  const point_cloud& student_init,
                                                  student_map map,
                                                  const optimizer_config& config);

struct ablation_entry {
  loss_coefficients coeffs;
  alignment_report report;
};

// The four coefficient settings (1,0,0), (1,0.01,0), (1,0,0.01),
// (1,0.01,0.01) under a shared seed.
std::array<ablation_entry, 4> ablation_suite(const point_cloud& teacher,
                                             const point_cloud& student_init,
                                             const student_map& map,
                                             const optimizer_config& base_config);

}  // namespace topoalign
