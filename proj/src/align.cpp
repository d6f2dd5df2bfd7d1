#include "topoalign/align.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "topoalign/errors.hpp"
#include "topoalign/filtration.hpp"
#include "topoalign/rng.hpp"
#include "topoalign/transport.hpp"

namespace topoalign {

student_map student_map::free_points(const point_cloud& init) {
  init.validate();
  student_map map;
  map.kind = student_map_kind::free_points;
  map.points = init.coords;
  return map;
}

student_map student_map::affine_identity(std::size_t dimension) {
  student_map map;
  map.kind = student_map_kind::affine;
  map.weight.assign(dimension * dimension, 0.0);
  for (std::size_t i = 0; i < dimension; ++i) map.weight[i * dimension + i] = 1.0;
  map.bias.assign(dimension, 0.0);
  return map;
}

point_cloud apply_student_map(const student_map& map, const point_cloud& init) {
  init.validate();
  const std::size_t n = init.dimension;
  point_cloud out = init;
  switch (map.kind) {
    case student_map_kind::free_points:
      if (map.points.size() != init.coords.size())
        throw invalid_input("free-points parameters do not match the initial cloud shape");
      out.coords = map.points;
      return out;
    case student_map_kind::affine: {
      if (map.weight.size() != n * n || map.bias.size() != n)
        throw invalid_input("affine parameters do not match the cloud dimension");
      for (std::size_t i = 0; i < init.num_points; ++i) {
        const double* x = init.coords.data() + i * n;
        double* y = out.coords.data() + i * n;
        for (std::size_t r = 0; r < n; ++r) {
          double acc = map.bias[r];
          for (std::size_t c = 0; c < n; ++c) acc += map.weight[r * n + c] * x[c];
          y[r] = acc;
        }
      }
      return out;
    }
  }
  throw invalid_input("unknown student map kind");
}

alignment_metrics compute_alignment_metrics(const point_cloud& teacher,
                                            const point_cloud& student, std::uint64_t seed,
                                            std::size_t projections) {
  alignment_metrics m;
  m.w2_clouds = wasserstein_point_clouds(teacher, student, 2.0);

  const distance_matrix dt = pairwise_distances(teacher);
  const distance_matrix ds = pairwise_distances(student);
  const weighted_graph gt = complete_graph(dt, false);
  const weighted_graph gs = complete_graph(ds, false);

  persistence_diagram diag_t = h0_diagram(gt);
  persistence_diagram diag_s = h0_diagram(gs);
  persistence_diagram fin_t;
  fin_t.points = diag_t.finite_points();
  persistence_diagram fin_s;
  fin_s.points = diag_s.finite_points();

  m.w2_h0_diagrams = wasserstein_exact_diagrams(fin_t, fin_s, 2.0);
  projection_sampler sampler{seed, projections, 2};
  m.sw2_h0_diagrams = sliced_wasserstein_diagrams(fin_t, fin_s, 2.0, sampler);

  std::vector<double> bt = h1_births(gt);
  std::vector<double> bs = h1_births(gs);
  const std::size_t target = std::max(bt.size(), bs.size());
  bt.insert(bt.begin(), target - bt.size(), 0.0);
  bs.insert(bs.begin(), target - bs.size(), 0.0);
  m.h1_birth_w1 = wasserstein_1d(bt, bs, 1.0);

  const divergence_stats curves =
      curve_divergence(sorted_distance_curve(dt), sorted_distance_curve(ds));
  m.dm_mean = curves.mean;
  m.dm_rmse = curves.rmse;
  return m;
}

namespace {

struct parameter_gradient {
  std::vector<double> points;  // free_points
  std::vector<double> weight;  // affine
  std::vector<double> bias;
};

parameter_gradient backprop_into_map(const student_map& map, const point_cloud& init,
                                     const std::vector<double>& grad_student) {
  parameter_gradient g;
  const std::size_t n = init.dimension;
  if (map.kind == student_map_kind::free_points) {
    g.points = grad_student;
    return g;
  }
  g.weight.assign(n * n, 0.0);
  g.bias.assign(n, 0.0);
  for (std::size_t i = 0; i < init.num_points; ++i) {
    const double* x = init.coords.data() + i * n;
    const double* gs = grad_student.data() + i * n;
    for (std::size_t r = 0; r < n; ++r) {
      g.bias[r] += gs[r];
      for (std::size_t c = 0; c < n; ++c) g.weight[r * n + c] += gs[r] * x[c];
    }
  }
  return g;
}

bool all_finite(const std::vector<double>& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace

std::pair<student_map, alignment_report> optimize(const point_cloud& teacher,
                                                  const point_cloud& student_init,
                                                  student_map map,
                                                  const optimizer_config& config) {
  teacher.validate();
  student_init.validate();
  if (config.steps < 1) throw invalid_input("optimizer requires steps >= 1");
  if (config.learning_rate <= 0.0) throw invalid_input("optimizer requires learning_rate > 0");
  if (config.log_every < 1) throw invalid_input("optimizer requires log_every >= 1");

  alignment_report report;
  // One direction set for both metric snapshots keeps them comparable.
  const std::uint64_t metrics_seed = derive_seed(config.seed, config.steps + 1);
  report.initial_metrics = compute_alignment_metrics(
      teacher, apply_student_map(map, student_init), metrics_seed, config.projections);

  for (std::size_t step = 0; step <= config.steps; ++step) {
    const point_cloud student = apply_student_map(map, student_init);
    projection_sampler sampler{derive_seed(config.seed, step), config.projections, 2};
    const bool last = step == config.steps;
    loss_breakdown breakdown = loss_total(teacher, student, config.coeffs, config.p, sampler,
                                          config.rule, config.approx, /*with_grad=*/!last);

    if (!std::isfinite(breakdown.l_total))
      throw divergence_error("non-finite loss", step);
    if (step % config.log_every == 0) {
      loss_breakdown logged = breakdown;
      logged.grad_student.reset();
      report.steps.push_back(std::move(logged));
    }
    if (last) break;

    if (!all_finite(*breakdown.grad_student)) throw divergence_error("non-finite gradient", step);
    const parameter_gradient g = backprop_into_map(map, student_init, *breakdown.grad_student);
    if (map.kind == student_map_kind::free_points) {
      for (std::size_t k = 0; k < map.points.size(); ++k)
        map.points[k] -= config.learning_rate * g.points[k];
    } else {
      for (std::size_t k = 0; k < map.weight.size(); ++k)
        map.weight[k] -= config.learning_rate * g.weight[k];
      for (std::size_t k = 0; k < map.bias.size(); ++k)
        map.bias[k] -= config.learning_rate * g.bias[k];
    }
  }

  report.final_metrics = compute_alignment_metrics(teacher, apply_student_map(map, student_init),
                                                   metrics_seed, config.projections);
  return {std::move(map), std::move(report)};
}

std::array<ablation_entry, 4> ablation_suite(const point_cloud& teacher,
                                             const point_cloud& student_init,
                                             const student_map& map,
                                             const optimizer_config& base_config) {
  const std::array<loss_coefficients, 4> settings{{
      {1.0, 0.0, 0.0},
      {1.0, 0.01, 0.0},
      {1.0, 0.0, 0.01},
      {1.0, 0.01, 0.01},
  }};
  std::array<ablation_entry, 4> out;
  for (std::size_t i = 0; i < settings.size(); ++i) {
    optimizer_config config = base_config;
    config.coeffs = settings[i];
    out[i].coeffs = settings[i];
    out[i].report = optimize(teacher, student_init, map, config).second;
  }
  return out;
}

}  // namespace topoalign
